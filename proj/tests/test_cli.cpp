// Drives the shipped binaries end to end: mock-wps and gateway as child
// processes, the audit CLI against both, exit codes included.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <httplib.h>
#include <json.hpp>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#ifndef WPSGATE_TOOLS_DIR
#error "WPSGATE_TOOLS_DIR must point at the built binaries"
#endif

namespace {

using nlohmann::json;

int free_port() {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    REQUIRE(fd >= 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    REQUIRE(::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) == 0);
    socklen_t len = sizeof(addr);
    REQUIRE(::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) == 0);
    int port = ntohs(addr.sin_port);
    ::close(fd);
    return port;
}

class ChildProcess {
public:
    ChildProcess(const std::string& binary, std::vector<std::string> args) {
        pid_ = ::fork();
        REQUIRE(pid_ >= 0);
        if (pid_ == 0) {
            std::vector<char*> argv;
            argv.push_back(const_cast<char*>(binary.c_str()));
            for (auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
            argv.push_back(nullptr);
            ::execv(binary.c_str(), argv.data());
            std::perror("execv");
            _exit(127);
        }
    }

    ~ChildProcess() {
        if (pid_ > 0) {
            ::kill(pid_, SIGTERM);
            int status = 0;
            if (::waitpid(pid_, &status, WNOHANG) == 0) {
                std::this_thread::sleep_for(std::chrono::milliseconds(200));
                ::kill(pid_, SIGKILL);
                ::waitpid(pid_, &status, 0);
            }
        }
    }

private:
    pid_t pid_ = -1;
};

bool wait_ready(int port, int attempts = 50) {
    for (int i = 0; i < attempts; ++i) {
        httplib::Client probe("http://127.0.0.1:" + std::to_string(port));
        probe.set_connection_timeout(1);
        if (probe.Get("/")) return true;
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    return false;
}

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_command(const std::string& command) {
    CommandResult result;
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe);
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.output.append(buf.data(), n);
    int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string tool(const char* name) { return std::string(WPSGATE_TOOLS_DIR) + "/" + name; }

} // namespace

TEST_CASE("the shipped binaries run the whole assessment") {
    int mock_port = free_port();
    ChildProcess mock(tool("mock-wps"), {"--port", std::to_string(mock_port)});
    REQUIRE(wait_ready(mock_port));

    int gw_port = free_port();
    ChildProcess gateway(tool("gateway"),
                         {"--port", std::to_string(gw_port), "--backend",
                          "http://127.0.0.1:" + std::to_string(mock_port) + "/wps"});
    REQUIRE(wait_ready(gw_port));

    std::string mock_url = "http://127.0.0.1:" + std::to_string(mock_port) + "/wps";
    std::string gw_url = "http://127.0.0.1:" + std::to_string(gw_port) + "/";

    SUBCASE("audit of the raw backend") {
        auto result = run_command(tool("audit") + " " + mock_url + " --format json");
        CHECK(result.exit_code == 0);
        auto doc = json::parse(result.output, nullptr, false);
        REQUIRE_FALSE(doc.is_discarded());
        CHECK(doc["style"] == "raw-wps");
        for (const auto& check : doc["checks"]) {
            if (check["check_id"] == "identification") {
                CHECK(check["verdict"] == "partial");
            } else if (check["verdict"] != "not-probed") {
                CHECK(check["verdict"] == "no");
            }
        }
    }

    SUBCASE("audit of the gateway") {
        auto result = run_command(tool("audit") + " " + gw_url + " --format json");
        CHECK(result.exit_code == 0);
        auto doc = json::parse(result.output, nullptr, false);
        REQUIRE_FALSE(doc.is_discarded());
        CHECK(doc["style"] == "resource");
        CHECK(doc["counts"]["yes"] == 7);
    }

    SUBCASE("table format prints totals") {
        auto result = run_command(tool("audit") + " " + gw_url);
        CHECK(result.exit_code == 0);
        CHECK(result.output.find("totals:") != std::string::npos);
    }

    SUBCASE("a full execution through both binaries") {
        httplib::Client gw("http://127.0.0.1:" + std::to_string(gw_port));
        auto created =
            gw.Post("/processes/org.n52.wps.server.algorithm.topology.Area/jobs",
                    R"({"inputs":{"polygon":{"type":"Polygon",)"
                    R"("coordinates":[[[0,0],[1,0],[1,1],[0,1],[0,0]]]}}})",
                    "application/json");
        REQUIRE(created);
        CHECK(created->status == 201);
        auto location = created->get_header_value("Location");
        auto path = location.substr(location.find('/', 7));
        auto result = gw.Get(path + "/result");
        REQUIRE(result);
        CHECK(result->body == "1.0");
    }
}

TEST_CASE("a dropping endpoint is unreachable: audit exits 2") {
    int drop_port = free_port();
    ChildProcess dropper(tool("mock-wps"),
                         {"--port", std::to_string(drop_port), "--fault", "drop"});
    std::this_thread::sleep_for(std::chrono::milliseconds(300));

    auto result = run_command(tool("audit") + " http://127.0.0.1:" + std::to_string(drop_port) +
                              "/wps --timeout 2 --format json 2>/dev/null");
    CHECK(result.exit_code == 2);
    auto doc = json::parse(result.output, nullptr, false);
    REQUIRE_FALSE(doc.is_discarded());
    CHECK(doc["counts"]["error"] == 7);
}
