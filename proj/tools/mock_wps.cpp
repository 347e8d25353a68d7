// Simulated WPS backend: three topology processes over one endpoint.

#include "wpsgate/http/httplib_adapter.hpp"
#include "wpsgate/mock/service.hpp"

#include <CLI11.hpp>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdio>
#include <string>

namespace {

// Accepts connections and closes them immediately; exercises client-side
// handling of a peer that goes away mid-conversation.
int run_drop_acceptor(int port) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) {
        std::perror("socket");
        return 1;
    }
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(static_cast<uint16_t>(port));
    if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0 ||
        ::listen(fd, 16) < 0) {
        std::perror("bind/listen");
        ::close(fd);
        return 1;
    }
    std::printf("mock-wps dropping connections on port %d\n", port);
    std::fflush(stdout);
    while (true) {
        int conn = ::accept(fd, nullptr, nullptr);
        if (conn >= 0) ::close(conn);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulated WPS backend with topology processes"};
    int port = 9090;
    std::string fault = "none";
    int latency_ms = 0;
    app.add_option("--port", port, "listen port");
    app.add_option("--fault", fault, "fault mode")
        ->check(CLI::IsMember({"none", "server-busy", "drop"}));
    app.add_option("--latency-ms", latency_ms, "added latency per request")
        ->check(CLI::NonNegativeNumber);
    CLI11_PARSE(app, argc, argv);

    if (fault == "drop") return run_drop_acceptor(port);

    wpsgate::mock::FaultConfig fault_config;
    fault_config.mode = fault == "server-busy" ? wpsgate::mock::FaultMode::server_busy
                                               : wpsgate::mock::FaultMode::none;
    fault_config.added_latency_ms = latency_ms;

    std::string base = "http://127.0.0.1:" + std::to_string(port);
    wpsgate::mock::Service service(base, fault_config, [](const std::string& url) {
        return wpsgate::http::http_get_body(url);
    });

    httplib::Server server;
    wpsgate::http::attach(server, service);
    std::printf("mock-wps listening on %s%s (fault=%s, latency=%dms)\n", base.c_str(),
                wpsgate::mock::Service::kWpsPath, fault.c_str(), latency_ms);
    std::fflush(stdout);
    if (!server.listen("127.0.0.1", port)) {
        std::fprintf(stderr, "could not listen on port %d\n", port);
        return 1;
    }
    return 0;
}
