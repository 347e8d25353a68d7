#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wpsgate/gateway/service.hpp"
#include "wpsgate/gateway/validate.hpp"
#include "wpsgate/mock/service.hpp"
#include "wpsgate/rest/render.hpp"
#include "wpsgate/util.hpp"
#include "wpsgate/wps/types.hpp"
#include "wpsgate/wps/xml.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <random>
#include <thread>

using namespace wpsgate;
using nlohmann::json;

namespace {

constexpr const char* kGwBase = "http://gw.test";
constexpr const char* kAreaId = "org.n52.wps.server.algorithm.topology.Area";
constexpr const char* kIntersectId = "org.n52.wps.server.algorithm.topology.Intersect";

struct Rig {
    std::shared_ptr<mock::Service> backend;
    std::unique_ptr<gateway::Service> gw;
    bool backend_up = true;

    explicit Rig(gateway::Config config = {}) {
        backend = std::make_shared<mock::Service>("http://backend.test");
        if (config.base_uri.empty()) config.base_uri = kGwBase;
        if (config.backend_url.empty()) config.backend_url = "http://backend.test/wps";
        // dereference the slot per call so tests can swap the backend
        auto* slot = &backend;
        bool* up = &backend_up;
        gw = std::make_unique<gateway::Service>(config, [slot, up](const http::Request& req) {
            if (!*up) throw gateway::BackendUnreachable("connection refused");
            return (*slot)->handle(req);
        });
    }

    Rig(const Rig&) = delete;
    Rig& operator=(const Rig&) = delete;

    http::Response get(const std::string& path, http::HeaderList headers = {}) {
        http::Request req;
        req.method = "GET";
        auto q = path.find('?');
        req.path = path.substr(0, q);
        if (q != std::string::npos) req.raw_query = path.substr(q + 1);
        req.headers = std::move(headers);
        return gw->handle(req);
    }

    http::Response request(const std::string& method, const std::string& path,
                           std::string body = "", http::HeaderList headers = {}) {
        http::Request req;
        req.method = method;
        req.path = path;
        req.body = std::move(body);
        req.headers = std::move(headers);
        return gw->handle(req);
    }

    http::Response post_area_job() {
        json body{{"inputs",
                   {{"polygon",
                     json::parse(
                         R"({"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1],[0,0]]]})")}}}};
        return request("POST", std::string("/processes/") + kAreaId + "/jobs", body.dump());
    }
};

std::string job_id_from(const http::Response& res) {
    auto doc = json::parse(res.body);
    return doc["data"]["id"].get<std::string>();
}

} // namespace

TEST_CASE("entry is navigable and ignores tunneled operation parameters") {
    Rig rig;
    http::Response res = rig.get("/");
    CHECK(res.status == 200);
    CHECK(res.content_type == rest::kJson);
    auto links = rest::extract_links(rest::kJson, res.body);
    CHECK(links.size() == 3);

    // a raw-WPS style query changes nothing: no operation tunneling
    http::Response tunneled = rig.get("/?service=WPS&request=GetCapabilities");
    CHECK(tunneled.status == 200);
    CHECK(tunneled.body == res.body);
}

TEST_CASE("process collection and process views come from the backend catalog") {
    Rig rig;
    http::Response list = rig.get("/processes");
    CHECK(list.status == 200);
    auto doc = json::parse(list.body);
    CHECK(doc["data"]["processes"].size() == 3);

    http::Response area = rig.get(std::string("/processes/") + kAreaId);
    CHECK(area.status == 200);
    auto area_doc = json::parse(area.body);
    CHECK(area_doc["data"]["id"] == kAreaId);
    CHECK(area_doc["data"]["tags"][0] == "topology");

    int similar = 0, execute = 0;
    for (const auto& link : rest::extract_links(rest::kJson, area.body)) {
        if (link.rel == "similar") ++similar;
        if (link.rel == "execute") ++execute;
    }
    CHECK(similar == 2);
    CHECK(execute == 1);

    CHECK(rig.get("/processes/does.not.exist").status == 404);
}

TEST_CASE("verb discipline: 405 with the correct Allow list") {
    Rig rig;
    http::Response res = rig.request("DELETE", std::string("/processes/") + kAreaId);
    CHECK(res.status == 405);
    REQUIRE(res.header("Allow"));
    CHECK(*res.header("Allow") == "GET");

    http::Response put = rig.request("PUT", "/jobs");
    CHECK(put.status == 405);
    CHECK(*put.header("Allow") == "GET, POST");
}

TEST_CASE("unsupported Accept answers 406") {
    Rig rig;
    http::Response res = rig.get("/processes", {{"Accept", "image/png"}});
    CHECK(res.status == 406);
}

TEST_CASE("content negotiation steers the representation") {
    Rig rig;
    CHECK(rig.get("/", {{"Accept", "application/xml"}}).content_type == rest::kXml);
    CHECK(rig.get("/", {{"Accept", "text/html"}}).content_type == rest::kHtml);
    CHECK(rig.get("/", {{"Accept", "text/html;q=0.9, application/xml"}}).content_type ==
          rest::kXml);
}

TEST_CASE("job lifecycle end to end") {
    Rig rig;
    http::Response created = rig.post_area_job();
    CHECK(created.status == 201);
    REQUIRE(created.header("Location"));
    std::string id = job_id_from(created);
    CHECK(*created.header("Location") == std::string(kGwBase) + "/jobs/" + id);
    CHECK(json::parse(created.body)["data"]["status"] == "succeeded");

    // poll
    http::Response polled = rig.get("/jobs/" + id);
    CHECK(polled.status == 200);
    CHECK(json::parse(polled.body)["data"]["status"] == "succeeded");
    bool has_results_link = false;
    for (const auto& link : rest::extract_links(rest::kJson, polled.body)) {
        if (link.rel == "results") has_results_link = true;
    }
    CHECK(has_results_link);

    // result, negotiated as raw text by default
    http::Response result = rig.get("/jobs/" + id + "/result");
    CHECK(result.status == 200);
    CHECK(result.content_type == rest::kPlain);
    CHECK(result.body == "1.0");

    // and as a JSON envelope on request
    http::Response result_json =
        rig.get("/jobs/" + id + "/result", {{"Accept", "application/json"}});
    CHECK(result_json.status == 200);
    auto doc = json::parse(result_json.body);
    CHECK(doc["data"]["outputs"]["area"]["value"] == "1.0");

    // job listing includes it; scoped listing filters
    auto listing = json::parse(rig.get("/jobs").body);
    CHECK(listing["data"]["jobs"].size() == 1);
    auto scoped =
        json::parse(rig.get(std::string("/processes/") + kAreaId + "/jobs").body);
    CHECK(scoped["data"]["jobs"].size() == 1);
    auto scoped_other =
        json::parse(rig.get(std::string("/processes/") + kIntersectId + "/jobs").body);
    CHECK(scoped_other["data"]["jobs"].empty());

    // delete twice: 204 then 404
    CHECK(rig.request("DELETE", "/jobs/" + id).status == 204);
    CHECK(rig.request("DELETE", "/jobs/" + id).status == 404);
    CHECK(rig.get("/jobs/" + id).status == 404);
}

TEST_CASE("by-reference inputs flow through to the backend fetcher") {
    Rig rig;
    rig.backend = std::make_shared<mock::Service>(
        "http://backend.test", mock::FaultConfig{},
        [](const std::string& url) -> std::optional<std::string> {
            if (url == "http://data.test/square.json")
                return R"({"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1],[0,0]]]})";
            return std::nullopt;
        });

    http::Response created = rig.request(
        "POST", std::string("/processes/") + kAreaId + "/jobs",
        R"({"inputs":{"polygon":{"href":"http://data.test/square.json"}}})");
    CHECK(created.status == 201);
    std::string id = job_id_from(created);
    CHECK(rig.get("/jobs/" + id + "/result").body == "1.0");

    // a dangling reference surfaces as the backend's exception, mapped to 400
    http::Response bad = rig.request(
        "POST", std::string("/processes/") + kAreaId + "/jobs",
        R"({"inputs":{"polygon":{"href":"http://data.test/missing.json"}}})");
    CHECK(bad.status == 400);
    CHECK(json::parse(bad.body)["data"]["code"] == "InvalidParameterValue");
}

TEST_CASE("XML representations keep the legacy document shapes") {
    Rig rig;
    http::Response res =
        rig.get(std::string("/processes/") + kAreaId, {{"Accept", "application/xml"}});
    CHECK(res.status == 200);
    auto descs = wps::parse_process_descriptions(res.body);
    REQUIRE(descs.size() == 1);
    CHECK(descs[0].identifier == kAreaId);
    // links ride along as extra elements without disturbing the parse
    CHECK(rest::extract_links(rest::kXml, res.body).size() >= 4);

    http::Response caps = rig.get("/processes", {{"Accept", "application/xml"}});
    CHECK(caps.status == 200);
    CHECK(caps.body.find("<Processes>") != std::string::npos);
}

TEST_CASE("input validation failures become 400 problems") {
    Rig rig;

    SUBCASE("missing required input") {
        http::Response res = rig.request(
            "POST", std::string("/processes/") + kAreaId + "/jobs", R"({"inputs":{}})");
        CHECK(res.status == 400);
        auto doc = json::parse(res.body);
        CHECK(doc["data"]["code"] == "MissingParameterValue");
        CHECK(doc["data"]["locator"] == "polygon");
    }

    SUBCASE("one of two required rects") {
        http::Response res =
            rig.request("POST", std::string("/processes/") + kIntersectId + "/jobs",
                        R"({"inputs":{"a":[0,0,2,2]}})");
        CHECK(res.status == 400);
        auto doc = json::parse(res.body);
        CHECK(doc["data"]["code"] == "MissingParameterValue");
        CHECK(doc["data"]["locator"] == "b");
    }

    SUBCASE("unknown input name") {
        http::Response res =
            rig.request("POST", std::string("/processes/") + kIntersectId + "/jobs",
                        R"({"inputs":{"a":[0,0,2,2],"b":[0,0,1,1],"c":[0,0,1,1]}})");
        CHECK(res.status == 400);
        CHECK(json::parse(res.body)["data"]["code"] == "InvalidParameterValue");
    }

    SUBCASE("malformed body") {
        http::Response res =
            rig.request("POST", std::string("/processes/") + kAreaId + "/jobs", "{nope");
        CHECK(res.status == 400);
        CHECK(json::parse(res.body)["data"]["code"] == "InvalidParameterValue");
    }

    SUBCASE("unknown process is 404") {
        CHECK(rig.request("POST", "/processes/ghost/jobs", "{}").status == 404);
    }

    SUBCASE("unscoped POST /jobs names the missing piece") {
        http::Response res = rig.request("POST", "/jobs", "{}");
        CHECK(res.status == 400);
        CHECK(json::parse(res.body)["data"]["locator"] == "process");
    }
}

TEST_CASE("validate_inputs enforces descriptors directly") {
    std::vector<wps::InputDescriptor> descriptors = {
        {"count", wps::ValueKind::literal, wps::LiteralType::integer, {}, 1, 3},
        {"doc", wps::ValueKind::complex, std::nullopt, {"application/json"}, 0, 1},
    };

    SUBCASE("literal datatype mismatch") {
        std::vector<wps::NamedValue> submitted{
            {"count", wps::LiteralValue{"abc", wps::LiteralType::integer}}};
        try {
            gateway::validate_inputs(submitted, descriptors);
            FAIL("expected error");
        } catch (const wps::ProtocolError& e) {
            CHECK(e.kind() == wps::ErrorKind::invalid_parameter);
            CHECK(e.locator() == "count");
        }
    }

    SUBCASE("occurrence bounds") {
        std::vector<wps::NamedValue> four(
            4, {"count", wps::LiteralValue{"1", wps::LiteralType::integer}});
        CHECK_THROWS_AS(gateway::validate_inputs(four, descriptors), wps::ProtocolError);

        std::vector<wps::NamedValue> two(
            2, {"count", wps::LiteralValue{"7", wps::LiteralType::integer}});
        auto normalized = gateway::validate_inputs(two, descriptors);
        CHECK(normalized.size() == 2);
    }

    SUBCASE("unsupported complex format") {
        std::vector<wps::NamedValue> submitted{
            {"count", wps::LiteralValue{"1", wps::LiteralType::integer}},
            {"doc", wps::ComplexValue{"text/csv", "x", std::nullopt}}};
        CHECK_THROWS_AS(gateway::validate_inputs(submitted, descriptors), wps::ProtocolError);
    }

    SUBCASE("repeated literals via JSON array") {
        json body{{"inputs", {{"count", {1, 2, 3}}}}};
        auto parsed = gateway::parse_job_submission(body, descriptors);
        CHECK(parsed.size() == 3);
        auto normalized = gateway::validate_inputs(parsed, descriptors);
        CHECK(normalized.size() == 3);
        CHECK(std::get<wps::LiteralValue>(normalized[1].second).text == "2");
    }
}

TEST_CASE("conditional GET yields 304 with empty body and repeated validators") {
    Rig rig;
    http::Response first = rig.get("/");
    REQUIRE(first.header("ETag"));
    std::string etag = *first.header("ETag");

    http::Response revalidated = rig.get("/", {{"If-None-Match", etag}});
    CHECK(revalidated.status == 304);
    CHECK(revalidated.body.empty());
    REQUIRE(revalidated.header("ETag"));
    CHECK(*revalidated.header("ETag") == etag);
    CHECK(revalidated.header("Cache-Control"));

    REQUIRE(first.header("Last-Modified"));
    http::Response by_date = rig.get("/", {{"If-Modified-Since", *first.header("Last-Modified")}});
    CHECK(by_date.status == 304);

    // jobs are no-cache but still revalidate by etag
    http::Response created = rig.post_area_job();
    std::string id = job_id_from(created);
    http::Response job = rig.get("/jobs/" + id);
    REQUIRE(job.header("ETag"));
    CHECK(*job.header("Cache-Control") == "no-cache");
    CHECK(rig.get("/jobs/" + id, {{"If-None-Match", *job.header("ETag")}}).status == 304);
}

TEST_CASE("backend exceptions map to statuses on job creation") {
    auto busy_backend = [] {
        return std::make_shared<mock::Service>(
            "http://backend.test", mock::FaultConfig{mock::FaultMode::server_busy, 0});
    };

    SUBCASE("busy backend with a cold catalog: 503 with the configured Retry-After") {
        gateway::Config config;
        config.retry_after_seconds = 45;
        Rig rig(config);
        rig.backend = busy_backend();
        http::Response res = rig.post_area_job();
        CHECK(res.status == 503);
        REQUIRE(res.header("Retry-After"));
        CHECK(*res.header("Retry-After") == "45");
    }

    SUBCASE("busy backend after a warm catalog: mapped 503 + Retry-After") {
        Rig rig;
        rig.get("/processes"); // warm the catalog
        rig.backend = busy_backend();
        http::Response res = rig.post_area_job();
        CHECK(res.status == 503);
        REQUIRE(res.header("Retry-After"));
        auto doc = json::parse(res.body);
        CHECK(doc["data"]["code"] == "ServerBusy");
        // the failed job is retained for inspection
        auto jobs = json::parse(rig.get("/jobs").body);
        REQUIRE(jobs["data"]["jobs"].size() == 1);
        CHECK(jobs["data"]["jobs"][0]["status"] == "failed");
    }

    SUBCASE("unreachable backend: 502 on execution, stale catalog on reads") {
        gateway::Config config;
        config.cache_ttl_seconds = 1;
        Rig rig(config);
        rig.get("/processes"); // warm
        rig.backend_up = false;

        http::Response res = rig.post_area_job();
        CHECK(res.status == 502);

        std::this_thread::sleep_for(std::chrono::milliseconds(1100));
        http::Response stale = rig.get("/processes");
        CHECK(stale.status == 200);
        REQUIRE(stale.header("Warning"));
        CHECK(stale.header("Warning")->find("stale") != std::string::npos);
    }

    SUBCASE("unreachable backend with a cold catalog: 503 everywhere") {
        Rig rig;
        rig.backend_up = false;
        CHECK(rig.get("/processes").status == 503);
        CHECK(rig.post_area_job().status == 503); // catalog lookup precedes execution
    }
}

TEST_CASE("journal replay reconstructs the job set") {
    std::string path = (std::filesystem::temp_directory_path() /
                        ("wpsgate_journal_" + util::random_token() + ".ndjson"))
                           .string();
    gateway::Config config;
    config.journal_path = path;

    std::vector<gateway::Job> before;
    {
        Rig rig(config);
        rig.post_area_job();
        rig.post_area_job();
        std::string doomed = job_id_from(rig.post_area_job());
        rig.request("DELETE", "/jobs/" + doomed);
        before = rig.gw->jobs().list();
        CHECK(before.size() == 2);
    }
    {
        Rig rig(config);
        std::vector<gateway::Job> after = rig.gw->jobs().list();
        REQUIRE(after.size() == before.size());
        for (size_t i = 0; i < before.size(); ++i) CHECK(after[i] == before[i]);
    }
    std::filesystem::remove(path);
}

TEST_CASE("property: hostile requests get well-formed problem responses") {
    Rig rig;
    std::mt19937_64 rng(444);
    auto junk = [&](int max_len) {
        std::uniform_int_distribution<int> len(0, max_len);
        std::uniform_int_distribution<int> byte(0x20, 0x7E);
        std::string out;
        int n = len(rng);
        for (int i = 0; i < n; ++i) out.push_back(static_cast<char>(byte(rng)));
        return out;
    };
    const char* methods[] = {"GET", "POST", "DELETE", "PUT", "PATCH"};
    const char* paths[] = {"/", "/processes", "/jobs", "/jobs/zzz", "/processes/zzz/jobs"};
    for (int i = 0; i < 800; ++i) {
        http::Request req;
        req.method = methods[i % 5];
        req.path = i % 2 == 0 ? paths[i % 5] : "/" + junk(16);
        req.raw_query = junk(32);
        req.body = junk(64);
        if (i % 7 == 0) req.headers.emplace_back("Accept", junk(24));
        http::Response res = rig.gw->handle(req);
        CHECK(res.status >= 200);
        CHECK(res.status < 600);
        // no session machinery, ever
        CHECK(res.header("Set-Cookie") == nullptr);
    }
}

TEST_CASE("GET storms do not disturb the job store") {
    Rig rig;
    rig.post_area_job();
    std::string digest_before = *rig.get("/jobs").header("ETag");
    for (int i = 0; i < 50; ++i) {
        rig.get("/");
        rig.get("/processes");
        rig.get("/jobs");
        rig.get("/?request=Execute&service=WPS&identifier=x");
    }
    CHECK(*rig.get("/jobs").header("ETag") == digest_before);
}
