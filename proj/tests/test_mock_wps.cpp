#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wpsgate/mock/service.hpp"
#include "wpsgate/wps/kvp.hpp"
#include "wpsgate/wps/xml.hpp"

#include <json.hpp>

#include <random>

using namespace wpsgate;

namespace {

constexpr const char* kBase = "http://mock.test";

http::Request get(std::string query) {
    http::Request req;
    req.method = "GET";
    req.path = mock::Service::kWpsPath;
    req.raw_query = std::move(query);
    return req;
}

http::Request post(std::string body) {
    http::Request req;
    req.method = "POST";
    req.path = mock::Service::kWpsPath;
    req.body = std::move(body);
    return req;
}

std::string unit_square_geojson() {
    return R"({"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1],[0,0]]]})";
}

wps::ExecuteRequest area_request() {
    wps::ExecuteRequest ex;
    ex.process_id = mock::Service::kAreaProcess;
    ex.inputs.emplace_back(
        "polygon", wps::ComplexValue{"application/json", unit_square_geojson(), std::nullopt});
    return ex;
}

} // namespace

TEST_CASE("capabilities list the three processes") {
    mock::Service service(kBase);
    http::Response res = service.handle(get("request=getcapabilities&service=wps"));
    CHECK(res.status == 200);
    auto caps = wps::parse_capabilities(res.body);
    REQUIRE(caps.process_briefs.size() == 3);
    CHECK(caps.process_briefs[0].identifier == "org.n52.wps.server.algorithm.topology.Area");
    CHECK(caps.endpoint == std::string(kBase) + "/wps");
}

TEST_CASE("missing request key answers 200 with an exception body") {
    mock::Service service(kBase);
    http::Response res = service.handle(get("service=WPS"));
    CHECK(res.status == 200); // the defect under audit
    auto report = wps::parse_exception_report(res.body);
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].code == wps::kMissingParameterValue);
    CHECK(report.entries[0].locator == "request");
}

TEST_CASE("no response ever carries cache validators") {
    mock::Service service(kBase);
    for (const auto& req : {get("service=WPS&request=GetCapabilities"), get("service=WPS")}) {
        http::Response res = service.handle(req);
        CHECK(res.header("ETag") == nullptr);
        CHECK(res.header("Last-Modified") == nullptr);
        CHECK(res.header("Cache-Control") == nullptr);
    }
}

TEST_CASE("execute Area over XML POST returns literal 1.0") {
    mock::Service service(kBase);
    http::Response res =
        service.handle(post(wps::encode_xml(wps::OperationRequest{area_request()})));
    CHECK(res.status == 200);
    auto outcome = wps::parse_execute_response(res.body);
    auto* result = std::get_if<wps::ExecuteResult>(&outcome);
    REQUIRE(result);
    REQUIRE(result->outputs.size() == 1);
    CHECK(result->outputs[0].first == "area");
    auto* lit = std::get_if<wps::LiteralValue>(&result->outputs[0].second);
    REQUIRE(lit);
    CHECK(lit->text == "1.0");
    CHECK(lit->datatype == wps::LiteralType::doubl);
}

TEST_CASE("execute rides on GET too (the audited defect)") {
    mock::Service service(kBase);
    wps::ExecuteRequest ex;
    ex.process_id = mock::Service::kIntersectProcess;
    ex.inputs.emplace_back("a", wps::BoundingBoxValue{0, 0, 2, 2});
    ex.inputs.emplace_back("b", wps::BoundingBoxValue{1, 1, 3, 3});
    http::Response res = service.handle(get(wps::encode_kvp(wps::OperationRequest{ex})));
    CHECK(res.status == 200);
    auto outcome = wps::parse_execute_response(res.body);
    auto* result = std::get_if<wps::ExecuteResult>(&outcome);
    REQUIRE(result);
    auto* cpx = std::get_if<wps::ComplexValue>(&result->outputs[0].second);
    REQUIRE(cpx);
    REQUIRE(cpx->body.has_value());
    auto body = nlohmann::json::parse(*cpx->body);
    CHECK(body["bbox"] == nlohmann::json({1.0, 1.0, 2.0, 2.0}));
}

TEST_CASE("disjoint rectangles intersect to the empty marker") {
    mock::Service service(kBase);
    wps::ExecuteRequest ex;
    ex.process_id = mock::Service::kIntersectProcess;
    ex.inputs.emplace_back("a", wps::BoundingBoxValue{0, 0, 1, 1});
    ex.inputs.emplace_back("b", wps::BoundingBoxValue{2, 2, 3, 3});
    http::Response res = service.handle(post(wps::encode_xml(wps::OperationRequest{ex})));
    auto outcome = wps::parse_execute_response(res.body);
    auto* result = std::get_if<wps::ExecuteResult>(&outcome);
    REQUIRE(result);
    auto* cpx = std::get_if<wps::ComplexValue>(&result->outputs[0].second);
    REQUIRE(cpx);
    CHECK(nlohmann::json::parse(*cpx->body)["empty"] == true);
}

TEST_CASE("bounding box process returns a bbox value") {
    mock::Service service(kBase);
    wps::ExecuteRequest ex;
    ex.process_id = mock::Service::kBoundingBoxProcess;
    ex.inputs.emplace_back("polygon", wps::ComplexValue{"application/json",
                                                        R"({"type":"Polygon","coordinates":
[[[0,0],[4,0],[0,3],[0,0]]]})",
                                                        std::nullopt});
    http::Response res = service.handle(post(wps::encode_xml(wps::OperationRequest{ex})));
    auto outcome = wps::parse_execute_response(res.body);
    auto* result = std::get_if<wps::ExecuteResult>(&outcome);
    REQUIRE(result);
    auto* box = std::get_if<wps::BoundingBoxValue>(&result->outputs[0].second);
    REQUIRE(box);
    CHECK(box->minx == 0);
    CHECK(box->maxx == 4);
    CHECK(box->maxy == 3);
}

TEST_CASE("faults and errors stay behind status 200") {
    mock::Service service(kBase);

    SUBCASE("unknown process") {
        http::Response res = service.handle(
            get("service=WPS&request=DescribeProcess&identifier=nope"));
        CHECK(res.status == 200);
        auto report = wps::parse_exception_report(res.body);
        CHECK(report.entries[0].code == wps::kInvalidParameterValue);
        CHECK(report.entries[0].locator == "nope");
    }

    SUBCASE("missing execute input") {
        wps::ExecuteRequest ex;
        ex.process_id = mock::Service::kAreaProcess;
        http::Response res = service.handle(post(wps::encode_xml(wps::OperationRequest{ex})));
        CHECK(res.status == 200);
        auto report = wps::parse_exception_report(res.body);
        CHECK(report.entries[0].code == wps::kMissingParameterValue);
        CHECK(report.entries[0].locator == "polygon");
    }

    SUBCASE("degenerate polygon") {
        wps::ExecuteRequest ex;
        ex.process_id = mock::Service::kAreaProcess;
        ex.inputs.emplace_back(
            "polygon",
            wps::ComplexValue{"application/json",
                              R"({"type":"Polygon","coordinates":[[[0,0],[1,1]]]})",
                              std::nullopt});
        http::Response res = service.handle(post(wps::encode_xml(wps::OperationRequest{ex})));
        CHECK(res.status == 200);
        auto report = wps::parse_exception_report(res.body);
        CHECK(report.entries[0].code == wps::kInvalidParameterValue);
    }

    SUBCASE("unsupported input format") {
        wps::ExecuteRequest ex;
        ex.process_id = mock::Service::kAreaProcess;
        ex.inputs.emplace_back("polygon",
                               wps::ComplexValue{"text/csv", "0,0;1,1", std::nullopt});
        http::Response res = service.handle(post(wps::encode_xml(wps::OperationRequest{ex})));
        auto report = wps::parse_exception_report(res.body);
        CHECK(report.entries[0].code == wps::kInvalidParameterValue);
    }

    SUBCASE("malformed XML body") {
        http::Response res = service.handle(post("<<<"));
        CHECK(res.status == 200);
        auto report = wps::parse_exception_report(res.body);
        CHECK(report.entries[0].code == wps::kNoApplicableCode);
    }

    SUBCASE("server-busy fault mode") {
        mock::Service busy(kBase, {mock::FaultMode::server_busy, 0});
        http::Response res = busy.handle(get("service=WPS&request=GetCapabilities"));
        CHECK(res.status == 200);
        auto report = wps::parse_exception_report(res.body);
        CHECK(report.entries[0].code == wps::kServerBusy);
    }
}

TEST_CASE("identical requests produce byte-identical responses") {
    mock::Service service(kBase);
    auto req = post(wps::encode_xml(wps::OperationRequest{area_request()}));
    CHECK(service.handle(req).body == service.handle(req).body);

    auto caps = get("service=WPS&request=GetCapabilities");
    CHECK(service.handle(caps).body == service.handle(caps).body);
}

TEST_CASE("by-reference responses publish a dereferenceable deterministic href") {
    mock::Service service(kBase);
    wps::ExecuteRequest ex;
    ex.process_id = mock::Service::kIntersectProcess;
    ex.inputs.emplace_back("a", wps::BoundingBoxValue{0, 0, 2, 2});
    ex.inputs.emplace_back("b", wps::BoundingBoxValue{1, 1, 3, 3});
    ex.response_form = wps::ResponseForm::by_reference;

    auto req = post(wps::encode_xml(wps::OperationRequest{ex}));
    http::Response first = service.handle(req);
    http::Response second = service.handle(req);
    CHECK(first.body == second.body);

    auto outcome = wps::parse_execute_response(first.body);
    auto* result = std::get_if<wps::ExecuteResult>(&outcome);
    REQUIRE(result);
    auto* cpx = std::get_if<wps::ComplexValue>(&result->outputs[0].second);
    REQUIRE(cpx);
    REQUIRE(cpx->href.has_value());
    CHECK_FALSE(cpx->body.has_value());

    // the href dereferences against the same service
    std::string path = cpx->href->substr(std::string(kBase).size());
    http::Request fetch;
    fetch.method = "GET";
    fetch.path = path;
    http::Response stored = service.handle(fetch);
    CHECK(stored.status == 200);
    CHECK(nlohmann::json::parse(stored.body)["bbox"].size() == 4);
}

TEST_CASE("href inputs are fetched through the configured fetcher") {
    int fetches = 0;
    mock::Service service(kBase, {}, [&](const std::string& url) -> std::optional<std::string> {
        ++fetches;
        if (url == "http://data.test/poly.json") return unit_square_geojson();
        return std::nullopt;
    });

    wps::ExecuteRequest ex;
    ex.process_id = mock::Service::kAreaProcess;
    ex.inputs.emplace_back("polygon", wps::ComplexValue{"application/json", std::nullopt,
                                                        "http://data.test/poly.json"});
    http::Response res = service.handle(post(wps::encode_xml(wps::OperationRequest{ex})));
    auto outcome = wps::parse_execute_response(res.body);
    auto* result = std::get_if<wps::ExecuteResult>(&outcome);
    REQUIRE(result);
    CHECK(fetches == 1);
    CHECK(std::get<wps::LiteralValue>(result->outputs[0].second).text == "1.0");

    // unreachable href
    wps::ExecuteRequest bad = ex;
    bad.inputs[0].second = wps::ComplexValue{"application/json", std::nullopt,
                                             "http://data.test/missing.json"};
    http::Response err = service.handle(post(wps::encode_xml(wps::OperationRequest{bad})));
    auto report = wps::parse_exception_report(err.body);
    CHECK(report.entries[0].code == wps::kInvalidParameterValue);
}

TEST_CASE("property: the handler answers hostile requests without throwing") {
    mock::Service service(kBase);
    std::mt19937_64 rng(333);
    auto junk = [&](int max_len) {
        std::uniform_int_distribution<int> len(0, max_len);
        std::uniform_int_distribution<int> byte(0, 255);
        std::string out;
        int n = len(rng);
        for (int i = 0; i < n; ++i) out.push_back(static_cast<char>(byte(rng)));
        return out;
    };
    const char* methods[] = {"GET", "POST", "DELETE", "PUT"};
    for (int i = 0; i < 1500; ++i) {
        http::Request req;
        req.method = methods[i % 4];
        req.path = i % 3 == 0 ? mock::Service::kWpsPath : "/" + junk(12);
        req.raw_query = junk(64);
        req.body = junk(96);
        http::Response res = service.handle(req);
        CHECK((res.status == 200 || res.status == 404));
    }
}

TEST_CASE("unknown paths are 404, unsupported methods are WPS-style errors") {
    mock::Service service(kBase);
    http::Request req;
    req.method = "GET";
    req.path = "/elsewhere";
    CHECK(service.handle(req).status == 404);

    http::Request del;
    del.method = "DELETE";
    del.path = mock::Service::kWpsPath;
    http::Response res = service.handle(del);
    CHECK(res.status == 200);
    auto report = wps::parse_exception_report(res.body);
    CHECK(report.entries[0].code == wps::kNoApplicableCode);
}
