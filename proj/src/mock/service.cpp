#include "wpsgate/mock/service.hpp"

#include "wpsgate/geom/geometry.hpp"
#include "wpsgate/http/cache.hpp"
#include "wpsgate/util.hpp"
#include "wpsgate/wps/kvp.hpp"
#include "wpsgate/wps/xml.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <thread>

namespace wpsgate::mock {

namespace {

constexpr const char* kXmlContentType = "text/xml";

std::string exception_code_for(wps::ErrorKind kind) {
    switch (kind) {
    case wps::ErrorKind::missing_parameter: return wps::kMissingParameterValue;
    case wps::ErrorKind::malformed_document: return wps::kNoApplicableCode;
    default: return wps::kInvalidParameterValue;
    }
}

const wps::InputDescriptor* find_input(const wps::ProcessDescription& desc,
                                       const std::string& name) {
    for (const auto& in : desc.inputs) {
        if (in.identifier == name) return &in;
    }
    return nullptr;
}

} // namespace

Service::Service(std::string public_base, FaultConfig fault, HrefFetcher fetch_href)
    : public_base_(std::move(public_base)),
      fault_(fault),
      fetch_href_(std::move(fetch_href)),
      processes_(builtin_processes()) {
    while (!public_base_.empty() && public_base_.back() == '/') public_base_.pop_back();
    fault_.added_latency_ms =
        std::clamp(fault_.added_latency_ms, 0, FaultConfig::kMaxLatencyMs);
}

std::vector<wps::ProcessDescription> Service::builtin_processes() {
    using wps::LiteralType;
    using wps::ValueKind;

    wps::ProcessDescription area;
    area.identifier = kAreaProcess;
    area.title = "Area";
    area.abstract = "Computes the area enclosed by a polygon, in squared coordinate units.";
    area.taxonomy_tags = {"topology"};
    area.inputs = {{"polygon", ValueKind::complex, std::nullopt, {"application/json"}, 1, 1}};
    area.outputs = {{"area", ValueKind::literal, LiteralType::doubl, {}}};

    wps::ProcessDescription bbox;
    bbox.identifier = kBoundingBoxProcess;
    bbox.title = "BoundingBox";
    bbox.abstract = "Computes the axis-aligned bounding box of a polygon.";
    bbox.taxonomy_tags = {"topology"};
    bbox.inputs = {{"polygon", ValueKind::complex, std::nullopt, {"application/json"}, 1, 1}};
    bbox.outputs = {{"bbox", ValueKind::bounding_box, std::nullopt, {}}};

    wps::ProcessDescription intersect;
    intersect.identifier = kIntersectProcess;
    intersect.title = "Intersect";
    intersect.abstract = "Intersects two bounding boxes.";
    intersect.taxonomy_tags = {"topology"};
    intersect.inputs = {
        {"a", ValueKind::bounding_box, std::nullopt, {}, 1, 1},
        {"b", ValueKind::bounding_box, std::nullopt, {}, 1, 1},
    };
    intersect.outputs = {{"intersection", ValueKind::complex, std::nullopt, {"application/json"}}};

    return {area, bbox, intersect};
}

wps::ServiceCapabilities Service::capabilities() const {
    wps::ServiceCapabilities caps;
    caps.title = "Topology Processing Service";
    caps.provider = "Topology Lab";
    caps.endpoint = public_base_ + kWpsPath;
    for (const auto& p : processes_) caps.process_briefs.push_back({p.identifier, p.title});
    return caps;
}

http::Response Service::exception_response(const std::string& code,
                                           const std::optional<std::string>& locator,
                                           const std::optional<std::string>& text) {
    // status 200 on purpose: clients learn the outcome only by parsing
    http::Response res;
    res.status = 200;
    res.content_type = kXmlContentType;
    res.body = wps::encode_exception_report({{{code, locator, text}}});
    return res;
}

http::Response Service::handle(const http::Request& req) {
    if (fault_.added_latency_ms > 0)
        std::this_thread::sleep_for(std::chrono::milliseconds(fault_.added_latency_ms));

    if (fault_.mode == FaultMode::server_busy)
        return exception_response(wps::kServerBusy, std::nullopt,
                                  "server is temporarily busy, try again later");

    if (req.method == "GET" && req.path.rfind(kResultPathPrefix, 0) == 0) {
        std::string token = req.path.substr(std::string(kResultPathPrefix).size());
        std::lock_guard<std::mutex> lock(results_mutex_);
        auto it = stored_results_.find(token);
        if (it == stored_results_.end()) return {404, {}, "no such result", "text/plain"};
        return {200, {}, it->second.second, it->second.first};
    }

    if (req.path != kWpsPath) return {404, {}, "not found", "text/plain"};

    try {
        if (req.method == "GET") {
            return dispatch(wps::parse_kvp(req.raw_query));
        }
        if (req.method == "POST") {
            return dispatch(wps::parse_xml(req.body));
        }
        return exception_response(wps::kNoApplicableCode, std::nullopt,
                                  "unsupported method " + req.method);
    } catch (const wps::ProtocolError& e) {
        return exception_response(exception_code_for(e.kind()),
                                  e.locator().empty() ? std::nullopt
                                                      : std::optional<std::string>(e.locator()),
                                  e.what());
    } catch (const std::exception& e) {
        return exception_response(wps::kNoApplicableCode, std::nullopt, e.what());
    }
}

http::Response Service::dispatch(const wps::OperationRequest& req) {
    if (std::holds_alternative<wps::GetCapabilitiesRequest>(req)) {
        return {200, {}, wps::encode_capabilities(capabilities()), kXmlContentType};
    }
    if (const auto* dp = std::get_if<wps::DescribeProcessRequest>(&req)) {
        return describe(*dp);
    }
    return execute(std::get<wps::ExecuteRequest>(req));
}

http::Response Service::describe(const wps::DescribeProcessRequest& req) {
    std::vector<wps::ProcessDescription> selected;
    for (const auto& id : req.identifiers) {
        auto it = std::find_if(processes_.begin(), processes_.end(),
                               [&](const auto& p) { return p.identifier == id; });
        if (it == processes_.end())
            return exception_response(wps::kInvalidParameterValue, id, "unknown process");
        selected.push_back(*it);
    }
    return {200, {}, wps::encode_process_descriptions(selected), kXmlContentType};
}

std::string Service::resolve_complex_body(const std::string& input_name,
                                          const wps::ComplexValue& value) {
    if (value.body) return *value.body;
    if (!fetch_href_)
        throw wps::ProtocolError(wps::ErrorKind::invalid_parameter, input_name,
                                 "reference inputs are not resolvable here");
    auto body = fetch_href_(*value.href);
    if (!body)
        throw wps::ProtocolError(wps::ErrorKind::invalid_parameter, input_name,
                                 "could not dereference " + *value.href);
    return *body;
}

wps::DataValue Service::run_process(const wps::ProcessDescription& desc,
                                    std::vector<wps::NamedValue>& inputs) {
    auto take = [&](const std::string& name) -> wps::DataValue& {
        for (auto& [n, v] : inputs) {
            if (n == name) return v;
        }
        throw wps::ProtocolError(wps::ErrorKind::missing_parameter, name,
                                 "required input absent: " + name);
    };

    auto polygon_input = [&](const std::string& name) {
        auto& value = take(name);
        const auto* cpx = std::get_if<wps::ComplexValue>(&value);
        if (!cpx)
            throw wps::ProtocolError(wps::ErrorKind::invalid_parameter, name,
                                     "input must be a GeoJSON polygon document");
        try {
            return geom::polygon_from_geojson(resolve_complex_body(name, *cpx));
        } catch (const geom::DegenerateGeometry& e) {
            throw wps::ProtocolError(wps::ErrorKind::invalid_parameter, name, e.what());
        }
    };

    auto bbox_input = [&](const std::string& name) {
        auto& value = take(name);
        const auto* box = std::get_if<wps::BoundingBoxValue>(&value);
        if (!box)
            throw wps::ProtocolError(wps::ErrorKind::invalid_parameter, name,
                                     "input must be a bounding box");
        return geom::Rect{box->minx, box->miny, box->maxx, box->maxy};
    };

    if (desc.identifier == kAreaProcess) {
        double a = geom::area(polygon_input("polygon"));
        return wps::LiteralValue{util::format_double(a), wps::LiteralType::doubl};
    }
    if (desc.identifier == kBoundingBoxProcess) {
        geom::Rect r = geom::bounding_box(polygon_input("polygon"));
        return wps::BoundingBoxValue{r.minx, r.miny, r.maxx, r.maxy};
    }
    // Intersect
    auto result = geom::intersect(bbox_input("a"), bbox_input("b"));
    nlohmann::json body;
    if (result) {
        body = {{"bbox", {result->minx, result->miny, result->maxx, result->maxy}},
                {"crs", wps::kDefaultCrs}};
    } else {
        body = {{"empty", true}};
    }
    return wps::ComplexValue{"application/json", body.dump(), std::nullopt};
}

std::string Service::store_result(const std::string& media_type, std::string body) {
    // token derived from the content so identical requests publish
    // identical hrefs (keeps responses byte-deterministic)
    std::string etag = http::compute_etag(body);
    std::string token = etag.substr(1, 32);
    std::lock_guard<std::mutex> lock(results_mutex_);
    stored_results_[token] = {media_type, std::move(body)};
    return token;
}

http::Response Service::execute(const wps::ExecuteRequest& req) {
    auto it = std::find_if(processes_.begin(), processes_.end(),
                           [&](const auto& p) { return p.identifier == req.process_id; });
    if (it == processes_.end())
        return exception_response(wps::kInvalidParameterValue, req.process_id, "unknown process");
    const wps::ProcessDescription& desc = *it;

    for (const auto& [name, value] : req.inputs) {
        const wps::InputDescriptor* in = find_input(desc, name);
        if (!in) return exception_response(wps::kInvalidParameterValue, name, "unknown input");
        if (const auto* cpx = std::get_if<wps::ComplexValue>(&value)) {
            if (std::find(in->supported_formats.begin(), in->supported_formats.end(),
                          cpx->media_type) == in->supported_formats.end()) {
                return exception_response(wps::kInvalidParameterValue, name,
                                          "unsupported format " + cpx->media_type);
            }
        }
    }

    std::vector<wps::NamedValue> inputs = req.inputs;
    wps::ExecuteResult result;
    result.process_id = desc.identifier;
    try {
        wps::DataValue output = run_process(desc, inputs);
        if (req.response_form == wps::ResponseForm::by_reference) {
            if (auto* cpx = std::get_if<wps::ComplexValue>(&output); cpx && cpx->body) {
                std::string token = store_result(cpx->media_type, *cpx->body);
                cpx->body.reset();
                cpx->href = public_base_ + kResultPathPrefix + token;
            }
        }
        result.outputs.emplace_back(desc.outputs.front().identifier, std::move(output));
    } catch (const wps::ProtocolError& e) {
        return exception_response(exception_code_for(e.kind()),
                                  e.locator().empty() ? std::nullopt
                                                      : std::optional<std::string>(e.locator()),
                                  e.what());
    }
    return {200, {}, wps::encode_execute_response(result), kXmlContentType};
}

} // namespace wpsgate::mock
