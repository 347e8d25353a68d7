#include "wpsgate/wps/json.hpp"

namespace wpsgate::wps {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& detail) {
    throw ProtocolError(ErrorKind::schema_violation, "", detail);
}

std::string require_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) bad(std::string("missing string field: ") + key);
    return j[key].get<std::string>();
}

} // namespace

json to_json(const DataValue& value) {
    if (const auto* lit = std::get_if<LiteralValue>(&value)) {
        return {{"datatype", to_string(lit->datatype)}, {"value", lit->text}};
    }
    if (const auto* cpx = std::get_if<ComplexValue>(&value)) {
        json j{{"media_type", cpx->media_type}};
        if (cpx->body) j["body"] = *cpx->body;
        if (cpx->href) j["href"] = *cpx->href;
        return j;
    }
    const auto& box = std::get<BoundingBoxValue>(value);
    return {{"bbox", {box.minx, box.miny, box.maxx, box.maxy}}, {"crs", box.crs}};
}

DataValue data_value_from_json(const json& j) {
    if (!j.is_object()) bad("data value must be an object");
    if (j.contains("bbox")) {
        const auto& arr = j["bbox"];
        if (!arr.is_array() || arr.size() != 4) bad("bbox needs four coordinates");
        for (const auto& n : arr) {
            if (!n.is_number()) bad("bbox coordinates must be numbers");
        }
        BoundingBoxValue box{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>(),
                             arr[3].get<double>()};
        if (j.contains("crs")) box.crs = require_string(j, "crs");
        return box;
    }
    if (j.contains("media_type")) {
        ComplexValue cpx;
        cpx.media_type = require_string(j, "media_type");
        if (j.contains("body")) cpx.body = require_string(j, "body");
        if (j.contains("href")) cpx.href = require_string(j, "href");
        return cpx;
    }
    if (j.contains("value")) {
        LiteralValue lit;
        lit.text = require_string(j, "value");
        if (j.contains("datatype")) {
            auto t = literal_type_from(require_string(j, "datatype"));
            if (!t) bad("unknown literal datatype");
            lit.datatype = *t;
        }
        return lit;
    }
    bad("unrecognized data value shape");
}

json to_json(const ExecuteResult& result) {
    json outputs = json::array();
    for (const auto& [name, value] : result.outputs)
        outputs.push_back({{"id", name}, {"value", to_json(value)}});
    return {{"process", result.process_id}, {"outputs", outputs}};
}

ExecuteResult result_from_json(const json& j) {
    ExecuteResult result;
    result.process_id = require_string(j, "process");
    if (!j.contains("outputs") || !j["outputs"].is_array()) bad("result without outputs");
    for (const auto& entry : j["outputs"]) {
        if (!entry.is_object() || !entry.contains("value")) bad("malformed output entry");
        result.outputs.emplace_back(require_string(entry, "id"),
                                    data_value_from_json(entry["value"]));
    }
    return result;
}

json to_json(const ExceptionReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        json entry{{"code", e.code}};
        if (e.locator) entry["locator"] = *e.locator;
        if (e.text) entry["text"] = *e.text;
        entries.push_back(std::move(entry));
    }
    return {{"entries", entries}};
}

ExceptionReport report_from_json(const json& j) {
    ExceptionReport report;
    if (!j.contains("entries") || !j["entries"].is_array()) bad("report without entries");
    for (const auto& entry : j["entries"]) {
        ExceptionEntry e;
        e.code = require_string(entry, "code");
        if (entry.contains("locator")) e.locator = require_string(entry, "locator");
        if (entry.contains("text")) e.text = require_string(entry, "text");
        report.entries.push_back(std::move(e));
    }
    return report;
}

} // namespace wpsgate::wps
