#include "wpsgate/wps/kvp.hpp"

#include "wpsgate/util.hpp"

#include <map>
#include <vector>

namespace wpsgate::wps {

using util::pct_decode;
using util::pct_encode;

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string encode_input_entry(const NamedValue& input) {
    const auto& [name, value] = input;
    std::string entry = pct_encode(name) + "=";
    if (const auto* lit = std::get_if<LiteralValue>(&value)) {
        entry += pct_encode(lit->text);
        entry += "@datatype=" + to_string(lit->datatype);
    } else if (const auto* cpx = std::get_if<ComplexValue>(&value)) {
        if (!cpx->href)
            throw ProtocolError(ErrorKind::unencodable_request, name,
                                "embedded complex value cannot ride in a query string");
        entry += "@href=" + pct_encode(*cpx->href);
        entry += "@mimetype=" + pct_encode(cpx->media_type);
    } else {
        const auto& box = std::get<BoundingBoxValue>(value);
        entry += "@bbox=" + pct_encode(util::format_double(box.minx)) + "," +
                 pct_encode(util::format_double(box.miny)) + "," +
                 pct_encode(util::format_double(box.maxx)) + "," +
                 pct_encode(util::format_double(box.maxy));
        entry += "@crs=" + pct_encode(box.crs);
    }
    return entry;
}

[[noreturn]] void bad_input(const std::string& locator, const std::string& detail) {
    throw ProtocolError(ErrorKind::invalid_parameter, locator, detail);
}

DataValue parse_input_payload(const std::string& name, std::string_view payload) {
    auto parts = split(payload, '@');
    std::string value = pct_decode(parts[0]);
    std::map<std::string, std::string> attrs;
    for (size_t i = 1; i < parts.size(); ++i) {
        size_t eq = parts[i].find('=');
        if (eq == std::string_view::npos) bad_input(name, "input attribute without value");
        attrs[util::to_lower(parts[i].substr(0, eq))] = pct_decode(parts[i].substr(eq + 1));
    }

    if (auto it = attrs.find("href"); it != attrs.end()) {
        ComplexValue cpx;
        cpx.href = it->second;
        auto mt = attrs.find("mimetype");
        cpx.media_type = mt != attrs.end() ? mt->second : "application/octet-stream";
        return cpx;
    }
    if (auto it = attrs.find("bbox"); it != attrs.end()) {
        auto nums = split(it->second, ',');
        if (nums.size() != 4) bad_input(name, "bbox needs four coordinates");
        double c[4];
        for (int i = 0; i < 4; ++i) {
            auto v = util::parse_double(pct_decode(nums[i]));
            if (!v) bad_input(name, "bbox coordinate does not parse");
            c[i] = *v;
        }
        BoundingBoxValue box{c[0], c[1], c[2], c[3]};
        if (auto crs = attrs.find("crs"); crs != attrs.end()) box.crs = crs->second;
        if (!(box.minx <= box.maxx) || !(box.miny <= box.maxy))
            bad_input(name, "bbox corners out of order");
        return box;
    }
    LiteralValue lit;
    lit.text = value;
    if (auto it = attrs.find("datatype"); it != attrs.end()) {
        auto t = literal_type_from(it->second);
        if (!t) bad_input(name, "unknown literal datatype: " + it->second);
        lit.datatype = *t;
    }
    return lit;
}

std::vector<NamedValue> parse_data_inputs(std::string_view decoded) {
    std::vector<NamedValue> inputs;
    if (decoded.empty()) return inputs;
    for (auto entry : split(decoded, ';')) {
        if (entry.empty()) bad_input("datainputs", "empty input entry");
        size_t eq = entry.find('=');
        if (eq == std::string_view::npos) bad_input("datainputs", "input entry without '='");
        std::string name = pct_decode(entry.substr(0, eq));
        if (name.empty()) bad_input("datainputs", "input entry without a name");
        inputs.emplace_back(name, parse_input_payload(name, entry.substr(eq + 1)));
    }
    return inputs;
}

} // namespace

std::string encode_kvp(const OperationRequest& req) {
    validate(req);
    if (const auto* gc = std::get_if<GetCapabilitiesRequest>(&req)) {
        return "service=" + pct_encode(gc->service) + "&request=GetCapabilities";
    }
    if (const auto* dp = std::get_if<DescribeProcessRequest>(&req)) {
        std::string ids;
        for (const auto& id : dp->identifiers) {
            if (!ids.empty()) ids += ',';
            ids += pct_encode(id);
        }
        return "service=WPS&request=DescribeProcess&identifier=" + pct_encode(ids);
    }
    const auto& ex = std::get<ExecuteRequest>(req);
    std::string entries;
    for (const auto& input : ex.inputs) {
        if (!entries.empty()) entries += ';';
        entries += encode_input_entry(input);
    }
    std::string query = "service=WPS&request=Execute";
    if (!entries.empty()) query += "&datainputs=" + pct_encode(entries);
    query += "&identifier=" + pct_encode(ex.process_id);
    query += "&responseform=";
    query += ex.response_form == ResponseForm::by_value ? "value" : "reference";
    return query;
}

OperationRequest parse_kvp(std::string_view query) {
    if (!query.empty() && query.front() == '?') query.remove_prefix(1);

    // first occurrence wins; keys matched case-insensitively
    std::map<std::string, std::string> kv;
    for (auto pair : split(query, '&')) {
        if (pair.empty()) continue;
        size_t eq = pair.find('=');
        std::string key = util::to_lower(pct_decode(pair.substr(0, eq == std::string_view::npos ? pair.size() : eq)));
        std::string value = eq == std::string_view::npos ? "" : pct_decode(pair.substr(eq + 1));
        kv.emplace(std::move(key), std::move(value));
    }

    auto require = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
            throw ProtocolError(ErrorKind::missing_parameter, key,
                                std::string("required parameter absent: ") + key);
        return it->second;
    };

    const std::string& request = require("request");
    const std::string& service = require("service");

    if (util::iequals(request, "GetCapabilities")) {
        return GetCapabilitiesRequest{service};
    }
    if (util::iequals(request, "DescribeProcess")) {
        DescribeProcessRequest dp;
        for (auto id : split(require("identifier"), ',')) {
            std::string decoded = pct_decode(id);
            if (util::trim(decoded).empty())
                bad_input("identifier", "blank process identifier");
            dp.identifiers.push_back(std::move(decoded));
        }
        return dp;
    }
    if (util::iequals(request, "Execute")) {
        ExecuteRequest ex;
        ex.process_id = require("identifier");
        if (util::trim(ex.process_id).empty())
            bad_input("identifier", "blank process identifier");
        if (auto it = kv.find("datainputs"); it != kv.end())
            ex.inputs = parse_data_inputs(it->second);
        if (auto it = kv.find("responseform"); it != kv.end()) {
            if (util::iequals(it->second, "value"))
                ex.response_form = ResponseForm::by_value;
            else if (util::iequals(it->second, "reference"))
                ex.response_form = ResponseForm::by_reference;
            else
                bad_input("responseform", "unknown response form: " + it->second);
        }
        return ex;
    }
    throw ProtocolError(ErrorKind::unknown_operation, "request",
                        "unknown operation: " + request);
}

} // namespace wpsgate::wps
