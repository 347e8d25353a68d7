#include "wpsgate/gateway/validate.hpp"

#include "wpsgate/util.hpp"

#include <algorithm>
#include <map>

namespace wpsgate::gateway {

using nlohmann::json;
using wps::ErrorKind;
using wps::ProtocolError;

namespace {

[[noreturn]] void missing(const std::string& id) {
    throw ProtocolError(ErrorKind::missing_parameter, id, "required input absent: " + id);
}

[[noreturn]] void invalid(const std::string& id, const std::string& detail) {
    throw ProtocolError(ErrorKind::invalid_parameter, id, detail);
}

const wps::InputDescriptor* find_descriptor(const std::vector<wps::InputDescriptor>& descriptors,
                                            const std::string& id) {
    for (const auto& d : descriptors) {
        if (d.identifier == id) return &d;
    }
    return nullptr;
}

wps::DataValue interpret_one(const std::string& id, const wps::InputDescriptor& desc,
                             const json& value) {
    switch (desc.kind) {
    case wps::ValueKind::literal:
        if (value.is_string()) return wps::LiteralValue{value.get<std::string>(), desc.datatype.value_or(wps::LiteralType::string)};
        if (value.is_number()) return wps::LiteralValue{value.dump(), desc.datatype.value_or(wps::LiteralType::string)};
        invalid(id, "literal input must be a JSON string or number");

    case wps::ValueKind::bounding_box: {
        if (!value.is_array() || value.size() != 4 ||
            !std::all_of(value.begin(), value.end(), [](const json& n) { return n.is_number(); }))
            invalid(id, "bounding box input must be a four-number array");
        wps::BoundingBoxValue box{value[0].get<double>(), value[1].get<double>(),
                                  value[2].get<double>(), value[3].get<double>()};
        if (!(box.minx <= box.maxx) || !(box.miny <= box.maxy))
            invalid(id, "bounding box corners out of order");
        return box;
    }

    case wps::ValueKind::complex: {
        std::string default_format =
            desc.supported_formats.empty() ? "application/json" : desc.supported_formats.front();
        if (value.is_object() && value.contains("href")) {
            if (!value["href"].is_string()) invalid(id, "href must be a string");
            wps::ComplexValue cpx;
            cpx.href = value["href"].get<std::string>();
            cpx.media_type = value.contains("type") && value["type"].is_string()
                                 ? value["type"].get<std::string>()
                                 : default_format;
            return cpx;
        }
        if (value.is_object() || value.is_array()) {
            return wps::ComplexValue{"application/json", value.dump(), std::nullopt};
        }
        if (value.is_string()) {
            return wps::ComplexValue{default_format, value.get<std::string>(), std::nullopt};
        }
        invalid(id, "complex input must be an embedded document or {\"href\": uri}");
    }
    }
    invalid(id, "unhandled input kind");
}

bool is_repeat_array(const wps::InputDescriptor& desc, const json& value) {
    if (!value.is_array() || desc.max_occurs <= 1) return false;
    if (desc.kind == wps::ValueKind::bounding_box) {
        // a plain 4-number array is one bbox; arrays of arrays repeat
        return !value.empty() && value[0].is_array();
    }
    // an array for a complex input is an embedded JSON document
    return desc.kind == wps::ValueKind::literal;
}

} // namespace

std::vector<wps::NamedValue> parse_job_submission(
    const json& body, const std::vector<wps::InputDescriptor>& descriptors) {
    if (!body.is_object()) invalid("body", "submission must be a JSON object");
    std::vector<wps::NamedValue> out;
    if (!body.contains("inputs")) return out;
    const json& inputs = body["inputs"];
    if (!inputs.is_object()) invalid("inputs", "\"inputs\" must be an object");

    for (const auto& [id, value] : inputs.items()) {
        const wps::InputDescriptor* desc = find_descriptor(descriptors, id);
        if (!desc) invalid(id, "unknown input: " + id);
        if (is_repeat_array(*desc, value)) {
            for (const auto& element : value) out.emplace_back(id, interpret_one(id, *desc, element));
        } else {
            out.emplace_back(id, interpret_one(id, *desc, value));
        }
    }
    return out;
}

std::vector<wps::NamedValue> validate_inputs(
    const std::vector<wps::NamedValue>& submitted,
    const std::vector<wps::InputDescriptor>& descriptors) {
    std::map<std::string, unsigned> counts;
    for (const auto& [id, value] : submitted) {
        if (!find_descriptor(descriptors, id)) invalid(id, "unknown input: " + id);
        ++counts[id];
    }

    std::vector<wps::NamedValue> normalized;
    for (const auto& desc : descriptors) {
        unsigned count = counts.count(desc.identifier) ? counts[desc.identifier] : 0;
        if (count < desc.min_occurs) missing(desc.identifier);
        if (count > desc.max_occurs)
            invalid(desc.identifier, "too many occurrences: " + std::to_string(count) +
                                         " > " + std::to_string(desc.max_occurs));

        for (const auto& [id, value] : submitted) {
            if (id != desc.identifier) continue;
            switch (desc.kind) {
            case wps::ValueKind::literal: {
                const auto* lit = std::get_if<wps::LiteralValue>(&value);
                if (!lit) invalid(id, "expected a literal value");
                wps::LiteralType type = desc.datatype.value_or(wps::LiteralType::string);
                if (type == wps::LiteralType::doubl && !util::parse_double(lit->text))
                    invalid(id, "not a double: " + lit->text);
                if (type == wps::LiteralType::integer && !util::parse_integer(lit->text))
                    invalid(id, "not an integer: " + lit->text);
                normalized.emplace_back(id, wps::LiteralValue{lit->text, type});
                break;
            }
            case wps::ValueKind::complex: {
                const auto* cpx = std::get_if<wps::ComplexValue>(&value);
                if (!cpx) invalid(id, "expected a complex value");
                if (std::find(desc.supported_formats.begin(), desc.supported_formats.end(),
                              cpx->media_type) == desc.supported_formats.end())
                    invalid(id, "unsupported format: " + cpx->media_type);
                normalized.emplace_back(id, *cpx);
                break;
            }
            case wps::ValueKind::bounding_box: {
                const auto* box = std::get_if<wps::BoundingBoxValue>(&value);
                if (!box) invalid(id, "expected a bounding box value");
                normalized.emplace_back(id, *box);
                break;
            }
            }
        }
    }
    return normalized;
}

} // namespace wpsgate::gateway
