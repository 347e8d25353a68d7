#include "wpsgate/wps/types.hpp"

#include "wpsgate/util.hpp"

#include <set>

namespace wpsgate::wps {

namespace {

[[noreturn]] void invalid(const std::string& locator, const std::string& detail) {
    throw ProtocolError(ErrorKind::invalid_model, locator, detail);
}

bool blank(const std::string& s) { return util::trim(s).empty(); }

} // namespace

std::string to_string(LiteralType t) {
    switch (t) {
    case LiteralType::doubl: return "double";
    case LiteralType::integer: return "integer";
    case LiteralType::string: return "string";
    }
    return "string";
}

std::optional<LiteralType> literal_type_from(std::string_view name) {
    if (name == "double") return LiteralType::doubl;
    if (name == "integer") return LiteralType::integer;
    if (name == "string") return LiteralType::string;
    return std::nullopt;
}

std::string to_string(ValueKind k) {
    switch (k) {
    case ValueKind::literal: return "literal";
    case ValueKind::complex: return "complex";
    case ValueKind::bounding_box: return "bounding-box";
    }
    return "literal";
}

void validate(const DataValue& v) {
    if (const auto* c = std::get_if<ComplexValue>(&v)) {
        if (c->body.has_value() == c->href.has_value())
            invalid("complex", "complex value carries exactly one of body or href");
        if (c->media_type.empty()) invalid("complex", "complex value needs a media type");
    } else if (const auto* b = std::get_if<BoundingBoxValue>(&v)) {
        if (!(b->minx <= b->maxx) || !(b->miny <= b->maxy))
            invalid("bbox", "bounding box corners out of order");
    }
}

void validate(const OperationRequest& r) {
    if (const auto* d = std::get_if<DescribeProcessRequest>(&r)) {
        if (d->identifiers.empty()) invalid("identifier", "DescribeProcess needs at least one identifier");
        for (const auto& id : d->identifiers) {
            if (blank(id)) invalid("identifier", "blank process identifier");
        }
    } else if (const auto* e = std::get_if<ExecuteRequest>(&r)) {
        if (blank(e->process_id)) invalid("identifier", "Execute needs a process identifier");
        for (const auto& [name, value] : e->inputs) {
            if (blank(name)) invalid("datainputs", "blank input identifier");
            validate(value);
        }
    }
}

void validate(const ServiceCapabilities& c) {
    if (c.process_briefs.empty()) invalid("processes", "capabilities list at least one process");
    std::set<std::string> seen;
    for (const auto& p : c.process_briefs) {
        if (blank(p.identifier)) invalid("identifier", "blank process identifier");
        if (!seen.insert(p.identifier).second)
            invalid("identifier", "duplicate process identifier: " + p.identifier);
    }
}

void validate(const ProcessDescription& d) {
    if (blank(d.identifier)) invalid("identifier", "blank process identifier");
    if (d.outputs.empty()) invalid("outputs", "a process declares at least one output");
    std::set<std::string> seen;
    for (const auto& in : d.inputs) {
        if (!seen.insert(in.identifier).second)
            invalid(in.identifier, "duplicate input identifier");
        if (in.min_occurs > in.max_occurs)
            invalid(in.identifier, "minOccurs exceeds maxOccurs");
        if (in.kind == ValueKind::literal && !in.datatype)
            invalid(in.identifier, "literal input needs a datatype");
        if (in.kind == ValueKind::complex && in.supported_formats.empty())
            invalid(in.identifier, "complex input needs at least one format");
    }
    for (const auto& out : d.outputs) {
        if (out.kind == ValueKind::literal && !out.datatype)
            invalid(out.identifier, "literal output needs a datatype");
        if (out.kind == ValueKind::complex && out.supported_formats.empty())
            invalid(out.identifier, "complex output needs at least one format");
    }
}

void validate(const ExecuteResult& r) {
    if (blank(r.process_id)) invalid("identifier", "blank process identifier");
    if (r.outputs.empty()) invalid("outputs", "an execute result carries at least one output");
    for (const auto& [name, value] : r.outputs) {
        if (blank(name)) invalid("outputs", "blank output identifier");
        validate(value);
    }
}

void validate(const ExceptionReport& r) {
    if (r.entries.empty()) invalid("exception", "exception report must not be empty");
    for (const auto& e : r.entries) {
        if (blank(e.code)) invalid("exception", "blank exception code");
    }
}

} // namespace wpsgate::wps
