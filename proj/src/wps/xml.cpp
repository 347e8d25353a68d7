#include "wpsgate/wps/xml.hpp"

#include "wpsgate/util.hpp"

#include <sstream>

namespace wpsgate::wps {

namespace {

[[noreturn]] void schema_error(const std::string& locator, const std::string& detail) {
    throw ProtocolError(ErrorKind::schema_violation, locator, detail);
}

xml::Node parse_document(std::string_view bytes) {
    try {
        return xml::parse(bytes);
    } catch (const xml::ParseError& e) {
        throw ProtocolError(ErrorKind::malformed_document, "", e.what());
    }
}

// Re-tag invariant failures found in parsed documents as schema errors.
template <typename Model>
void check_parsed(const Model& m) {
    try {
        validate(m);
    } catch (const ProtocolError& e) {
        schema_error(e.locator(), e.what());
    }
}

std::string corner(double x, double y) {
    return util::format_double(x) + " " + util::format_double(y);
}

std::pair<double, double> parse_corner(const std::string& text, const char* which) {
    std::istringstream in(text);
    std::string a, b, extra;
    in >> a >> b;
    if (in >> extra) schema_error(which, "corner has more than two coordinates");
    auto x = util::parse_double(a);
    auto y = util::parse_double(b);
    if (!x || !y) schema_error(which, "corner coordinates do not parse");
    return {*x, *y};
}

LiteralType parse_datatype(const xml::Node& node) {
    const std::string* dt = node.attr("dataType");
    if (!dt) return LiteralType::string;
    auto t = literal_type_from(*dt);
    if (!t) schema_error(node.name, "unknown literal datatype: " + *dt);
    return *t;
}

// Descriptor kind elements: LiteralData / ComplexData with Format
// children / BoundingBoxData.
void append_descriptor_kind(xml::Node& parent, ValueKind kind,
                            const std::optional<LiteralType>& datatype,
                            const std::vector<std::string>& formats) {
    switch (kind) {
    case ValueKind::literal: {
        auto& lit = parent.add("LiteralData");
        lit.set_attr("dataType", to_string(datatype.value_or(LiteralType::string)));
        break;
    }
    case ValueKind::complex: {
        auto& cpx = parent.add("ComplexData");
        for (const auto& f : formats) cpx.add("Format").set_attr("mimeType", f);
        break;
    }
    case ValueKind::bounding_box:
        parent.add("BoundingBoxData");
        break;
    }
}

template <typename Descriptor>
void parse_descriptor_kind(const xml::Node& holder, Descriptor& d) {
    if (const xml::Node* lit = holder.child("LiteralData")) {
        d.kind = ValueKind::literal;
        d.datatype = parse_datatype(*lit);
    } else if (const xml::Node* cpx = holder.child("ComplexData")) {
        d.kind = ValueKind::complex;
        for (const xml::Node* f : cpx->children_named("Format")) {
            const std::string* mt = f->attr("mimeType");
            if (!mt) schema_error(d.identifier, "Format without mimeType");
            d.supported_formats.push_back(*mt);
        }
    } else if (holder.child("BoundingBoxData")) {
        d.kind = ValueKind::bounding_box;
    } else {
        schema_error(d.identifier, "descriptor without a data kind element");
    }
}

unsigned parse_occurs(const xml::Node& input, const char* attr, unsigned fallback) {
    const std::string* raw = input.attr(attr);
    if (!raw) return fallback;
    auto v = util::parse_integer(*raw);
    if (!v || *v < 0) schema_error(attr, "occurrence bound does not parse");
    return static_cast<unsigned>(*v);
}

ProcessDescription parse_description_node(const xml::Node& node) {
    ProcessDescription d;
    d.identifier = node.child_text("Identifier");
    d.title = node.child_text("Title");
    if (const xml::Node* a = node.child("Abstract")) d.abstract = a->text;
    for (const xml::Node* m : node.children_named("Metadata")) {
        if (const std::string* tag = m->attr("tag")) d.taxonomy_tags.push_back(*tag);
    }
    if (const xml::Node* inputs = node.child("DataInputs")) {
        for (const xml::Node* in : inputs->children_named("Input")) {
            InputDescriptor id;
            id.identifier = in->child_text("Identifier");
            id.min_occurs = parse_occurs(*in, "minOccurs", 1);
            id.max_occurs = parse_occurs(*in, "maxOccurs", 1);
            parse_descriptor_kind(*in, id);
            d.inputs.push_back(std::move(id));
        }
    }
    if (const xml::Node* outputs = node.child("ProcessOutputs")) {
        for (const xml::Node* out : outputs->children_named("Output")) {
            OutputDescriptor od;
            od.identifier = out->child_text("Identifier");
            parse_descriptor_kind(*out, od);
            d.outputs.push_back(std::move(od));
        }
    }
    check_parsed(d);
    return d;
}

// Output/Input value holder: either a Reference element or a Data
// wrapper around one of the value elements.
void append_data_value(xml::Node& holder, const DataValue& value) {
    if (const auto* cpx = std::get_if<ComplexValue>(&value); cpx && cpx->href) {
        holder.add("Reference")
            .set_attr("href", *cpx->href)
            .set_attr("mimeType", cpx->media_type);
        return;
    }
    holder.add("Data").children.push_back(data_value_to_node(value));
}

ExceptionReport parse_exception_node(const xml::Node& root) {
    ExceptionReport report;
    for (const xml::Node* e : root.children_named("Exception")) {
        ExceptionEntry entry;
        const std::string* code = e->attr("exceptionCode");
        if (!code) schema_error("exception", "Exception without exceptionCode");
        entry.code = *code;
        if (const std::string* loc = e->attr("locator")) entry.locator = *loc;
        if (const xml::Node* text = e->child("ExceptionText")) entry.text = text->text;
        report.entries.push_back(std::move(entry));
    }
    check_parsed(report);
    return report;
}

ExecuteResult parse_execute_result_node(const xml::Node& root) {
    ExecuteResult result;
    if (const xml::Node* p = root.child("Process")) result.process_id = p->child_text("Identifier");
    if (const xml::Node* outputs = root.child("ProcessOutputs")) {
        for (const xml::Node* out : outputs->children_named("Output")) {
            result.outputs.emplace_back(out->child_text("Identifier"),
                                        data_value_from_node(*out));
        }
    }
    check_parsed(result);
    return result;
}

} // namespace

xml::Node data_value_to_node(const DataValue& value) {
    xml::Node node;
    if (const auto* lit = std::get_if<LiteralValue>(&value)) {
        node.name = "LiteralData";
        node.set_attr("dataType", to_string(lit->datatype));
        node.set_text(lit->text);
    } else if (const auto* cpx = std::get_if<ComplexValue>(&value)) {
        node.name = "ComplexData";
        node.set_attr("mimeType", cpx->media_type);
        if (cpx->body) node.set_text(*cpx->body);
        if (cpx->href) node.set_attr("href", *cpx->href);
    } else {
        const auto& box = std::get<BoundingBoxValue>(value);
        node.name = "BoundingBoxData";
        node.set_attr("crs", box.crs);
        node.add("LowerCorner").set_text(corner(box.minx, box.miny));
        node.add("UpperCorner").set_text(corner(box.maxx, box.maxy));
    }
    return node;
}

DataValue data_value_from_node(const xml::Node& holder) {
    if (const xml::Node* ref = holder.child("Reference")) {
        ComplexValue cpx;
        const std::string* href = ref->attr("href");
        if (!href) schema_error("Reference", "Reference without href");
        cpx.href = *href;
        const std::string* mt = ref->attr("mimeType");
        cpx.media_type = mt ? *mt : "application/octet-stream";
        return cpx;
    }
    const xml::Node* data = holder.child("Data");
    if (!data) schema_error(holder.name, "value holder without Data or Reference");
    if (const xml::Node* lit = data->child("LiteralData")) {
        LiteralValue v;
        v.text = lit->text;
        v.datatype = parse_datatype(*lit);
        return v;
    }
    if (const xml::Node* cpx = data->child("ComplexData")) {
        ComplexValue v;
        const std::string* mt = cpx->attr("mimeType");
        v.media_type = mt ? *mt : "application/octet-stream";
        if (const std::string* href = cpx->attr("href")) {
            v.href = *href;
        } else {
            v.body = cpx->text;
        }
        return v;
    }
    if (const xml::Node* box = data->child("BoundingBoxData")) {
        BoundingBoxValue v;
        auto [minx, miny] = parse_corner(box->child_text("LowerCorner"), "LowerCorner");
        auto [maxx, maxy] = parse_corner(box->child_text("UpperCorner"), "UpperCorner");
        v.minx = minx;
        v.miny = miny;
        v.maxx = maxx;
        v.maxy = maxy;
        if (const std::string* crs = box->attr("crs")) v.crs = *crs;
        return v;
    }
    schema_error("Data", "Data without a recognized value element");
}

std::string encode_xml(const OperationRequest& req) {
    validate(req);
    xml::Node root;
    if (const auto* gc = std::get_if<GetCapabilitiesRequest>(&req)) {
        root.name = "GetCapabilities";
        root.set_attr("xmlns", kNamespace);
        root.set_attr("service", gc->service);
    } else if (const auto* dp = std::get_if<DescribeProcessRequest>(&req)) {
        root.name = "DescribeProcess";
        root.set_attr("xmlns", kNamespace);
        for (const auto& id : dp->identifiers) root.add("Identifier").set_text(id);
    } else {
        const auto& ex = std::get<ExecuteRequest>(req);
        root.name = "Execute";
        root.set_attr("xmlns", kNamespace);
        root.add("Identifier").set_text(ex.process_id);
        auto& inputs = root.add("DataInputs");
        for (const auto& [name, value] : ex.inputs) {
            auto& in = inputs.add("Input");
            in.add("Identifier").set_text(name);
            append_data_value(in, value);
        }
        root.add("ResponseForm")
            .set_text(ex.response_form == ResponseForm::by_value ? "value" : "reference");
    }
    return xml::serialize(root);
}

OperationRequest parse_xml(std::string_view bytes) {
    xml::Node root = parse_document(bytes);
    if (root.name == "GetCapabilities") {
        const std::string* service = root.attr("service");
        if (!service)
            throw ProtocolError(ErrorKind::missing_parameter, "service",
                                "GetCapabilities without service attribute");
        return GetCapabilitiesRequest{*service};
    }
    if (root.name == "DescribeProcess") {
        DescribeProcessRequest dp;
        for (const xml::Node* id : root.children_named("Identifier"))
            dp.identifiers.push_back(id->text);
        if (dp.identifiers.empty())
            throw ProtocolError(ErrorKind::missing_parameter, "identifier",
                                "DescribeProcess without identifiers");
        check_parsed(OperationRequest{dp});
        return dp;
    }
    if (root.name == "Execute") {
        ExecuteRequest ex;
        const xml::Node* id = root.child("Identifier");
        if (!id)
            throw ProtocolError(ErrorKind::missing_parameter, "identifier",
                                "Execute without process identifier");
        ex.process_id = id->text;
        if (const xml::Node* inputs = root.child("DataInputs")) {
            for (const xml::Node* in : inputs->children_named("Input"))
                ex.inputs.emplace_back(in->child_text("Identifier"), data_value_from_node(*in));
        }
        if (const xml::Node* form = root.child("ResponseForm")) {
            if (form->text == "reference")
                ex.response_form = ResponseForm::by_reference;
            else if (form->text == "value")
                ex.response_form = ResponseForm::by_value;
            else
                schema_error("ResponseForm", "unknown response form: " + form->text);
        }
        check_parsed(OperationRequest{ex});
        return ex;
    }
    throw ProtocolError(ErrorKind::unknown_operation, root.name,
                        "unknown operation document: " + root.name);
}

xml::Node capabilities_to_node(const ServiceCapabilities& caps) {
    xml::Node root;
    root.name = "Capabilities";
    root.set_attr("xmlns", kNamespace);
    root.add("Title").set_text(caps.title);
    root.add("Provider").set_text(caps.provider);
    root.add("Endpoint").set_text(caps.endpoint);
    auto& offerings = root.add("ProcessOfferings");
    for (const auto& brief : caps.process_briefs) {
        auto& p = offerings.add("Process");
        p.add("Identifier").set_text(brief.identifier);
        p.add("Title").set_text(brief.title);
    }
    return root;
}

std::string encode_capabilities(const ServiceCapabilities& caps) {
    validate(caps);
    return xml::serialize(capabilities_to_node(caps));
}

ServiceCapabilities parse_capabilities(std::string_view bytes) {
    xml::Node root = parse_document(bytes);
    if (root.name != "Capabilities")
        schema_error(root.name, "expected a Capabilities document");
    ServiceCapabilities caps;
    caps.title = root.child_text("Title");
    caps.provider = root.child_text("Provider");
    caps.endpoint = root.child_text("Endpoint");
    if (const xml::Node* offerings = root.child("ProcessOfferings")) {
        for (const xml::Node* p : offerings->children_named("Process"))
            caps.process_briefs.push_back({p->child_text("Identifier"), p->child_text("Title")});
    }
    check_parsed(caps);
    return caps;
}

xml::Node process_descriptions_to_node(const std::vector<ProcessDescription>& descs) {
    xml::Node root;
    root.name = "ProcessDescriptions";
    root.set_attr("xmlns", kNamespace);
    for (const auto& d : descs) {
        auto& node = root.add("ProcessDescription");
        node.add("Identifier").set_text(d.identifier);
        node.add("Title").set_text(d.title);
        if (d.abstract) node.add("Abstract").set_text(*d.abstract);
        for (const auto& tag : d.taxonomy_tags) node.add("Metadata").set_attr("tag", tag);
        auto& inputs = node.add("DataInputs");
        for (const auto& in : d.inputs) {
            auto& input = inputs.add("Input");
            input.set_attr("minOccurs", std::to_string(in.min_occurs));
            input.set_attr("maxOccurs", std::to_string(in.max_occurs));
            input.add("Identifier").set_text(in.identifier);
            append_descriptor_kind(input, in.kind, in.datatype, in.supported_formats);
        }
        auto& outputs = node.add("ProcessOutputs");
        for (const auto& out : d.outputs) {
            auto& output = outputs.add("Output");
            output.add("Identifier").set_text(out.identifier);
            append_descriptor_kind(output, out.kind, out.datatype, out.supported_formats);
        }
    }
    return root;
}

std::string encode_process_descriptions(const std::vector<ProcessDescription>& descs) {
    for (const auto& d : descs) validate(d);
    return xml::serialize(process_descriptions_to_node(descs));
}

std::string encode_process_description(const ProcessDescription& desc) {
    return encode_process_descriptions({desc});
}

std::vector<ProcessDescription> parse_process_descriptions(std::string_view bytes) {
    xml::Node root = parse_document(bytes);
    if (root.name != "ProcessDescriptions")
        schema_error(root.name, "expected a ProcessDescriptions document");
    std::vector<ProcessDescription> out;
    for (const xml::Node* node : root.children_named("ProcessDescription"))
        out.push_back(parse_description_node(*node));
    return out;
}

xml::Node execute_response_to_node(const ExecuteResult& result) {
    xml::Node root;
    root.name = "ExecuteResponse";
    root.set_attr("xmlns", kNamespace);
    root.add("Process").add("Identifier").set_text(result.process_id);
    auto& outputs = root.add("ProcessOutputs");
    for (const auto& [name, value] : result.outputs) {
        auto& out = outputs.add("Output");
        out.add("Identifier").set_text(name);
        append_data_value(out, value);
    }
    return root;
}

std::string encode_execute_response(const ExecuteResult& result) {
    validate(result);
    return xml::serialize(execute_response_to_node(result));
}

xml::Node exception_report_to_node(const ExceptionReport& report) {
    xml::Node root;
    root.name = "ExceptionReport";
    root.set_attr("xmlns", kNamespace);
    for (const auto& entry : report.entries) {
        auto& e = root.add("Exception");
        e.set_attr("exceptionCode", entry.code);
        if (entry.locator) e.set_attr("locator", *entry.locator);
        if (entry.text) e.add("ExceptionText").set_text(*entry.text);
    }
    return root;
}

std::string encode_exception_report(const ExceptionReport& report) {
    validate(report);
    return xml::serialize(exception_report_to_node(report));
}

ExecuteOutcome parse_execute_response(std::string_view bytes) {
    xml::Node root = parse_document(bytes);
    if (root.name == "ExceptionReport") return parse_exception_node(root);
    if (root.name == "ExecuteResponse") return parse_execute_result_node(root);
    schema_error(root.name, "expected ExecuteResponse or ExceptionReport");
}

ExceptionReport parse_exception_report(std::string_view bytes) {
    xml::Node root = parse_document(bytes);
    if (root.name != "ExceptionReport")
        schema_error(root.name, "expected an ExceptionReport document");
    return parse_exception_node(root);
}

} // namespace wpsgate::wps
