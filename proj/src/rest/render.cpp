#include "wpsgate/rest/render.hpp"

#include "wpsgate/http/cache.hpp"
#include "wpsgate/util.hpp"
#include "wpsgate/wps/json.hpp"
#include "wpsgate/wps/xml.hpp"
#include "wpsgate/xml/node.hpp"

#include <json.hpp>

#include <regex>

namespace wpsgate::rest {

using nlohmann::json;

namespace {

json descriptor_to_json(const std::string& id, wps::ValueKind kind,
                        const std::optional<wps::LiteralType>& datatype,
                        const std::vector<std::string>& formats) {
    json j{{"id", id}, {"kind", wps::to_string(kind)}};
    if (datatype) j["datatype"] = wps::to_string(*datatype);
    if (!formats.empty()) j["formats"] = formats;
    return j;
}

json view_data(const ResourceView& view) {
    if (const auto* e = std::get_if<EntryView>(&view)) {
        return {{"title", e->title}};
    }
    if (const auto* pl = std::get_if<ProcessListView>(&view)) {
        json processes = json::array();
        for (const auto& p : pl->processes)
            processes.push_back({{"id", p.identifier}, {"title", p.title}});
        return {{"title", pl->title}, {"provider", pl->provider}, {"processes", processes}};
    }
    if (const auto* pv = std::get_if<ProcessView>(&view)) {
        const auto& d = pv->description;
        json inputs = json::array();
        for (const auto& in : d.inputs) {
            json j = descriptor_to_json(in.identifier, in.kind, in.datatype, in.supported_formats);
            j["min_occurs"] = in.min_occurs;
            j["max_occurs"] = in.max_occurs;
            inputs.push_back(std::move(j));
        }
        json outputs = json::array();
        for (const auto& out : d.outputs)
            outputs.push_back(
                descriptor_to_json(out.identifier, out.kind, out.datatype, out.supported_formats));
        json j{{"id", d.identifier}, {"title", d.title},     {"tags", d.taxonomy_tags},
               {"inputs", inputs},   {"outputs", outputs}};
        if (d.abstract) j["abstract"] = *d.abstract;
        return j;
    }
    if (const auto* jl = std::get_if<JobListView>(&view)) {
        json jobs = json::array();
        for (const auto& b : jl->jobs)
            jobs.push_back(
                {{"id", b.id}, {"process", b.process_id}, {"status", to_string(b.phase)}});
        return {{"jobs", jobs}};
    }
    if (const auto* jv = std::get_if<JobView>(&view)) {
        json j{{"id", jv->id},
               {"process", jv->process_id},
               {"status", to_string(jv->phase)},
               {"created", jv->created_ms},
               {"updated", jv->updated_ms}};
        if (jv->error) {
            json e{{"code", jv->error->code}};
            if (jv->error->locator) e["locator"] = *jv->error->locator;
            if (jv->error->text) e["text"] = *jv->error->text;
            j["error"] = std::move(e);
        }
        return j;
    }
    if (const auto* rv = std::get_if<ResultView>(&view)) {
        json outputs = json::object();
        for (const auto& [name, value] : rv->result.outputs)
            outputs[name] = wps::to_json(value);
        return {{"process", rv->result.process_id}, {"outputs", outputs}};
    }
    const auto& p = std::get<ProblemView>(view);
    json j{{"code", p.code}, {"status", p.status}};
    if (p.locator) j["locator"] = *p.locator;
    if (p.text) j["text"] = *p.text;
    return j;
}

std::string view_title(const ResourceId& id, const ResourceView& view) {
    if (const auto* e = std::get_if<EntryView>(&view)) return e->title;
    if (const auto* p = std::get_if<ProblemView>(&view)) return "problem: " + p->code;
    switch (id.kind) {
    case ResourceKind::process_collection: return "processes";
    case ResourceKind::process: return id.key.value();
    case ResourceKind::job_collection: return "jobs";
    case ResourceKind::job: return "job " + id.key.value();
    case ResourceKind::job_result: return "result of job " + id.key.value();
    default: return "service";
    }
}

xml::Node view_to_xml(const ResourceView& view) {
    if (const auto* e = std::get_if<EntryView>(&view)) {
        xml::Node root;
        root.name = "ServiceEntry";
        root.add("Title").set_text(e->title);
        return root;
    }
    if (const auto* pl = std::get_if<ProcessListView>(&view)) {
        xml::Node root;
        root.name = "Processes";
        root.add("Title").set_text(pl->title);
        root.add("Provider").set_text(pl->provider);
        for (const auto& p : pl->processes) {
            auto& node = root.add("Process");
            node.add("Identifier").set_text(p.identifier);
            node.add("Title").set_text(p.title);
        }
        return root;
    }
    if (const auto* pv = std::get_if<ProcessView>(&view)) {
        return wps::process_descriptions_to_node({pv->description});
    }
    if (const auto* jl = std::get_if<JobListView>(&view)) {
        xml::Node root;
        root.name = "Jobs";
        for (const auto& b : jl->jobs) {
            auto& node = root.add("Job");
            node.add("Identifier").set_text(b.id);
            node.add("Process").set_text(b.process_id);
            node.add("Status").set_text(to_string(b.phase));
        }
        return root;
    }
    if (const auto* jv = std::get_if<JobView>(&view)) {
        xml::Node root;
        root.name = "Job";
        root.add("Identifier").set_text(jv->id);
        root.add("Process").set_text(jv->process_id);
        root.add("Status").set_text(to_string(jv->phase));
        root.add("Created").set_text(std::to_string(jv->created_ms));
        root.add("Updated").set_text(std::to_string(jv->updated_ms));
        if (jv->error) {
            auto& e = root.add("Exception");
            e.set_attr("exceptionCode", jv->error->code);
            if (jv->error->locator) e.set_attr("locator", *jv->error->locator);
            if (jv->error->text) e.add("ExceptionText").set_text(*jv->error->text);
        }
        return root;
    }
    if (const auto* rv = std::get_if<ResultView>(&view)) {
        return wps::execute_response_to_node(rv->result);
    }
    const auto& p = std::get<ProblemView>(view);
    wps::ExceptionReport report{{{p.code, p.locator, p.text}}};
    return wps::exception_report_to_node(report);
}

std::string escape_html(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string render_html(const ResourceId& id, const ResourceView& view,
                        const std::vector<TypedLink>& links) {
    std::string title = escape_html(view_title(id, view));
    std::string out = "<!doctype html>\n<html>\n<head><meta charset=\"utf-8\"><title>" + title +
                      "</title></head>\n<body>\n<h1>" + title + "</h1>\n<ul class=\"links\">\n";
    for (const auto& link : links) {
        out += "<li><a rel=\"" + escape_html(link.rel) + "\" href=\"" + escape_html(link.href) +
               "\">" + escape_html(link.title.value_or(link.rel)) + "</a></li>\n";
    }
    out += "</ul>\n<pre>" + escape_html(view_data(view).dump(2)) + "</pre>\n</body>\n</html>\n";
    return out;
}

} // namespace

Representation render(const ResourceId& id, const ResourceView& view,
                      const std::string& media_type, std::vector<TypedLink> links,
                      std::time_t last_modified) {
    Representation rep;
    rep.media_type = media_type;
    rep.links = std::move(links);
    rep.last_modified = last_modified;

    if (media_type == kJson) {
        json link_array = json::array();
        for (const auto& link : rep.links) {
            json j{{"rel", link.rel}, {"href", link.href}};
            if (link.media_type) j["type"] = *link.media_type;
            if (link.title) j["title"] = *link.title;
            link_array.push_back(std::move(j));
        }
        rep.body = json{{"data", view_data(view)}, {"links", link_array}}.dump();
    } else if (media_type == kXml) {
        xml::Node root = view_to_xml(view);
        for (const auto& link : rep.links) {
            auto& node = root.add("link");
            node.set_attr("rel", link.rel);
            node.set_attr("href", link.href);
            if (link.media_type) node.set_attr("type", *link.media_type);
            if (link.title) node.set_attr("title", *link.title);
        }
        rep.body = xml::serialize(root);
    } else if (media_type == kHtml) {
        rep.body = render_html(id, view, rep.links);
    } else {
        throw std::invalid_argument("unsupported representation media type: " + media_type);
    }

    rep.etag = http::compute_etag(rep.body);
    return rep;
}

namespace {

void collect_xml_links(const xml::Node& node, std::vector<TypedLink>& out) {
    if (node.name == "link") {
        const std::string* rel = node.attr("rel");
        const std::string* href = node.attr("href");
        if (rel && href) {
            TypedLink link{*rel, *href, std::nullopt, std::nullopt};
            if (const std::string* type = node.attr("type")) link.media_type = *type;
            if (const std::string* title = node.attr("title")) link.title = *title;
            out.push_back(std::move(link));
        }
    }
    for (const auto& c : node.children) collect_xml_links(c, out);
}

} // namespace

std::vector<TypedLink> extract_links(const std::string& media_type, std::string_view body) {
    std::vector<TypedLink> out;
    std::string mt = util::to_lower(media_type);
    // parameters such as charset do not matter here
    if (auto semi = mt.find(';'); semi != std::string::npos) mt = util::trim(mt.substr(0, semi));

    if (mt == kJson) {
        json doc = json::parse(body, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) return out;
        auto links = doc.find("links");
        if (links == doc.end() || !links->is_array()) return out;
        for (const auto& j : *links) {
            if (!j.is_object() || !j.contains("rel") || !j["rel"].is_string() ||
                !j.contains("href") || !j["href"].is_string())
                continue;
            TypedLink link{j["rel"].get<std::string>(), j["href"].get<std::string>(),
                           std::nullopt, std::nullopt};
            if (j.contains("type") && j["type"].is_string())
                link.media_type = j["type"].get<std::string>();
            if (j.contains("title") && j["title"].is_string())
                link.title = j["title"].get<std::string>();
            out.push_back(std::move(link));
        }
        return out;
    }
    if (mt == kXml || mt == "text/xml") {
        try {
            collect_xml_links(xml::parse(body), out);
        } catch (const xml::ParseError&) {
        }
        return out;
    }
    if (mt == kHtml) {
        static const std::regex anchor(R"re(<a\s+([^>]*)>)re", std::regex::icase);
        static const std::regex rel_attr(R"re(rel="([^"]*)")re", std::regex::icase);
        static const std::regex href_attr(R"re(href="([^"]*)")re", std::regex::icase);
        auto begin = std::cregex_iterator(body.data(), body.data() + body.size(), anchor);
        for (auto it = begin; it != std::cregex_iterator(); ++it) {
            std::string attrs = (*it)[1].str();
            std::smatch href_m;
            if (!std::regex_search(attrs, href_m, href_attr)) continue;
            TypedLink link{"alternate", href_m[1].str(), std::nullopt, std::nullopt};
            std::smatch rel_m;
            if (std::regex_search(attrs, rel_m, rel_attr)) link.rel = rel_m[1].str();
            out.push_back(std::move(link));
        }
        return out;
    }
    return out;
}

} // namespace wpsgate::rest
