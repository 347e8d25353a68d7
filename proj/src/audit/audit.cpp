#include "wpsgate/audit/audit.hpp"

#include "wpsgate/rest/render.hpp"
#include "wpsgate/util.hpp"
#include "wpsgate/wps/xml.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>

namespace wpsgate::audit {

using nlohmann::json;

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::partial: return "partial";
    case Verdict::no: return "no";
    case Verdict::error: return "error";
    case Verdict::not_probed: return "not-probed";
    }
    return "error";
}

std::optional<Verdict> verdict_from(std::string_view name) {
    if (name == "yes") return Verdict::yes;
    if (name == "partial") return Verdict::partial;
    if (name == "no") return Verdict::no;
    if (name == "error") return Verdict::error;
    if (name == "not-probed") return Verdict::not_probed;
    return std::nullopt;
}

int verdict_rank(Verdict v) {
    switch (v) {
    case Verdict::no: return 0;
    case Verdict::partial: return 1;
    case Verdict::yes: return 2;
    default: return -1;
    }
}

std::optional<EntryStyle> entry_style_from(std::string_view name) {
    if (name == "auto") return EntryStyle::auto_detect;
    if (name == "raw-wps") return EntryStyle::raw_wps;
    if (name == "resource") return EntryStyle::resource;
    return std::nullopt;
}

std::map<std::string, int> ComplianceReport::counts() const {
    std::map<std::string, int> out;
    for (const auto& c : checks) ++out[to_string(c.verdict)];
    return out;
}

const ComplianceCheck* ComplianceReport::find(std::string_view check_id) const {
    for (const auto& c : checks) {
        if (c.check_id == check_id) return &c;
    }
    return nullptr;
}

namespace {

struct Exchange {
    int status = 0;
    std::string body;
    std::string content_type;
    httplib::Headers headers;

    std::optional<std::string> header(const std::string& name) const {
        auto it = headers.find(name);
        if (it == headers.end()) return std::nullopt;
        return it->second;
    }
};

std::string strip_params(std::string mt) {
    if (auto semi = mt.find(';'); semi != std::string::npos) mt = mt.substr(0, semi);
    return util::trim(util::to_lower(mt));
}

class Session {
public:
    Session(std::string target, int timeout_seconds)
        : target_(std::move(target)), timeout_(timeout_seconds) {
        if (auto split = util::split_url(target_)) {
            root_ = split->root;
            path_ = split->path;
        }
    }

    bool valid() const { return !root_.empty(); }
    const std::string& target() const { return target_; }

    /// Query string appended to the target with the right separator.
    std::string target_with_query(const std::string& query) const {
        return target_ + (path_.find('?') == std::string::npos ? "?" : "&") + query;
    }

    std::optional<Exchange> request(const std::string& method, const std::string& url,
                                    const httplib::Headers& headers = {},
                                    const std::string& body = "",
                                    const std::string& content_type = "") {
        auto split = util::split_url(url);
        if (!split) return std::nullopt;
        httplib::Client client(split->root);
        client.set_connection_timeout(timeout_);
        client.set_read_timeout(timeout_);

        httplib::Result result;
        if (method == "GET") {
            result = client.Get(split->path, headers);
        } else if (method == "POST") {
            result = client.Post(split->path, headers, body, content_type);
        } else if (method == "DELETE") {
            result = client.Delete(split->path, headers);
        } else if (method == "PATCH") {
            result = client.Patch(split->path, headers, body, content_type);
        } else {
            return std::nullopt;
        }
        if (!result) return std::nullopt;

        Exchange ex;
        ex.status = result->status;
        ex.body = result->body;
        ex.headers = result->headers;
        if (auto ct = ex.header("Content-Type")) ex.content_type = strip_params(*ct);
        return ex;
    }

    std::optional<Exchange> get(const std::string& url, const httplib::Headers& headers = {}) {
        return request("GET", url, headers);
    }

    /// Resolve a link href against the target's root.
    std::string resolve(const std::string& href) const {
        if (href.rfind("http://", 0) == 0 || href.rfind("https://", 0) == 0) return href;
        if (!href.empty() && href.front() == '/') return root_ + href;
        return root_ + "/" + href;
    }

private:
    std::string target_;
    std::string root_;
    std::string path_;
    int timeout_;
};

std::string brief(const std::string& method, const std::string& url, const Exchange& ex) {
    std::ostringstream out;
    out << method << " " << url << " -> " << ex.status;
    if (!ex.content_type.empty()) out << " (" << ex.content_type << ")";
    return out.str();
}

bool looks_like_capabilities(const Exchange& ex) {
    try {
        wps::parse_capabilities(ex.body);
        return true;
    } catch (const wps::ProtocolError&) {
        return false;
    }
}

bool looks_like_wps_document(const Exchange& ex) {
    try {
        xml::Node root = xml::parse(ex.body);
        return root.name == "Capabilities" || root.name == "ProcessDescriptions" ||
               root.name == "ExecuteResponse" || root.name == "ExceptionReport";
    } catch (const xml::ParseError&) {
        return false;
    }
}

bool looks_like_exception_report(const Exchange& ex) {
    try {
        wps::parse_exception_report(ex.body);
        return true;
    } catch (const wps::ProtocolError&) {
        return false;
    }
}

std::vector<rest::TypedLink> links_of(const Exchange& ex) {
    return rest::extract_links(ex.content_type.empty() ? "application/json" : ex.content_type,
                               ex.body);
}

bool looks_like_process_representation(const Exchange& ex) {
    if (ex.content_type == "application/json") {
        json doc = json::parse(ex.body, nullptr, false);
        if (doc.is_discarded() || !doc.is_object() || !doc.contains("data")) return false;
        const json& data = doc["data"];
        return data.is_object() && data.contains("inputs") && data.contains("outputs") &&
               data.contains("id");
    }
    if (ex.content_type == "application/xml" || ex.content_type == "text/xml") {
        try {
            xml::Node root = xml::parse(ex.body);
            return root.name == "ProcessDescriptions" || root.child("ProcessDescription");
        } catch (const xml::ParseError&) {
            return false;
        }
    }
    return false;
}

struct ProbeContext {
    Session& session;
    EntryStyle style; // resolved, never auto
};

ComplianceCheck make_check(const char* id, const char* row, const char* description) {
    ComplianceCheck c;
    c.check_id = id;
    c.table_row = row;
    c.probe_description = description;
    return c;
}

ComplianceCheck probe_cache(ProbeContext& ctx) {
    ComplianceCheck check = make_check(
        "cache", "Cache", "response carries validators and honors conditional requests");
    auto first = ctx.session.get(ctx.session.target());
    if (!first) {
        check.verdict = Verdict::error;
        check.evidence.push_back("GET " + ctx.session.target() + " failed");
        return check;
    }
    auto etag = first->header("ETag");
    auto last_modified = first->header("Last-Modified");
    auto cache_control = first->header("Cache-Control");
    check.evidence.push_back(brief("GET", ctx.session.target(), *first));
    check.evidence.push_back(std::string("ETag: ") + (etag ? *etag : "absent") +
                             "; Last-Modified: " + (last_modified ? *last_modified : "absent") +
                             "; Cache-Control: " + (cache_control ? *cache_control : "absent"));
    if (!etag && !last_modified && !cache_control) {
        check.verdict = Verdict::no;
        return check;
    }

    bool revalidated = false;
    if (etag) {
        auto second = ctx.session.get(ctx.session.target(), {{"If-None-Match", *etag}});
        if (second) {
            revalidated = second->status == 304;
            check.evidence.push_back("conditional GET (If-None-Match) -> " +
                                     std::to_string(second->status));
        }
    } else if (last_modified) {
        auto second =
            ctx.session.get(ctx.session.target(), {{"If-Modified-Since", *last_modified}});
        if (second) {
            revalidated = second->status == 304;
            check.evidence.push_back("conditional GET (If-Modified-Since) -> " +
                                     std::to_string(second->status));
        }
    }
    check.verdict = revalidated ? Verdict::yes : Verdict::partial;
    return check;
}

ComplianceCheck probe_uniform_interface(ProbeContext& ctx) {
    ComplianceCheck check =
        make_check("uniform_interface", "Uniform interface",
                   "no operation tunneling; verbs carry the semantics; 405 with Allow");

    std::string tunneled_url =
        ctx.session.target_with_query("service=WPS&request=GetCapabilities");
    auto tunneled = ctx.session.get(tunneled_url);
    bool tunneling = tunneled && looks_like_capabilities(*tunneled);
    if (tunneled)
        check.evidence.push_back(brief("GET", tunneled_url, *tunneled) +
                                 (tunneling ? " [operation interpreted]" : " [not interpreted]"));

    std::string caps_body = wps::encode_xml(wps::GetCapabilitiesRequest{});
    auto posted = ctx.session.request("POST", ctx.session.target(), {}, caps_body,
                                      "application/xml");
    bool post_read = posted && posted->status == 200 && looks_like_capabilities(*posted);
    if (posted)
        check.evidence.push_back(brief("POST", ctx.session.target(), *posted) +
                                 (post_read ? " [read via POST]" : " [rejected]"));

    auto deleted = ctx.session.request("DELETE", ctx.session.target());
    bool disciplined = deleted && deleted->status == 405 && deleted->header("Allow").has_value();
    if (deleted)
        check.evidence.push_back(
            brief("DELETE", ctx.session.target(), *deleted) +
            (disciplined ? " [Allow: " + *deleted->header("Allow") + "]" : " [no 405/Allow]"));

    if (!tunneled || !posted || !deleted) {
        check.verdict = Verdict::error;
        return check;
    }
    int good = (!tunneling ? 1 : 0) + (!post_read ? 1 : 0) + (disciplined ? 1 : 0);
    check.verdict = good == 3 ? Verdict::yes : (good == 0 ? Verdict::no : Verdict::partial);
    return check;
}

// Process discovery, shared by identification / hypermedia / safety.
struct Discovery {
    std::vector<std::string> process_urls; // dereferenceable URIs
    std::vector<std::string> evidence;
    bool via_links = false;
};

Discovery discover_processes(ProbeContext& ctx) {
    Discovery d;
    if (ctx.style == EntryStyle::raw_wps) {
        std::string caps_url =
            ctx.session.target_with_query("service=WPS&request=GetCapabilities");
        auto caps = ctx.session.get(caps_url);
        if (!caps || !looks_like_capabilities(*caps)) return d;
        auto parsed = wps::parse_capabilities(caps->body);
        for (const auto& brief_entry : parsed.process_briefs) {
            d.process_urls.push_back(ctx.session.target_with_query(
                "service=WPS&request=DescribeProcess&identifier=" +
                util::pct_encode(brief_entry.identifier)));
        }
        d.evidence.push_back("capabilities list " + std::to_string(d.process_urls.size()) +
                             " processes (query-addressed)");
        return d;
    }

    auto entry = ctx.session.get(ctx.session.target());
    if (!entry) return d;
    auto entry_links = links_of(*entry);
    if (entry_links.empty()) return d;
    d.via_links = true;

    std::set<std::string> seen;
    for (const auto& top : entry_links) {
        if (top.rel != "collection") continue;
        auto coll = ctx.session.get(ctx.session.resolve(top.href));
        if (!coll) continue;
        for (const auto& link : links_of(*coll)) {
            if (link.rel != "item") continue;
            std::string url = ctx.session.resolve(link.href);
            auto rep = ctx.session.get(url);
            if (rep && rep->status / 100 == 2 && looks_like_process_representation(*rep) &&
                seen.insert(url).second) {
                d.process_urls.push_back(url);
            }
        }
    }
    d.evidence.push_back("link crawl found " + std::to_string(d.process_urls.size()) +
                         " process resources");
    return d;
}

ComplianceCheck probe_identification(ProbeContext& ctx) {
    ComplianceCheck check =
        make_check("identification", "Identification of resources",
                   "distinct dereferenceable URIs per process; canonical navigable entry");

    Discovery d = discover_processes(ctx);
    check.evidence.insert(check.evidence.end(), d.evidence.begin(), d.evidence.end());

    bool distinct = false;
    if (!d.process_urls.empty()) {
        std::set<std::string> unique(d.process_urls.begin(), d.process_urls.end());
        distinct = unique.size() == d.process_urls.size();
        size_t dereferenced = 0;
        for (const auto& url : d.process_urls) {
            auto rep = ctx.session.get(url);
            if (rep && rep->status / 100 == 2) ++dereferenced;
        }
        distinct = distinct && dereferenced == d.process_urls.size();
        check.evidence.push_back(std::to_string(dereferenced) + "/" +
                                 std::to_string(d.process_urls.size()) +
                                 " process URIs dereference with 2xx");
    }

    auto entry = ctx.session.get(ctx.session.target());
    bool canonical = false;
    if (entry) {
        canonical = entry->status / 100 == 2 && !links_of(*entry).empty();
        check.evidence.push_back(brief("GET", ctx.session.target(), *entry) +
                                 (canonical ? " [navigable entry]" : " [no links to follow]"));
    }

    if (!entry && d.process_urls.empty()) {
        check.verdict = Verdict::error;
        return check;
    }
    check.verdict = distinct && canonical ? Verdict::yes
                   : distinct || canonical ? Verdict::partial
                                           : Verdict::no;
    return check;
}

ComplianceCheck probe_negotiation(ProbeContext& ctx) {
    ComplianceCheck check =
        make_check("negotiation", "Representation / content negotiation",
                   "Accept steers the representation; unsupported types answered 406");

    const char* wanted[] = {"application/json", "application/xml", "text/html"};
    int honored = 0;
    for (const char* accept : wanted) {
        auto res = ctx.session.get(ctx.session.target(), {{"Accept", accept}});
        if (!res) {
            check.verdict = Verdict::error;
            check.evidence.push_back(std::string("GET with Accept: ") + accept + " failed");
            return check;
        }
        bool match = res->content_type == accept;
        if (match) ++honored;
        check.evidence.push_back(std::string("Accept: ") + accept + " -> " +
                                 std::to_string(res->status) + " " + res->content_type);
    }
    auto bogus = ctx.session.get(ctx.session.target(), {{"Accept", "image/png"}});
    bool got_406 = bogus && bogus->status == 406;
    if (bogus)
        check.evidence.push_back("Accept: image/png -> " + std::to_string(bogus->status));

    if (honored == 3 && got_406) {
        check.verdict = Verdict::yes;
    } else if (honored == 0 && !got_406) {
        check.verdict = Verdict::no;
    } else {
        check.verdict = Verdict::partial;
    }
    return check;
}

ComplianceCheck probe_hypermedia(ProbeContext& ctx) {
    ComplianceCheck check =
        make_check("hypermedia", "Hypermedia",
                   "embedded typed links lead from the entry to the processes");

    auto entry = ctx.session.get(ctx.session.target());
    if (!entry) {
        check.verdict = Verdict::error;
        check.evidence.push_back("GET " + ctx.session.target() + " failed");
        return check;
    }
    auto start_links = links_of(*entry);
    check.evidence.push_back(brief("GET", ctx.session.target(), *entry) + " with " +
                             std::to_string(start_links.size()) + " links");
    if (start_links.empty()) {
        check.verdict = Verdict::no;
        return check;
    }

    // breadth-first link closure, three hops deep
    std::set<std::string> visited{ctx.session.target()};
    std::vector<std::string> frontier;
    for (const auto& link : start_links) frontier.push_back(ctx.session.resolve(link.href));
    int processes_reached = 0;
    for (int hop = 1; hop <= 3 && !frontier.empty(); ++hop) {
        std::vector<std::string> next;
        for (const auto& url : frontier) {
            if (!visited.insert(url).second) continue;
            auto rep = ctx.session.get(url);
            if (!rep || rep->status / 100 != 2) continue;
            if (looks_like_process_representation(*rep)) ++processes_reached;
            for (const auto& link : links_of(*rep)) next.push_back(ctx.session.resolve(link.href));
        }
        frontier = std::move(next);
    }
    check.evidence.push_back("crawl reached " + std::to_string(processes_reached) +
                             " process resources within 3 hops");
    check.verdict = processes_reached > 0 ? Verdict::yes : Verdict::partial;
    return check;
}

ComplianceCheck probe_status_codes(ProbeContext& ctx) {
    ComplianceCheck check =
        make_check("status_codes", "Exception handling / status codes",
                   "an induced client error answers with a 4xx status");

    std::string url;
    if (ctx.style == EntryStyle::raw_wps) {
        url = ctx.session.target_with_query("service=WPS"); // request parameter missing
    } else {
        auto split = util::split_url(ctx.session.target());
        url = (split ? split->root : ctx.session.target()) +
              "/processes/__wpsgate_audit_missing__";
    }
    auto res = ctx.session.get(url);
    if (!res) {
        check.verdict = Verdict::error;
        check.evidence.push_back("GET " + url + " failed");
        return check;
    }
    check.evidence.push_back(brief("GET", url, *res));
    if (res->status >= 400 && res->status < 500) {
        check.verdict = Verdict::yes;
    } else if (res->status == 200 && looks_like_exception_report(*res)) {
        check.evidence.push_back("exception document delivered with status 200");
        check.verdict = Verdict::no;
    } else {
        check.verdict = Verdict::partial;
    }
    return check;
}

ComplianceCheck probe_safety(ProbeContext& ctx) {
    ComplianceCheck check = make_check(
        "safety", "Safety of GET", "GET never executes operations or changes server state");

    // does the endpoint route an execute operation arriving via GET?
    std::string pid;
    if (ctx.style == EntryStyle::raw_wps) {
        auto caps = ctx.session.get(
            ctx.session.target_with_query("service=WPS&request=GetCapabilities"));
        if (caps && looks_like_capabilities(*caps)) {
            auto parsed = wps::parse_capabilities(caps->body);
            if (!parsed.process_briefs.empty()) pid = parsed.process_briefs.front().identifier;
        }
    }
    if (pid.empty()) pid = "urn:audit:probe";
    std::string exec_url = ctx.session.target_with_query(
        "service=WPS&request=Execute&identifier=" + util::pct_encode(pid));
    auto exec_res = ctx.session.get(exec_url);
    if (!exec_res) {
        check.verdict = Verdict::error;
        check.evidence.push_back("GET " + exec_url + " failed");
        return check;
    }
    bool tunneled_execute = looks_like_wps_document(*exec_res);
    check.evidence.push_back(brief("GET", exec_url, *exec_res) +
                             (tunneled_execute ? " [execute accepted over GET]"
                                               : " [not interpreted]"));
    if (tunneled_execute) {
        check.verdict = Verdict::no;
        return check;
    }

    if (ctx.style == EntryStyle::raw_wps) {
        check.evidence.push_back("no state-revealing view advertised; capability absent");
        check.verdict = Verdict::no;
        return check;
    }

    // state-revealing view: the jobs collection, found by link relation
    auto entry = ctx.session.get(ctx.session.target());
    std::string jobs_url;
    if (entry) {
        for (const auto& link : links_of(*entry)) {
            if (link.rel == "collection" && link.title.value_or("") == "jobs")
                jobs_url = ctx.session.resolve(link.href);
        }
    }
    if (jobs_url.empty()) {
        check.evidence.push_back("no jobs collection advertised; state comparison skipped");
        check.verdict = Verdict::partial;
        return check;
    }

    auto before = ctx.session.get(jobs_url);
    for (int i = 0; i < 5; ++i) {
        ctx.session.get(ctx.session.target());
        ctx.session.get(jobs_url);
    }
    auto after = ctx.session.get(jobs_url);
    if (!before || !after) {
        check.verdict = Verdict::error;
        return check;
    }
    bool unchanged = before->body == after->body;
    check.evidence.push_back(std::string("jobs view after GET storm: ") +
                             (unchanged ? "unchanged" : "CHANGED"));
    check.verdict = unchanged ? Verdict::yes : Verdict::no;
    return check;
}

std::string iso_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

} // namespace

ComplianceReport run_audit(const std::string& target, const AuditOptions& options) {
    ComplianceReport report;
    report.target = target;
    report.timestamp = iso_timestamp();

    Session session(target, options.timeout_seconds);

    auto informational = [&report] {
        ComplianceCheck layered = make_check("layered_approach", "Layered approach",
                                             "no observable remote probe; informational row");
        layered.verdict = Verdict::not_probed;
        layered.evidence.push_back("assessed by design review, not by probing");
        report.checks.push_back(layered);

        ComplianceCheck cod = make_check("code_on_demand", "Code-on-demand",
                                         "no observable remote probe; informational row");
        cod.verdict = Verdict::not_probed;
        cod.evidence.push_back("assessed by design review, not by probing");
        report.checks.push_back(cod);
    };

    auto first_contact = session.valid() ? session.get(target) : std::nullopt;
    if (!first_contact) {
        report.style = "unknown";
        const char* ids[][2] = {
            {"cache", "Cache"},
            {"uniform_interface", "Uniform interface"},
            {"identification", "Identification of resources"},
            {"negotiation", "Representation / content negotiation"},
            {"hypermedia", "Hypermedia"},
            {"status_codes", "Exception handling / status codes"},
            {"safety", "Safety of GET"},
        };
        for (const auto& [id, row] : ids) {
            ComplianceCheck c = make_check(id, row, "not run");
            c.verdict = Verdict::error;
            c.evidence.push_back("target unreachable on first contact");
            report.checks.push_back(c);
        }
        informational();
        return report;
    }

    EntryStyle style = options.style;
    if (style == EntryStyle::auto_detect) {
        auto tunneled =
            session.get(session.target_with_query("service=WPS&request=GetCapabilities"));
        style = (tunneled && looks_like_capabilities(*tunneled)) ? EntryStyle::raw_wps
                                                                 : EntryStyle::resource;
    }
    report.style = style == EntryStyle::raw_wps ? "raw-wps" : "resource";

    ProbeContext ctx{session, style};
    report.checks.push_back(probe_cache(ctx));
    report.checks.push_back(probe_uniform_interface(ctx));
    report.checks.push_back(probe_identification(ctx));
    report.checks.push_back(probe_negotiation(ctx));
    report.checks.push_back(probe_hypermedia(ctx));
    report.checks.push_back(probe_status_codes(ctx));
    report.checks.push_back(probe_safety(ctx));
    informational();
    return report;
}

std::string render_report(const ComplianceReport& report, const std::string& format) {
    if (format == "json") {
        json checks = json::array();
        for (const auto& c : report.checks) {
            checks.push_back({{"check_id", c.check_id},
                              {"table_row", c.table_row},
                              {"probe", c.probe_description},
                              {"verdict", to_string(c.verdict)},
                              {"evidence", c.evidence}});
        }
        json doc{{"target", report.target},
                 {"style", report.style},
                 {"timestamp", report.timestamp},
                 {"checks", checks},
                 {"counts", report.counts()}};
        return doc.dump(2) + "\n";
    }
    if (format != "table") throw std::invalid_argument("unknown report format: " + format);

    std::ostringstream out;
    out << "Compliance audit: " << report.target << "  (style: " << report.style << ", "
        << report.timestamp << ")\n\n";
    char line[256];
    std::snprintf(line, sizeof(line), "%-20s %-38s %-10s %s\n", "check", "row", "verdict",
                  "evidence");
    out << line;
    out << std::string(110, '-') << "\n";
    for (const auto& c : report.checks) {
        std::string evidence;
        for (size_t i = 0; i < c.evidence.size(); ++i) {
            if (i) evidence += "; ";
            evidence += c.evidence[i];
        }
        std::snprintf(line, sizeof(line), "%-20s %-38s %-10s ", c.check_id.c_str(),
                      c.table_row.c_str(), to_string(c.verdict).c_str());
        out << line << evidence << "\n";
    }
    out << "\ntotals:";
    for (const auto& [verdict, count] : report.counts()) out << " " << verdict << "=" << count;
    out << "\n";
    return out.str();
}

ComplianceReport parse_report_json(std::string_view bytes) try {
    json doc = json::parse(bytes, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw std::invalid_argument("not a report document");
    ComplianceReport report;
    report.target = doc.value("target", "");
    report.style = doc.value("style", "");
    report.timestamp = doc.value("timestamp", "");
    if (doc.contains("checks")) {
        for (const auto& j : doc["checks"]) {
            ComplianceCheck c;
            c.check_id = j.value("check_id", "");
            c.table_row = j.value("table_row", "");
            c.probe_description = j.value("probe", "");
            auto v = verdict_from(j.value("verdict", ""));
            if (!v) throw std::invalid_argument("unknown verdict in report");
            c.verdict = *v;
            if (j.contains("evidence")) {
                for (const auto& e : j["evidence"]) c.evidence.push_back(e.get<std::string>());
            }
            report.checks.push_back(std::move(c));
        }
    }
    return report;
} catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
}

} // namespace wpsgate::audit
