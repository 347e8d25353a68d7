#include "wpsgate/gateway/service.hpp"

#include "wpsgate/gateway/validate.hpp"
#include "wpsgate/http/cache.hpp"
#include "wpsgate/util.hpp"
#include "wpsgate/wps/json.hpp"
#include "wpsgate/wps/xml.hpp"

#include <algorithm>
#include <chrono>

namespace wpsgate::gateway {

using nlohmann::json;

namespace {

long long now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::time_t now_s() {
    return std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
}

std::string normalize_base(std::string base) {
    while (!base.empty() && base.back() == '/') base.pop_back();
    if (base.rfind("http://", 0) != 0 && base.rfind("https://", 0) != 0)
        throw std::invalid_argument("base URI must be absolute: " + base);
    return base;
}

} // namespace

Service::Service(Config config, BackendExchange backend)
    : config_(std::move(config)),
      backend_(std::move(backend)),
      backend_path_(parse_backend_url(config_.backend_url).path),
      catalog_(backend_, backend_path_,
               config_.cache_ttl_seconds > 0
                   ? config_.cache_ttl_seconds
                   : throw std::invalid_argument("cache TTL must be positive")),
      jobs_(config_.journal_path),
      status_mapping_(http::StatusMapping::defaults(config_.retry_after_seconds)),
      started_at_(now_s()) {
    config_.base_uri = normalize_base(config_.base_uri);
}

Service::Problem Service::problem_from(const wps::ProtocolError& e) const {
    Problem p;
    switch (e.kind()) {
    case wps::ErrorKind::missing_parameter:
        p.view.code = wps::kMissingParameterValue;
        p.status = 400;
        break;
    case wps::ErrorKind::invalid_parameter:
    case wps::ErrorKind::malformed_document:
    case wps::ErrorKind::schema_violation:
        p.view.code = wps::kInvalidParameterValue;
        p.status = 400;
        break;
    default:
        p.view.code = wps::kNoApplicableCode;
        p.status = 500;
        break;
    }
    if (!e.locator().empty()) p.view.locator = e.locator();
    p.view.text = e.what();
    p.view.status = p.status;
    return p;
}

Service::Problem Service::problem_from(const wps::ExceptionReport& report) const {
    http::MappedException mapped = http::map_exception(report, status_mapping_);
    Problem p;
    p.status = mapped.status;
    p.headers = mapped.headers;
    p.view.code = mapped.governing.code;
    p.view.locator = mapped.governing.locator;
    p.view.text = mapped.governing.text;
    p.view.status = mapped.status;
    return p;
}

CatalogCache::Snapshot Service::catalog_or_throw() { return catalog_.get(); }

rest::LinkContext Service::link_context(std::shared_ptr<const Catalog> catalog) const {
    rest::LinkContext ctx;
    if (catalog) {
        for (const auto& p : catalog->processes)
            ctx.processes.push_back({p.identifier, p.taxonomy_tags});
    }
    return ctx;
}

http::Response Service::respond(const http::Request& req, const rest::ResourceId& id,
                                const rest::ResourceView& view,
                                std::vector<rest::TypedLink> links, std::time_t last_modified,
                                int status, http::HeaderList extra_headers, bool stale_catalog) {
    auto media_type = rest::negotiate(
        req.header("Accept") ? std::optional<std::string>(*req.header("Accept")) : std::nullopt,
        rest::default_supported());
    if (!media_type) {
        Problem p;
        p.status = 406;
        p.view = {"NotAcceptable", std::nullopt,
                  "no supported representation matches the Accept header", 406};
        return respond_problem(req, p);
    }

    rest::Representation rep =
        rest::render(id, view, *media_type, std::move(links), last_modified);

    http::CacheDirective cache = http::cache_policy_for(id.kind);
    http::Response res;
    res.content_type = rep.media_type;
    res.set_header("Vary", "Accept");
    res.set_header("Cache-Control", cache.cache_control);
    if (cache.use_etag) res.set_header("ETag", rep.etag);
    if (cache.use_last_modified) res.set_header("Last-Modified", http::imf_fixdate(rep.last_modified));
    if (stale_catalog) res.set_header("Warning", "110 - \"stale catalog\"");
    for (auto& [k, v] : extra_headers) res.set_header(k, v);

    if (req.method == "GET" && status == 200) {
        auto inm = req.header("If-None-Match");
        auto ims = req.header("If-Modified-Since");
        if (http::evaluate_conditional(
                inm ? std::optional<std::string>(*inm) : std::nullopt,
                ims ? std::optional<std::string>(*ims) : std::nullopt, rep.etag,
                rep.last_modified) == http::Freshness::not_modified) {
            res.status = 304;
            res.body.clear();
            return res;
        }
    }

    res.status = status;
    res.body = rep.body;
    return res;
}

http::Response Service::respond_problem(const http::Request& req, const Problem& problem) {
    // problems are negotiable like everything else, but a body is always
    // produced: when nothing matches, the server-preferred JSON is used
    auto media_type = rest::negotiate(
        req.header("Accept") ? std::optional<std::string>(*req.header("Accept")) : std::nullopt,
        rest::default_supported());
    std::string mt = media_type.value_or(rest::kJson);

    rest::ResourceId id = rest::ResourceId::entry();
    std::vector<rest::TypedLink> links{
        {"up", rest::uri_for(rest::ResourceId::entry(), config_.base_uri), std::nullopt,
         std::nullopt}};
    // a problem tied to a specific process advertises alternatives
    if (problem.view.locator) {
        auto snap = catalog_.get_if_cached();
        if (snap) {
            rest::LinkContext ctx = link_context(snap);
            const wps::ProcessDescription* p = snap->find(*problem.view.locator);
            if (p) {
                for (auto& link :
                     rest::links_for(rest::ResourceId::process(p->identifier), ctx,
                                     config_.base_uri)) {
                    if (link.rel == "similar") links.push_back(link);
                }
            }
        }
    }

    rest::Representation rep =
        rest::render(id, rest::ResourceView(problem.view), mt, std::move(links), now_s());

    http::Response res;
    res.status = problem.status;
    res.content_type = rep.media_type;
    res.body = rep.body;
    res.set_header("Vary", "Accept");
    for (const auto& [k, v] : problem.headers) res.set_header(k, v);
    return res;
}

http::Response Service::handle(const http::Request& req) {
    auto id = rest::route(req.path);
    if (!id) {
        Problem p;
        p.status = 404;
        p.view = {"NotFound", req.path, "no resource at this path", 404};
        return respond_problem(req, p);
    }

    http::MethodDecision decision = http::method_guard(*id, req.method);
    if (!decision.allowed) {
        Problem p;
        p.status = 405;
        p.view = {"MethodNotAllowed", req.method,
                  "method " + req.method + " is not supported here", 405};
        p.headers.emplace_back("Allow", decision.allow);
        return respond_problem(req, p);
    }

    try {
        std::optional<std::string> scope = rest::scoped_process(req.path);
        switch (id->kind) {
        case rest::ResourceKind::entry:
            return get_entry(req);
        case rest::ResourceKind::process_collection:
            return get_processes(req);
        case rest::ResourceKind::process:
            return get_process(req, id->key.value());
        case rest::ResourceKind::job_collection:
            if (req.method == "POST") {
                if (!scope) {
                    Problem p;
                    p.status = 400;
                    p.view = {wps::kMissingParameterValue, "process",
                              "create jobs via POST /processes/{pid}/jobs", 400};
                    return respond_problem(req, p);
                }
                return create_job(req, *scope);
            }
            return get_jobs(req, scope);
        case rest::ResourceKind::job:
            if (req.method == "DELETE") return delete_job(req, id->key.value());
            return get_job(req, id->key.value());
        case rest::ResourceKind::job_result:
            return get_result(req, id->key.value());
        }
    } catch (const BackendUnavailable& e) {
        Problem p;
        p.status = 503;
        p.view = {"BackendUnavailable", std::nullopt, e.what(), 503};
        p.headers.emplace_back("Retry-After", std::to_string(config_.retry_after_seconds));
        return respond_problem(req, p);
    } catch (const wps::ProtocolError& e) {
        return respond_problem(req, problem_from(e));
    } catch (const std::exception& e) {
        Problem p;
        p.status = 500;
        p.view = {wps::kNoApplicableCode, std::nullopt, e.what(), 500};
        return respond_problem(req, p);
    }
    Problem p;
    p.status = 500;
    p.view = {wps::kNoApplicableCode, std::nullopt, "unroutable request", 500};
    return respond_problem(req, p);
}

http::Response Service::get_entry(const http::Request& req) {
    rest::EntryView view{"Geoprocessing Gateway"};
    auto links = rest::links_for(rest::ResourceId::entry(), {}, config_.base_uri);
    return respond(req, rest::ResourceId::entry(), view, std::move(links), started_at_);
}

http::Response Service::get_processes(const http::Request& req) {
    auto snap = catalog_or_throw();
    rest::ProcessListView view{snap.catalog->capabilities.title,
                               snap.catalog->capabilities.provider,
                               snap.catalog->capabilities.process_briefs};
    auto links = rest::links_for(rest::ResourceId::process_collection(),
                                 link_context(snap.catalog), config_.base_uri);
    return respond(req, rest::ResourceId::process_collection(), view, std::move(links),
                   snap.catalog->fetched_at, 200, {}, snap.stale);
}

http::Response Service::get_process(const http::Request& req, const std::string& pid) {
    auto snap = catalog_or_throw();
    const wps::ProcessDescription* desc = snap.catalog->find(pid);
    if (!desc) {
        Problem p;
        p.status = 404;
        p.view = {"NotFound", pid, "unknown process: " + pid, 404};
        return respond_problem(req, p);
    }
    rest::ProcessView view{*desc};
    auto links = rest::links_for(rest::ResourceId::process(pid), link_context(snap.catalog),
                                 config_.base_uri);
    return respond(req, rest::ResourceId::process(pid), view, std::move(links),
                   snap.catalog->fetched_at, 200, {}, snap.stale);
}

http::Response Service::get_jobs(const http::Request& req,
                                 const std::optional<std::string>& scope) {
    std::vector<Job> all = jobs_.list();
    rest::JobListView view;
    rest::LinkContext ctx;
    std::time_t last_modified = started_at_;
    for (const auto& job : all) {
        if (scope && job.process_id != *scope) continue;
        view.jobs.push_back({job.id, job.process_id, job.status});
        ctx.job_ids.push_back(job.id);
        last_modified = std::max(last_modified, static_cast<std::time_t>(job.updated_ms / 1000));
    }

    auto links = rest::links_for(rest::ResourceId::job_collection(), ctx, config_.base_uri);
    if (scope) {
        // the scoped alias answers with its own URI as self and the
        // process as parent
        std::string scoped =
            rest::uri_for(rest::ResourceId::process(*scope), config_.base_uri) + "/jobs";
        for (auto& link : links) {
            if (link.rel == "self") link.href = scoped;
            if (link.rel == "up")
                link.href = rest::uri_for(rest::ResourceId::process(*scope), config_.base_uri);
        }
    }
    return respond(req, rest::ResourceId::job_collection(), view, std::move(links),
                   last_modified);
}

http::Response Service::get_job(const http::Request& req, const std::string& jid) {
    auto job = jobs_.get(jid);
    if (!job) {
        Problem p;
        p.status = 404;
        p.view = {"NotFound", jid, "unknown job: " + jid, 404};
        return respond_problem(req, p);
    }

    rest::JobView view{job->id, job->process_id, job->status, job->created_ms, job->updated_ms,
                       job->exception && !job->exception->entries.empty()
                           ? std::optional<wps::ExceptionEntry>(job->exception->entries.front())
                           : std::nullopt};

    rest::LinkContext ctx;
    if (auto snap = catalog_.get_if_cached()) ctx = link_context(snap);
    ctx.job_phase = job->status;
    ctx.job_process = job->process_id;
    auto links = rest::links_for(rest::ResourceId::job(jid), ctx, config_.base_uri);
    return respond(req, rest::ResourceId::job(jid), view, std::move(links),
                   static_cast<std::time_t>(job->updated_ms / 1000));
}

http::Response Service::get_result(const http::Request& req, const std::string& jid) {
    auto job = jobs_.get(jid);
    if (!job || !job->result) {
        Problem p;
        p.status = 404;
        p.view = {"NotFound", jid,
                  job ? "job has no result (status " + rest::to_string(job->status) + ")"
                      : "unknown job: " + jid,
                  404};
        return respond_problem(req, p);
    }

    const wps::ExecuteResult& result = *job->result;
    std::time_t last_modified = static_cast<std::time_t>(job->updated_ms / 1000);

    // negotiate among the output's native format and the JSON envelope
    std::vector<std::string> supported;
    std::string native_body;
    std::string native_type;
    if (result.outputs.size() == 1) {
        const wps::DataValue& value = result.outputs.front().second;
        if (const auto* lit = std::get_if<wps::LiteralValue>(&value)) {
            native_type = rest::kPlain;
            native_body = lit->text;
        } else if (const auto* cpx = std::get_if<wps::ComplexValue>(&value)) {
            if (cpx->href) {
                http::Response res;
                res.status = 303;
                res.set_header("Location", *cpx->href);
                res.content_type = "text/plain";
                res.body = "see " + *cpx->href;
                return res;
            }
            native_type = cpx->media_type;
            native_body = *cpx->body;
        }
    }
    if (!native_type.empty() && native_type != rest::kJson) supported.push_back(native_type);
    supported.push_back(rest::kJson);

    auto media_type = rest::negotiate(
        req.header("Accept") ? std::optional<std::string>(*req.header("Accept")) : std::nullopt,
        supported);
    if (!media_type) {
        Problem p;
        p.status = 406;
        p.view = {"NotAcceptable", std::nullopt,
                  "result is available as " + supported.front() + " or application/json", 406};
        return respond_problem(req, p);
    }

    http::CacheDirective cache = http::cache_policy_for(rest::ResourceKind::job_result);
    http::Response res;
    if (*media_type == rest::kJson && (native_type.empty() || native_type != rest::kJson)) {
        rest::ResultView view{result};
        auto links = rest::links_for(rest::ResourceId::job_result(jid),
                                     rest::LinkContext{{}, {}, job->status, job->process_id},
                                     config_.base_uri);
        return respond(req, rest::ResourceId::job_result(jid), view, std::move(links),
                       last_modified);
    }
    res.body = native_body;
    res.content_type = native_type.empty() ? rest::kJson : native_type;
    res.set_header("Vary", "Accept");
    res.set_header("Cache-Control", cache.cache_control);
    std::string etag = http::compute_etag(res.body);
    res.set_header("ETag", etag);
    res.set_header("Last-Modified", http::imf_fixdate(last_modified));

    auto inm = req.header("If-None-Match");
    auto ims = req.header("If-Modified-Since");
    if (http::evaluate_conditional(inm ? std::optional<std::string>(*inm) : std::nullopt,
                                   ims ? std::optional<std::string>(*ims) : std::nullopt, etag,
                                   last_modified) == http::Freshness::not_modified) {
        res.status = 304;
        res.body.clear();
        return res;
    }
    res.status = 200;
    return res;
}

http::Response Service::create_job(const http::Request& req, const std::string& pid) {
    auto snap = catalog_or_throw();
    const wps::ProcessDescription* desc = snap.catalog->find(pid);
    if (!desc) {
        Problem p;
        p.status = 404;
        p.view = {"NotFound", pid, "unknown process: " + pid, 404};
        return respond_problem(req, p);
    }

    json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
    if (body.is_discarded()) {
        Problem p;
        p.status = 400;
        p.view = {wps::kInvalidParameterValue, "body", "request body is not JSON", 400};
        return respond_problem(req, p);
    }

    std::vector<wps::NamedValue> inputs =
        validate_inputs(parse_job_submission(body, desc->inputs), desc->inputs);

    Job job;
    job.id = util::random_token();
    job.process_id = pid;
    job.inputs = inputs;
    job.status = rest::JobPhase::accepted;
    job.created_ms = now_ms();
    job.updated_ms = job.created_ms;
    jobs_.upsert(job);

    job.status = rest::JobPhase::running;
    job.updated_ms = now_ms();
    jobs_.upsert(job);

    wps::ExecuteRequest execute{pid, std::move(inputs), wps::ResponseForm::by_value};
    http::Request backend_req;
    backend_req.method = "POST";
    backend_req.path = backend_path_;
    backend_req.headers.emplace_back("Content-Type", "application/xml");
    backend_req.body = wps::encode_xml(execute);

    auto fail = [&](const wps::ExceptionReport& report) {
        job.status = rest::JobPhase::failed;
        job.exception = report;
        job.updated_ms = now_ms();
        jobs_.upsert(job);
    };

    http::Response backend_res;
    try {
        backend_res = backend_(backend_req);
    } catch (const BackendUnreachable& e) {
        fail({{{wps::kNoApplicableCode, std::nullopt, e.what()}}});
        Problem p;
        p.status = 502;
        p.view = {"BackendUnreachable", std::nullopt, e.what(), 502};
        return respond_problem(req, p);
    }

    wps::ExecuteOutcome outcome;
    try {
        outcome = wps::parse_execute_response(backend_res.body);
    } catch (const wps::ProtocolError& e) {
        fail({{{wps::kNoApplicableCode, std::nullopt, e.what()}}});
        Problem p;
        p.status = 502;
        p.view = {"BadBackendResponse", std::nullopt, e.what(), 502};
        return respond_problem(req, p);
    }

    if (const auto* report = std::get_if<wps::ExceptionReport>(&outcome)) {
        fail(*report);
        return respond_problem(req, problem_from(*report));
    }

    job.status = rest::JobPhase::succeeded;
    job.result = std::get<wps::ExecuteResult>(std::move(outcome));
    job.updated_ms = now_ms();
    jobs_.upsert(job);

    rest::JobView view{job.id, job.process_id, job.status, job.created_ms, job.updated_ms,
                       std::nullopt};
    rest::LinkContext ctx = link_context(snap.catalog);
    ctx.job_phase = job.status;
    ctx.job_process = job.process_id;
    auto links = rest::links_for(rest::ResourceId::job(job.id), ctx, config_.base_uri);
    http::HeaderList extra{
        {"Location", rest::uri_for(rest::ResourceId::job(job.id), config_.base_uri)}};
    return respond(req, rest::ResourceId::job(job.id), view, std::move(links),
                   static_cast<std::time_t>(job.updated_ms / 1000), 201, std::move(extra));
}

http::Response Service::delete_job(const http::Request& req, const std::string& jid) {
    if (!jobs_.erase(jid)) {
        Problem p;
        p.status = 404;
        p.view = {"NotFound", jid, "unknown job: " + jid, 404};
        return respond_problem(req, p);
    }
    http::Response res;
    res.status = 204;
    res.body.clear();
    res.content_type = "text/plain";
    return res;
}

} // namespace wpsgate::gateway
