#ifndef WPSGATE_GATEWAY_SERVICE_HPP
#define WPSGATE_GATEWAY_SERVICE_HPP

#include "wpsgate/gateway/backend.hpp"
#include "wpsgate/gateway/catalog.hpp"
#include "wpsgate/gateway/job.hpp"
#include "wpsgate/http/message.hpp"
#include "wpsgate/http/semantics.hpp"
#include "wpsgate/rest/render.hpp"

#include <memory>
#include <optional>
#include <string>

namespace wpsgate::gateway {

struct Config {
    int port = 8080;
    std::string base_uri;    // absolute public base of this gateway
    std::string backend_url; // absolute URL of the backend endpoint
    int cache_ttl_seconds = 300;
    int retry_after_seconds = 30;
    std::optional<std::string> journal_path;
};

/// The mediator: a resource-oriented HTTP face over the backend's
/// operation-oriented protocol. Routing, verb discipline, negotiation,
/// cache validators and status mapping are composed here; the backend is
/// reached through the query-string binding for catalog reads and the
/// XML POST binding for executions.
class Service {
public:
    Service(Config config, BackendExchange backend);

    http::Response handle(const http::Request& req);

    JobStore& jobs() { return jobs_; }
    const Config& config() const { return config_; }

private:
    struct Problem {
        int status = 500;
        rest::ProblemView view;
        http::HeaderList headers;
    };

    http::Response respond(const http::Request& req, const rest::ResourceId& id,
                           const rest::ResourceView& view, std::vector<rest::TypedLink> links,
                           std::time_t last_modified, int status = 200,
                           http::HeaderList extra_headers = {}, bool stale_catalog = false);
    http::Response respond_problem(const http::Request& req, const Problem& problem);

    http::Response get_entry(const http::Request& req);
    http::Response get_processes(const http::Request& req);
    http::Response get_process(const http::Request& req, const std::string& pid);
    http::Response get_jobs(const http::Request& req, const std::optional<std::string>& scope);
    http::Response get_job(const http::Request& req, const std::string& jid);
    http::Response get_result(const http::Request& req, const std::string& jid);
    http::Response create_job(const http::Request& req, const std::string& pid);
    http::Response delete_job(const http::Request& req, const std::string& jid);

    CatalogCache::Snapshot catalog_or_throw();
    rest::LinkContext link_context(std::shared_ptr<const Catalog> catalog) const;
    Problem problem_from(const wps::ProtocolError& e) const;
    Problem problem_from(const wps::ExceptionReport& report) const;

    Config config_;
    BackendExchange backend_;
    std::string backend_path_;
    CatalogCache catalog_;
    JobStore jobs_;
    http::StatusMapping status_mapping_;
    std::time_t started_at_;
};

} // namespace wpsgate::gateway

#endif
