#ifndef WPSGATE_REST_RESOURCE_HPP
#define WPSGATE_REST_RESOURCE_HPP

#include <optional>
#include <string>
#include <string_view>

namespace wpsgate::rest {

enum class ResourceKind {
    entry,
    process_collection,
    process,
    job_collection,
    job,
    job_result,
};

std::string to_string(ResourceKind k);

/// Addressable resource. Keyed kinds (process, job, job_result) carry the
/// process identifier or job token; collection kinds and the entry do not.
struct ResourceId {
    ResourceKind kind = ResourceKind::entry;
    std::optional<std::string> key;

    static ResourceId entry() { return {ResourceKind::entry, std::nullopt}; }
    static ResourceId process_collection() { return {ResourceKind::process_collection, std::nullopt}; }
    static ResourceId process(std::string pid) { return {ResourceKind::process, std::move(pid)}; }
    static ResourceId job_collection() { return {ResourceKind::job_collection, std::nullopt}; }
    static ResourceId job(std::string jid) { return {ResourceKind::job, std::move(jid)}; }
    static ResourceId job_result(std::string jid) { return {ResourceKind::job_result, std::move(jid)}; }

    friend bool operator==(const ResourceId&, const ResourceId&) = default;
};

/// Deterministic URI scheme:
///   entry               /
///   process_collection  /processes
///   process             /processes/{pid}
///   job_collection      /jobs
///   job                 /jobs/{jid}
///   job_result          /jobs/{jid}/result
/// Keys are percent-encoded. `base` must be absolute; a trailing slash on
/// it is ignored.
std::string uri_for(const ResourceId& id, std::string_view base);

/// Inverse of uri_for on its range; nullopt for unrecognized paths.
/// Additionally accepts the process-scoped job collection
/// /processes/{pid}/jobs (classified as job_collection); servers that
/// need the scope read it from the path.
std::optional<ResourceId> route(std::string_view path);

/// The {pid} of a /processes/{pid}/jobs path, when that is what `path` is.
std::optional<std::string> scoped_process(std::string_view path);

} // namespace wpsgate::rest

#endif
