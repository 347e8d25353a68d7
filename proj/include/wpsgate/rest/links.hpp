#ifndef WPSGATE_REST_LINKS_HPP
#define WPSGATE_REST_LINKS_HPP

#include "wpsgate/rest/resource.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wpsgate::rest {

/// The registered relation vocabulary; links never leave this set.
inline constexpr std::array<std::string_view, 10> kLinkRelations = {
    "self", "up",      "collection", "item",    "describedby",
    "execute", "monitor", "results",    "similar", "alternate",
};

bool is_registered_relation(std::string_view rel);

struct TypedLink {
    std::string rel;
    std::string href; // absolute
    std::optional<std::string> media_type;
    std::optional<std::string> title;

    friend bool operator==(const TypedLink&, const TypedLink&) = default;
};

enum class JobPhase { accepted, running, succeeded, failed };

std::string to_string(JobPhase p);
std::optional<JobPhase> job_phase_from(std::string_view name);

struct ProcessRef {
    std::string identifier;
    std::vector<std::string> tags;
};

/// Resource-state summary feeding the transition table.
struct LinkContext {
    std::vector<ProcessRef> processes;       // catalog summary (for item/similar)
    std::vector<std::string> job_ids;        // live jobs (job collection items)
    std::optional<JobPhase> job_phase;       // job resources
    std::optional<std::string> job_process;  // process behind a job (similar-on-failure)
};

/// State-transition table. Every list carries exactly one `self`; the
/// remaining links advertise where a client may go next: collections from
/// the entry, per-process item/describedby pairs from the process list,
/// an execute target and tag-sharing `similar` processes from a process,
/// monitor-while-running / results-when-done / similar-on-failure from a
/// job.
std::vector<TypedLink> links_for(const ResourceId& id, const LinkContext& ctx,
                                 std::string_view base);

} // namespace wpsgate::rest

#endif
