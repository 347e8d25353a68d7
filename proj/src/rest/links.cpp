#include "wpsgate/rest/links.hpp"

#include "wpsgate/util.hpp"

#include <algorithm>

namespace wpsgate::rest {

bool is_registered_relation(std::string_view rel) {
    return std::find(kLinkRelations.begin(), kLinkRelations.end(), rel) != kLinkRelations.end();
}

std::string to_string(JobPhase p) {
    switch (p) {
    case JobPhase::accepted: return "accepted";
    case JobPhase::running: return "running";
    case JobPhase::succeeded: return "succeeded";
    case JobPhase::failed: return "failed";
    }
    return "accepted";
}

std::optional<JobPhase> job_phase_from(std::string_view name) {
    if (name == "accepted") return JobPhase::accepted;
    if (name == "running") return JobPhase::running;
    if (name == "succeeded") return JobPhase::succeeded;
    if (name == "failed") return JobPhase::failed;
    return std::nullopt;
}

namespace {

const ProcessRef* find_process(const LinkContext& ctx, const std::string& pid) {
    for (const auto& p : ctx.processes) {
        if (p.identifier == pid) return &p;
    }
    return nullptr;
}

bool share_tag(const ProcessRef& a, const ProcessRef& b) {
    for (const auto& t : a.tags) {
        if (std::find(b.tags.begin(), b.tags.end(), t) != b.tags.end()) return true;
    }
    return false;
}

void append_similar(std::vector<TypedLink>& links, const LinkContext& ctx,
                    const std::string& pid, std::string_view base) {
    const ProcessRef* self = find_process(ctx, pid);
    if (!self) return;
    for (const auto& other : ctx.processes) {
        if (other.identifier == pid || !share_tag(*self, other)) continue;
        links.push_back({"similar", uri_for(ResourceId::process(other.identifier), base),
                         std::nullopt, other.identifier});
    }
}

} // namespace

std::vector<TypedLink> links_for(const ResourceId& id, const LinkContext& ctx,
                                 std::string_view base) {
    std::vector<TypedLink> links;
    links.push_back({"self", uri_for(id, base), std::nullopt, std::nullopt});

    switch (id.kind) {
    case ResourceKind::entry:
        links.push_back({"collection", uri_for(ResourceId::process_collection(), base),
                         std::nullopt, "processes"});
        links.push_back({"collection", uri_for(ResourceId::job_collection(), base),
                         std::nullopt, "jobs"});
        break;

    case ResourceKind::process_collection:
        links.push_back({"up", uri_for(ResourceId::entry(), base), std::nullopt, std::nullopt});
        for (const auto& p : ctx.processes) {
            std::string href = uri_for(ResourceId::process(p.identifier), base);
            links.push_back({"item", href, std::nullopt, p.identifier});
            links.push_back({"describedby", href, std::string("application/json"), std::nullopt});
        }
        break;

    case ResourceKind::process: {
        const std::string& pid = id.key.value();
        links.push_back({"up", uri_for(ResourceId::process_collection(), base),
                         std::nullopt, std::nullopt});
        links.push_back({"execute",
                         uri_for(ResourceId::process_collection(), base) + "/" +
                             util::pct_encode(pid) + "/jobs",
                         std::string("application/json"), "submit a job"});
        append_similar(links, ctx, pid, base);
        break;
    }

    case ResourceKind::job_collection:
        links.push_back({"up", uri_for(ResourceId::entry(), base), std::nullopt, std::nullopt});
        for (const auto& jid : ctx.job_ids)
            links.push_back({"item", uri_for(ResourceId::job(jid), base), std::nullopt, jid});
        break;

    case ResourceKind::job: {
        const std::string& jid = id.key.value();
        switch (ctx.job_phase.value_or(JobPhase::accepted)) {
        case JobPhase::accepted:
        case JobPhase::running:
            links.push_back({"monitor", uri_for(id, base), std::nullopt, "poll for status"});
            break;
        case JobPhase::succeeded:
            links.push_back({"results", uri_for(ResourceId::job_result(jid), base),
                             std::nullopt, std::nullopt});
            break;
        case JobPhase::failed:
            if (ctx.job_process) append_similar(links, ctx, *ctx.job_process, base);
            links.push_back({"up", uri_for(ResourceId::job_collection(), base),
                             std::nullopt, std::nullopt});
            break;
        }
        break;
    }

    case ResourceKind::job_result:
        links.push_back({"up", uri_for(ResourceId::job(id.key.value()), base),
                         std::nullopt, std::nullopt});
        break;
    }
    return links;
}

} // namespace wpsgate::rest
