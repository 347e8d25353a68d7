#include "wpsgate/rest/resource.hpp"

#include "wpsgate/util.hpp"

#include <vector>

namespace wpsgate::rest {

namespace {

// Splits "/a/b" into {"a","b"}; empty segments stay, so "/a//" is
// distinguishable from "/a" and gets rejected by the callers below.
std::vector<std::string_view> segments(std::string_view path) {
    std::vector<std::string_view> out;
    if (path.empty() || path.front() != '/') return out;
    path.remove_prefix(1);
    if (path.empty()) return out;
    size_t start = 0;
    while (true) {
        size_t pos = path.find('/', start);
        if (pos == std::string_view::npos) {
            out.push_back(path.substr(start));
            return out;
        }
        out.push_back(path.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

std::string to_string(ResourceKind k) {
    switch (k) {
    case ResourceKind::entry: return "entry";
    case ResourceKind::process_collection: return "process_collection";
    case ResourceKind::process: return "process";
    case ResourceKind::job_collection: return "job_collection";
    case ResourceKind::job: return "job";
    case ResourceKind::job_result: return "job_result";
    }
    return "entry";
}

std::string uri_for(const ResourceId& id, std::string_view base) {
    while (!base.empty() && base.back() == '/') base.remove_suffix(1);
    std::string b(base);
    switch (id.kind) {
    case ResourceKind::entry: return b + "/";
    case ResourceKind::process_collection: return b + "/processes";
    case ResourceKind::process: return b + "/processes/" + util::pct_encode(id.key.value());
    case ResourceKind::job_collection: return b + "/jobs";
    case ResourceKind::job: return b + "/jobs/" + util::pct_encode(id.key.value());
    case ResourceKind::job_result: return b + "/jobs/" + util::pct_encode(id.key.value()) + "/result";
    }
    return b + "/";
}

std::optional<ResourceId> route(std::string_view path) {
    if (path.empty() || path.front() != '/') return std::nullopt;
    if (path == "/") return ResourceId::entry();

    auto segs = segments(path);
    for (auto s : segs) {
        if (s.empty()) return std::nullopt;
    }

    if (segs.size() == 1 && segs[0] == "processes") return ResourceId::process_collection();
    if (segs.size() == 1 && segs[0] == "jobs") return ResourceId::job_collection();
    if (segs.size() == 2 && segs[0] == "processes")
        return ResourceId::process(util::pct_decode(segs[1]));
    if (segs.size() == 3 && segs[0] == "processes" && segs[2] == "jobs")
        return ResourceId::job_collection();
    if (segs.size() == 2 && segs[0] == "jobs")
        return ResourceId::job(util::pct_decode(segs[1]));
    if (segs.size() == 3 && segs[0] == "jobs" && segs[2] == "result")
        return ResourceId::job_result(util::pct_decode(segs[1]));
    return std::nullopt;
}

std::optional<std::string> scoped_process(std::string_view path) {
    auto segs = segments(path);
    if (segs.size() == 3 && segs[0] == "processes" && segs[2] == "jobs" && !segs[1].empty())
        return util::pct_decode(segs[1]);
    return std::nullopt;
}

} // namespace wpsgate::rest
