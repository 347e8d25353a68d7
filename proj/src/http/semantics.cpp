#include "wpsgate/http/semantics.hpp"

#include "wpsgate/util.hpp"

namespace wpsgate::http {

const std::string* find_header(const HeaderList& headers, std::string_view name) {
    for (const auto& [k, v] : headers) {
        if (util::iequals(k, name)) return &v;
    }
    return nullptr;
}

StatusMapping StatusMapping::defaults(int retry_after_seconds) {
    StatusMapping m;
    m.table = {
        {wps::kMissingParameterValue, 400},
        {wps::kInvalidParameterValue, 400},
        {wps::kServerBusy, 503},
        {wps::kNoApplicableCode, 500},
    };
    m.retry_after_seconds = retry_after_seconds;
    return m;
}

MappedException map_exception(const wps::ExceptionReport& report, const StatusMapping& mapping) {
    MappedException mapped;
    if (report.entries.empty()) {
        mapped.governing = {wps::kNoApplicableCode, std::nullopt, "empty exception report"};
        return mapped;
    }
    mapped.governing = report.entries.front();
    if (auto it = mapping.table.find(mapped.governing.code); it != mapping.table.end()) {
        mapped.status = (it->second >= 100 && it->second <= 599) ? it->second : 500;
    }
    if (mapped.governing.code == wps::kServerBusy) {
        mapped.headers.emplace_back("Retry-After", std::to_string(mapping.retry_after_seconds));
    }
    return mapped;
}

MethodDecision method_guard(const rest::ResourceId& id, std::string_view method) {
    std::string allow;
    switch (id.kind) {
    case rest::ResourceKind::entry:
    case rest::ResourceKind::process_collection:
    case rest::ResourceKind::process:
    case rest::ResourceKind::job_result:
        allow = "GET";
        break;
    case rest::ResourceKind::job_collection:
        allow = "GET, POST";
        break;
    case rest::ResourceKind::job:
        allow = "GET, DELETE";
        break;
    }
    size_t start = 0;
    while (start <= allow.size()) {
        size_t pos = allow.find(", ", start);
        std::string_view verb(allow.data() + start,
                              (pos == std::string::npos ? allow.size() : pos) - start);
        if (verb == method) return {true, allow};
        if (pos == std::string::npos) break;
        start = pos + 2;
    }
    return {false, allow};
}

} // namespace wpsgate::http
