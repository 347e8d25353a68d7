#ifndef WPSGATE_HTTP_SEMANTICS_HPP
#define WPSGATE_HTTP_SEMANTICS_HPP

#include "wpsgate/http/message.hpp"
#include "wpsgate/rest/resource.hpp"
#include "wpsgate/wps/types.hpp"

#include <map>
#include <string>
#include <string_view>

namespace wpsgate::http {

/// Exception-code to HTTP status translation. 4xx only where the client
/// is provably at fault; anything unrecognized is a 500.
struct StatusMapping {
    std::map<std::string, int> table;
    int retry_after_seconds = 30;

    static StatusMapping defaults(int retry_after_seconds = 30);
};

struct MappedException {
    int status = 500;
    HeaderList headers;            // e.g. Retry-After for a busy backend
    wps::ExceptionEntry governing; // first report entry
};

/// Total: the first entry governs, unknown codes and out-of-range table
/// values fall back to 500.
MappedException map_exception(const wps::ExceptionReport& report, const StatusMapping& mapping);

struct MethodDecision {
    bool allowed = false;
    std::string allow; // comma-separated Allow list for 405 responses
};

/// Verb table: collections and read-only resources answer GET; the job
/// collection also creates (POST); a job can be removed (DELETE).
MethodDecision method_guard(const rest::ResourceId& id, std::string_view method);

} // namespace wpsgate::http

#endif
