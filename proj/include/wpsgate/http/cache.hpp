#ifndef WPSGATE_HTTP_CACHE_HPP
#define WPSGATE_HTTP_CACHE_HPP

#include "wpsgate/rest/resource.hpp"

#include <ctime>
#include <optional>
#include <string>
#include <string_view>

namespace wpsgate::http {

/// Strong validator: quoted lowercase hex SHA-256 of the body.
std::string compute_etag(std::string_view body);

/// IMF-fixdate, e.g. "Sun, 06 Nov 1994 08:49:37 GMT".
std::string imf_fixdate(std::time_t t);
std::optional<std::time_t> parse_imf_fixdate(std::string_view s);

enum class Freshness { full, not_modified };

/// If-None-Match wins over If-Modified-Since; a matching etag (or `*`)
/// means not_modified, otherwise the date decides. Malformed dates are
/// treated as absent. Etag comparison is the strong one, so `W/` tags
/// never match.
Freshness evaluate_conditional(const std::optional<std::string>& if_none_match,
                               const std::optional<std::string>& if_modified_since,
                               std::string_view current_etag,
                               std::time_t current_last_modified);

struct CacheDirective {
    std::string cache_control;
    bool use_etag = true;
    bool use_last_modified = true;
};

/// Catalog-backed resources are stable and cache for an hour; job status
/// must always revalidate; results never change once written.
CacheDirective cache_policy_for(rest::ResourceKind kind);

} // namespace wpsgate::http

#endif
