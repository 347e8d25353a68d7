#ifndef WPSGATE_REST_NEGOTIATE_HPP
#define WPSGATE_REST_NEGOTIATE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wpsgate::rest {

inline constexpr const char* kJson = "application/json";
inline constexpr const char* kXml = "application/xml";
inline constexpr const char* kHtml = "text/html";
inline constexpr const char* kPlain = "text/plain";

struct MediaType {
    std::string name; // type/subtype
    double quality = 1.0;

    friend bool operator==(const MediaType&, const MediaType&) = default;
};

/// Server-preferred representation order.
std::vector<std::string> default_supported();

/// Pick the representation for an Accept header against a server-ordered
/// supported list. Ranges carry q-values (default 1.0), `*/*` stands for
/// the first supported type, other wildcards are not recognized. Highest
/// q wins, ties break by server order, an absent or empty header means
/// the first supported type, and no match means nullopt (the caller
/// answers 406).
std::optional<std::string> negotiate(const std::optional<std::string>& accept_header,
                                     const std::vector<std::string>& supported);

/// Parsed Accept ranges in header order (exposed for tests).
std::vector<MediaType> parse_accept(std::string_view header);

} // namespace wpsgate::rest

#endif
