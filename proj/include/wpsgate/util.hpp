#ifndef WPSGATE_UTIL_HPP
#define WPSGATE_UTIL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace wpsgate::util {

/// Percent-encode every byte outside the URI unreserved set
/// (ALPHA / DIGIT / "-" / "." / "_" / "~").
std::string pct_encode(std::string_view s);

/// Inverse of pct_encode. Invalid escape sequences are kept verbatim.
std::string pct_decode(std::string_view s);

/// Shortest decimal form that parses back to the same double, with a
/// decimal marker forced ("1" becomes "1.0") so literal outputs are
/// visibly floating point on the wire.
std::string format_double(double v);

/// Strict double parse; the whole string must be consumed.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_integer(std::string_view s);

bool iequals(std::string_view a, std::string_view b);
std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

/// 128-bit random URL-safe token (22 base64url chars, unpadded).
std::string random_token();

/// Lowercase hex of arbitrary bytes.
std::string hex_encode(std::string_view bytes);

struct SplitUrl {
    std::string root;  // scheme://host[:port]
    std::string path;  // starts with '/', query included
};

/// Split an absolute http(s) URL; nullopt for anything else.
std::optional<SplitUrl> split_url(std::string_view url);

} // namespace wpsgate::util

#endif
