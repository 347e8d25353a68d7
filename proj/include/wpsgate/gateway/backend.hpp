#ifndef WPSGATE_GATEWAY_BACKEND_HPP
#define WPSGATE_GATEWAY_BACKEND_HPP

#include "wpsgate/http/message.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace wpsgate::gateway {

/// Transport failure talking to the backend (refused, reset, timed out).
class BackendUnreachable : public std::runtime_error {
public:
    explicit BackendUnreachable(const std::string& what) : std::runtime_error(what) {}
};

/// One request-response exchange against the backend endpoint. The
/// request's path/query/body address the endpoint directly; the exchange
/// owns host resolution. Throws BackendUnreachable on transport failure.
using BackendExchange = std::function<http::Response(const http::Request&)>;

struct BackendTarget {
    std::string root; // scheme://host[:port]
    std::string path; // endpoint path, e.g. /wps
};

/// Splits an absolute endpoint URL; throws std::invalid_argument when it
/// is not http(s)://...
BackendTarget parse_backend_url(const std::string& url);

/// Real HTTP exchange via the endpoint URL.
BackendExchange make_http_exchange(const std::string& backend_url, int timeout_seconds = 10);

} // namespace wpsgate::gateway

#endif
