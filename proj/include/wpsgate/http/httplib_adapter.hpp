#ifndef WPSGATE_HTTP_HTTPLIB_ADAPTER_HPP
#define WPSGATE_HTTP_HTTPLIB_ADAPTER_HPP

#include "wpsgate/http/message.hpp"

#include <httplib.h>

namespace wpsgate::http {

inline Request from_httplib(const httplib::Request& hreq) {
    Request req;
    req.method = hreq.method;
    // the raw target keeps percent-encoding intact for routing
    const std::string& target = hreq.target.empty() ? hreq.path : hreq.target;
    auto q = target.find('?');
    req.path = target.substr(0, q);
    if (q != std::string::npos) req.raw_query = target.substr(q + 1);
    for (const auto& [k, v] : hreq.headers) req.headers.emplace_back(k, v);
    req.body = hreq.body;
    return req;
}

inline void to_httplib(const Response& res, httplib::Response& hres) {
    hres.status = res.status;
    for (const auto& [k, v] : res.headers) hres.set_header(k, v);
    if (res.status == 204 || res.status == 304) return; // no body, no Content-Type
    hres.set_content(res.body, res.content_type);
}

/// Plain GET returning the body on 2xx, used to dereference href inputs.
inline std::optional<std::string> http_get_body(const std::string& url,
                                                int timeout_seconds = 10) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) return std::nullopt;
    auto path_start = url.find('/', scheme_end + 3);
    std::string root = path_start == std::string::npos ? url : url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
    httplib::Client client(root);
    client.set_connection_timeout(timeout_seconds);
    client.set_read_timeout(timeout_seconds);
    auto result = client.Get(path);
    if (!result || result->status / 100 != 2) return std::nullopt;
    return result->body;
}

/// Route every method and path into Handler::handle.
template <typename Handler>
void attach(httplib::Server& server, Handler& handler) {
    auto fn = [&handler](const httplib::Request& hreq, httplib::Response& hres) {
        to_httplib(handler.handle(from_httplib(hreq)), hres);
    };
    const char* any = ".*";
    server.Get(any, fn);
    server.Post(any, fn);
    server.Put(any, fn);
    server.Delete(any, fn);
    server.Patch(any, fn);
    server.Options(any, fn);
}

} // namespace wpsgate::http

#endif
