#include "wpsgate/gateway/backend.hpp"

#include <httplib.h>

namespace wpsgate::gateway {

BackendTarget parse_backend_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos ||
        (url.substr(0, scheme_end) != "http" && url.substr(0, scheme_end) != "https")) {
        throw std::invalid_argument("backend URL must be absolute http(s): " + url);
    }
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

BackendExchange make_http_exchange(const std::string& backend_url, int timeout_seconds) {
    BackendTarget target = parse_backend_url(backend_url);
    return [target, timeout_seconds](const http::Request& req) -> http::Response {
        httplib::Client client(target.root);
        client.set_connection_timeout(timeout_seconds);
        client.set_read_timeout(timeout_seconds);

        std::string path = req.path.empty() ? target.path : req.path;
        if (!req.raw_query.empty()) path += "?" + req.raw_query;

        httplib::Headers headers;
        for (const auto& [k, v] : req.headers) headers.emplace(k, v);

        httplib::Result result;
        if (req.method == "POST") {
            std::string content_type = "application/xml";
            if (const std::string* ct = req.header("Content-Type")) content_type = *ct;
            result = client.Post(path, headers, req.body, content_type);
        } else {
            result = client.Get(path, headers);
        }
        if (!result) {
            throw BackendUnreachable("backend " + target.root + " unreachable: " +
                                     httplib::to_string(result.error()));
        }
        http::Response res;
        res.status = result->status;
        res.body = result->body;
        for (const auto& [k, v] : result->headers) res.headers.emplace_back(k, v);
        if (const std::string* ct = res.header("Content-Type")) res.content_type = *ct;
        return res;
    };
}

} // namespace wpsgate::gateway
