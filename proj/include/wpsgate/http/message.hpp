#ifndef WPSGATE_HTTP_MESSAGE_HPP
#define WPSGATE_HTTP_MESSAGE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wpsgate::http {

using HeaderList = std::vector<std::pair<std::string, std::string>>;

/// Header field names compare case-insensitively.
const std::string* find_header(const HeaderList& headers, std::string_view name);

struct Request {
    std::string method;
    std::string path;       // decoded path component
    std::string raw_query;  // bytes after '?', undecoded
    HeaderList headers;
    std::string body;

    const std::string* header(std::string_view name) const { return find_header(headers, name); }
};

struct Response {
    int status = 200;
    HeaderList headers;
    std::string body;
    std::string content_type = "text/plain";

    Response& set_header(std::string name, std::string value) {
        headers.emplace_back(std::move(name), std::move(value));
        return *this;
    }
    const std::string* header(std::string_view name) const { return find_header(headers, name); }
};

} // namespace wpsgate::http

#endif
