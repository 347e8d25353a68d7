#include "wpsgate/rest/negotiate.hpp"

#include "wpsgate/util.hpp"

namespace wpsgate::rest {

std::vector<std::string> default_supported() { return {kJson, kXml, kHtml}; }

std::vector<MediaType> parse_accept(std::string_view header) {
    std::vector<MediaType> out;
    size_t start = 0;
    while (start <= header.size()) {
        size_t comma = header.find(',', start);
        std::string_view range = header.substr(
            start, comma == std::string_view::npos ? std::string_view::npos : comma - start);

        size_t semi = range.find(';');
        std::string name = util::to_lower(util::trim(range.substr(0, semi)));
        double q = 1.0;
        while (semi != std::string_view::npos) {
            size_t next = range.find(';', semi + 1);
            std::string param = util::trim(range.substr(
                semi + 1, next == std::string_view::npos ? std::string_view::npos
                                                         : next - semi - 1));
            if (param.size() > 2 && (param[0] == 'q' || param[0] == 'Q') && param[1] == '=') {
                if (auto v = util::parse_double(param.substr(2))) {
                    q = *v < 0 ? 0.0 : (*v > 1 ? 1.0 : *v);
                }
            }
            semi = next;
        }
        if (!name.empty()) out.push_back({name, q});
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::optional<std::string> negotiate(const std::optional<std::string>& accept_header,
                                     const std::vector<std::string>& supported) {
    if (supported.empty()) return std::nullopt;
    if (!accept_header || util::trim(*accept_header).empty()) return supported.front();

    auto ranges = parse_accept(*accept_header);
    if (ranges.empty()) return supported.front();

    double best_q = 0.0;
    std::optional<std::string> best;
    for (const auto& candidate : supported) {
        double q = 0.0;
        bool matched = false;
        for (const auto& range : ranges) {
            bool hit = util::iequals(range.name, candidate) ||
                       (range.name == "*/*" && candidate == supported.front());
            if (hit && (!matched || range.quality > q)) {
                matched = true;
                q = range.quality;
            }
        }
        if (matched && q > best_q) { // strict: earlier supported wins ties
            best_q = q;
            best = candidate;
        }
    }
    return best;
}

} // namespace wpsgate::rest
