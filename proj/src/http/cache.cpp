#include "wpsgate/http/cache.hpp"

#include "wpsgate/util.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <cstring>

namespace wpsgate::http {

namespace {

constexpr const char* kDayNames[] = {"Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};
constexpr const char* kMonthNames[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                       "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

bool etag_matches(std::string_view candidate, std::string_view current) {
    if (candidate == "*") return true;
    if (candidate.substr(0, 2) == "W/") return false; // weak never strongly matches
    return candidate == current;
}

} // namespace

std::string compute_etag(std::string_view body) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_Digest(body.data(), body.size(), digest.data(), &len, EVP_sha256(), nullptr);
    return "\"" +
           util::hex_encode(std::string_view(reinterpret_cast<const char*>(digest.data()), len)) +
           "\"";
}

std::string imf_fixdate(std::time_t t) {
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%s, %02d %s %04d %02d:%02d:%02d GMT",
                  kDayNames[tm.tm_wday], tm.tm_mday, kMonthNames[tm.tm_mon],
                  tm.tm_year + 1900, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

std::optional<std::time_t> parse_imf_fixdate(std::string_view s) {
    char day_name[4] = {0};
    char month_name[4] = {0};
    int day = 0, year = 0, hour = 0, minute = 0, second = 0;
    std::string str(s);
    if (std::sscanf(str.c_str(), "%3s, %d %3s %d %d:%d:%d GMT", day_name, &day,
                    month_name, &year, &hour, &minute, &second) != 7) {
        return std::nullopt;
    }
    int month = -1;
    for (int i = 0; i < 12; ++i) {
        if (std::strcmp(month_name, kMonthNames[i]) == 0) {
            month = i;
            break;
        }
    }
    if (month < 0 || day < 1 || day > 31 || year < 1900) return std::nullopt;
    std::tm tm{};
    tm.tm_mday = day;
    tm.tm_mon = month;
    tm.tm_year = year - 1900;
    tm.tm_hour = hour;
    tm.tm_min = minute;
    tm.tm_sec = second;
    std::time_t t = timegm(&tm);
    if (t == static_cast<std::time_t>(-1)) return std::nullopt;
    return t;
}

Freshness evaluate_conditional(const std::optional<std::string>& if_none_match,
                               const std::optional<std::string>& if_modified_since,
                               std::string_view current_etag,
                               std::time_t current_last_modified) {
    if (if_none_match) {
        size_t start = 0;
        const std::string& list = *if_none_match;
        while (start <= list.size()) {
            size_t pos = list.find(',', start);
            std::string tag = util::trim(list.substr(
                start, pos == std::string::npos ? std::string::npos : pos - start));
            if (!tag.empty() && etag_matches(tag, current_etag)) return Freshness::not_modified;
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        return Freshness::full;
    }
    if (if_modified_since) {
        auto since = parse_imf_fixdate(*if_modified_since);
        if (since && current_last_modified <= *since) return Freshness::not_modified;
    }
    return Freshness::full;
}

CacheDirective cache_policy_for(rest::ResourceKind kind) {
    switch (kind) {
    case rest::ResourceKind::entry:
    case rest::ResourceKind::process_collection:
    case rest::ResourceKind::process:
        return {"max-age=3600", true, true};
    case rest::ResourceKind::job_collection:
    case rest::ResourceKind::job:
        return {"no-cache", true, false};
    case rest::ResourceKind::job_result:
        return {"max-age=86400", true, true};
    }
    return {"no-cache", true, false};
}

} // namespace wpsgate::http
