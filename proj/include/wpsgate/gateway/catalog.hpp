#ifndef WPSGATE_GATEWAY_CATALOG_HPP
#define WPSGATE_GATEWAY_CATALOG_HPP

#include "wpsgate/gateway/backend.hpp"
#include "wpsgate/wps/types.hpp"

#include <ctime>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpsgate::gateway {

/// No catalog has ever been fetched and the backend is down.
class BackendUnavailable : public std::runtime_error {
public:
    explicit BackendUnavailable(const std::string& what) : std::runtime_error(what) {}
};

struct Catalog {
    wps::ServiceCapabilities capabilities;
    std::vector<wps::ProcessDescription> processes;
    std::time_t fetched_at = 0;

    const wps::ProcessDescription* find(const std::string& id) const;
};

/// TTL cache over GetCapabilities + one DescribeProcess per identifier,
/// both over the query-string binding. Refreshes are single-flight:
/// while one request refreshes, the others keep reading the previous
/// snapshot. When the backend is down and a snapshot exists, it is
/// served stale and flagged.
class CatalogCache {
public:
    CatalogCache(BackendExchange exchange, std::string backend_path, int ttl_seconds);

    struct Snapshot {
        std::shared_ptr<const Catalog> catalog;
        bool stale = false;
    };

    /// Throws BackendUnavailable when cold and the backend is down.
    Snapshot get();

    /// Whatever snapshot exists right now, without touching the backend.
    std::shared_ptr<const Catalog> get_if_cached() const { return current(); }

private:
    std::shared_ptr<const Catalog> fetch();
    std::shared_ptr<const Catalog> current() const;

    BackendExchange exchange_;
    std::string backend_path_;
    int ttl_seconds_;

    mutable std::mutex snapshot_mutex_;
    std::shared_ptr<const Catalog> snapshot_;
    std::mutex refresh_mutex_;
};

} // namespace wpsgate::gateway

#endif
