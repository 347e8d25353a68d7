#include "wpsgate/gateway/catalog.hpp"

#include "wpsgate/wps/kvp.hpp"
#include "wpsgate/wps/xml.hpp"

#include <chrono>

namespace wpsgate::gateway {

const wps::ProcessDescription* Catalog::find(const std::string& id) const {
    for (const auto& p : processes) {
        if (p.identifier == id) return &p;
    }
    return nullptr;
}

CatalogCache::CatalogCache(BackendExchange exchange, std::string backend_path, int ttl_seconds)
    : exchange_(std::move(exchange)),
      backend_path_(std::move(backend_path)),
      ttl_seconds_(ttl_seconds) {}

std::shared_ptr<const Catalog> CatalogCache::current() const {
    std::lock_guard<std::mutex> lock(snapshot_mutex_);
    return snapshot_;
}

std::shared_ptr<const Catalog> CatalogCache::fetch() {
    auto kvp_get = [&](const wps::OperationRequest& op) {
        http::Request req;
        req.method = "GET";
        req.path = backend_path_;
        req.raw_query = wps::encode_kvp(op);
        return exchange_(req);
    };

    auto catalog = std::make_shared<Catalog>();

    http::Response caps_res = kvp_get(wps::GetCapabilitiesRequest{});
    catalog->capabilities = wps::parse_capabilities(caps_res.body);

    for (const auto& brief : catalog->capabilities.process_briefs) {
        http::Response desc_res =
            kvp_get(wps::DescribeProcessRequest{{brief.identifier}});
        auto descs = wps::parse_process_descriptions(desc_res.body);
        if (descs.size() != 1)
            throw wps::ProtocolError(wps::ErrorKind::schema_violation, brief.identifier,
                                     "expected exactly one description");
        catalog->processes.push_back(std::move(descs.front()));
    }

    catalog->fetched_at =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    return catalog;
}

CatalogCache::Snapshot CatalogCache::get() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());

    auto snap = current();
    if (snap && now < snap->fetched_at + ttl_seconds_) return {snap, false};

    std::unique_lock<std::mutex> refresh(refresh_mutex_, std::try_to_lock);
    if (!refresh.owns_lock()) {
        if (snap) return {snap, false}; // someone else is refreshing
        refresh.lock();                 // cold start: wait for the first fetch
        snap = current();
        if (snap) return {snap, false};
    } else {
        // re-check: another thread may have refreshed while we waited
        snap = current();
        if (snap && now < snap->fetched_at + ttl_seconds_) return {snap, false};
    }

    try {
        auto fresh = fetch();
        std::lock_guard<std::mutex> lock(snapshot_mutex_);
        snapshot_ = fresh;
        return {fresh, false};
    } catch (const std::exception& e) {
        if (snap) return {snap, true}; // serve stale with a warning flag
        throw BackendUnavailable(e.what());
    }
}

} // namespace wpsgate::gateway
