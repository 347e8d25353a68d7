#ifndef WPSGATE_GATEWAY_JOB_HPP
#define WPSGATE_GATEWAY_JOB_HPP

#include "wpsgate/rest/links.hpp"
#include "wpsgate/wps/types.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace wpsgate::gateway {

/// Server-side record of one execute interaction. Status only ever moves
/// accepted -> running -> {succeeded, failed}; the result is present
/// exactly when succeeded and the exception exactly when failed.
struct Job {
    std::string id;
    std::string process_id;
    std::vector<wps::NamedValue> inputs;
    rest::JobPhase status = rest::JobPhase::accepted;
    long long created_ms = 0;
    long long updated_ms = 0;
    std::optional<wps::ExecuteResult> result;
    std::optional<wps::ExceptionReport> exception;

    friend bool operator==(const Job&, const Job&) = default;
};

nlohmann::json job_to_json(const Job& job);
Job job_from_json(const nlohmann::json& j); // throws ProtocolError{schema_violation}

/// In-memory map with an optional newline-delimited JSON journal. Every
/// mutation appends one line (a full job record, or {"id",...,"deleted":
/// true} for removals) and flushes, so replaying the journal after a
/// crash reconstructs the map exactly.
class JobStore {
public:
    explicit JobStore(std::optional<std::string> journal_path = std::nullopt);

    void upsert(const Job& job);
    bool erase(const std::string& id);
    std::optional<Job> get(const std::string& id) const;
    std::vector<Job> list() const; // ordered by creation time, then id
    size_t size() const;

private:
    void append_line(const nlohmann::json& record);

    mutable std::mutex mutex_;
    std::map<std::string, Job> jobs_;
    std::ofstream journal_;
};

} // namespace wpsgate::gateway

#endif
