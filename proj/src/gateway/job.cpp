#include "wpsgate/gateway/job.hpp"

#include "wpsgate/wps/json.hpp"

#include <algorithm>

namespace wpsgate::gateway {

using nlohmann::json;

json job_to_json(const Job& job) {
    json inputs = json::array();
    for (const auto& [name, value] : job.inputs)
        inputs.push_back({{"id", name}, {"value", wps::to_json(value)}});
    json j{{"id", job.id},
           {"process", job.process_id},
           {"status", rest::to_string(job.status)},
           {"created", job.created_ms},
           {"updated", job.updated_ms},
           {"inputs", inputs}};
    if (job.result) j["result"] = wps::to_json(*job.result);
    if (job.exception) j["exception"] = wps::to_json(*job.exception);
    return j;
}

Job job_from_json(const json& j) try {
    auto bad = [](const std::string& detail) -> void {
        throw wps::ProtocolError(wps::ErrorKind::schema_violation, "job", detail);
    };
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) bad("job record without id");

    Job job;
    job.id = j["id"].get<std::string>();
    job.process_id = j.value("process", "");
    auto phase = rest::job_phase_from(j.value("status", ""));
    if (!phase) bad("unknown job status");
    job.status = *phase;
    job.created_ms = j.value("created", 0LL);
    job.updated_ms = j.value("updated", 0LL);
    if (j.contains("inputs")) {
        if (!j["inputs"].is_array()) bad("job inputs must be an array");
        for (const auto& entry : j["inputs"]) {
            if (!entry.is_object() || !entry.contains("id") || !entry.contains("value"))
                bad("malformed job input entry");
            job.inputs.emplace_back(entry["id"].get<std::string>(),
                                    wps::data_value_from_json(entry["value"]));
        }
    }
    if (j.contains("result")) job.result = wps::result_from_json(j["result"]);
    if (j.contains("exception")) job.exception = wps::report_from_json(j["exception"]);
    return job;
} catch (const nlohmann::json::exception& e) {
    throw wps::ProtocolError(wps::ErrorKind::schema_violation, "job", e.what());
}

JobStore::JobStore(std::optional<std::string> journal_path) {
    if (!journal_path) return;

    // replay, then reopen for appending
    {
        std::ifstream in(*journal_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
            if (record.is_discarded() || !record.is_object()) continue; // torn tail write
            try {
                if (record.value("deleted", false)) {
                    jobs_.erase(record.value("id", ""));
                } else {
                    Job job = job_from_json(record);
                    jobs_.insert_or_assign(job.id, std::move(job));
                }
            } catch (const std::exception&) {
                // skip unreadable records rather than refuse to start
            }
        }
    }
    journal_.open(*journal_path, std::ios::app);
}

void JobStore::append_line(const json& record) {
    if (!journal_.is_open()) return;
    journal_ << record.dump() << '\n';
    journal_.flush();
}

void JobStore::upsert(const Job& job) {
    std::lock_guard<std::mutex> lock(mutex_);
    jobs_.insert_or_assign(job.id, job);
    append_line(job_to_json(job));
}

bool JobStore::erase(const std::string& id) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (jobs_.erase(id) == 0) return false;
    append_line(json{{"id", id}, {"deleted", true}});
    return true;
}

std::optional<Job> JobStore::get(const std::string& id) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return std::nullopt;
    return it->second;
}

std::vector<Job> JobStore::list() const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::vector<Job> out;
    out.reserve(jobs_.size());
    for (const auto& [id, job] : jobs_) out.push_back(job);
    std::sort(out.begin(), out.end(), [](const Job& a, const Job& b) {
        return a.created_ms != b.created_ms ? a.created_ms < b.created_ms : a.id < b.id;
    });
    return out;
}

size_t JobStore::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return jobs_.size();
}

} // namespace wpsgate::gateway
