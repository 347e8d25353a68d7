#ifndef WPSGATE_MOCK_SERVICE_HPP
#define WPSGATE_MOCK_SERVICE_HPP

#include "wpsgate/http/message.hpp"
#include "wpsgate/wps/types.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace wpsgate::mock {

// drop_connection is realized by the serving layer (accept, then close
// without a response); the handler itself only knows the other two.
enum class FaultMode { none, server_busy, drop_connection };

struct FaultConfig {
    FaultMode mode = FaultMode::none;
    int added_latency_ms = 0;

    static constexpr int kMaxLatencyMs = 60'000;
};

/// Dereferences an href input; returns the body or nullopt on failure.
using HrefFetcher = std::function<std::optional<std::string>(const std::string& url)>;

/// Simulated pre-REST processing backend. Three topology processes over
/// a single endpoint, KVP over GET and XML over POST, and the classic
/// protocol defects on purpose: exceptions ship with status 200, execute
/// rides on GET, and no response ever carries cache validators.
class Service {
public:
    static constexpr const char* kWpsPath = "/wps";
    static constexpr const char* kResultPathPrefix = "/results/";

    static constexpr const char* kAreaProcess =
        "org.n52.wps.server.algorithm.topology.Area";
    static constexpr const char* kBoundingBoxProcess =
        "org.n52.wps.server.algorithm.topology.BoundingBox";
    static constexpr const char* kIntersectProcess =
        "org.n52.wps.server.algorithm.topology.Intersect";

    /// `public_base` is the advertised absolute URL prefix, e.g.
    /// "http://127.0.0.1:8080"; it feeds the capabilities endpoint field
    /// and by-reference result hrefs.
    explicit Service(std::string public_base, FaultConfig fault = {},
                     HrefFetcher fetch_href = nullptr);

    http::Response handle(const http::Request& req);

    const std::vector<wps::ProcessDescription>& processes() const { return processes_; }
    wps::ServiceCapabilities capabilities() const;

    static std::vector<wps::ProcessDescription> builtin_processes();

private:
    http::Response dispatch(const wps::OperationRequest& req);
    http::Response describe(const wps::DescribeProcessRequest& req);
    http::Response execute(const wps::ExecuteRequest& req);
    wps::DataValue run_process(const wps::ProcessDescription& desc,
                               std::vector<wps::NamedValue>& inputs);
    std::string resolve_complex_body(const std::string& input_name, const wps::ComplexValue& value);
    std::string store_result(const std::string& media_type, std::string body);

    static http::Response exception_response(const std::string& code,
                                             const std::optional<std::string>& locator,
                                             const std::optional<std::string>& text);

    std::string public_base_;
    FaultConfig fault_;
    HrefFetcher fetch_href_;
    std::vector<wps::ProcessDescription> processes_;

    std::mutex results_mutex_;
    std::map<std::string, std::pair<std::string, std::string>> stored_results_; // token -> (type, body)
};

} // namespace wpsgate::mock

#endif
