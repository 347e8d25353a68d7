#ifndef WPSGATE_WPS_TYPES_HPP
#define WPSGATE_WPS_TYPES_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wpsgate::wps {

/// Emitted on every document this library produces; parsers match local
/// names only, so foreign namespaces are accepted.
inline constexpr const char* kNamespace = "http://www.opengis.net/wps/1.0.0";

inline constexpr const char* kDefaultCrs = "EPSG:4326";

// Exception codes named by the protocol. Unrecognized codes pass through
// verbatim.
inline constexpr const char* kMissingParameterValue = "MissingParameterValue";
inline constexpr const char* kInvalidParameterValue = "InvalidParameterValue";
inline constexpr const char* kServerBusy = "ServerBusy";
inline constexpr const char* kNoApplicableCode = "NoApplicableCode";

enum class ErrorKind {
    missing_parameter,
    invalid_parameter,
    unknown_operation,
    malformed_document,
    schema_violation,
    unencodable_request,
    invalid_model,
};

class ProtocolError : public std::runtime_error {
public:
    ProtocolError(ErrorKind kind, std::string locator, const std::string& detail)
        : std::runtime_error(detail), kind_(kind), locator_(std::move(locator)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& locator() const { return locator_; }

private:
    ErrorKind kind_;
    std::string locator_;
};

enum class LiteralType { doubl, integer, string };

std::string to_string(LiteralType t);
std::optional<LiteralType> literal_type_from(std::string_view name);

struct LiteralValue {
    std::string text;
    LiteralType datatype = LiteralType::string;

    friend bool operator==(const LiteralValue&, const LiteralValue&) = default;
};

/// Carries exactly one of body (by value) or href (by reference).
/// Bodies are UTF-8 text documents (JSON in this deployment).
struct ComplexValue {
    std::string media_type;
    std::optional<std::string> body;
    std::optional<std::string> href;

    friend bool operator==(const ComplexValue&, const ComplexValue&) = default;
};

struct BoundingBoxValue {
    double minx = 0, miny = 0, maxx = 0, maxy = 0;
    std::string crs = kDefaultCrs;

    friend bool operator==(const BoundingBoxValue&, const BoundingBoxValue&) = default;
};

using DataValue = std::variant<LiteralValue, ComplexValue, BoundingBoxValue>;

using NamedValue = std::pair<std::string, DataValue>;

enum class ResponseForm { by_value, by_reference };

struct GetCapabilitiesRequest {
    std::string service = "WPS";

    friend bool operator==(const GetCapabilitiesRequest&, const GetCapabilitiesRequest&) = default;
};

struct DescribeProcessRequest {
    std::vector<std::string> identifiers;

    friend bool operator==(const DescribeProcessRequest&, const DescribeProcessRequest&) = default;
};

struct ExecuteRequest {
    std::string process_id;
    std::vector<NamedValue> inputs; // identifiers may repeat up to the descriptor bound
    ResponseForm response_form = ResponseForm::by_value;

    friend bool operator==(const ExecuteRequest&, const ExecuteRequest&) = default;
};

using OperationRequest =
    std::variant<GetCapabilitiesRequest, DescribeProcessRequest, ExecuteRequest>;

struct ProcessBrief {
    std::string identifier;
    std::string title;

    friend bool operator==(const ProcessBrief&, const ProcessBrief&) = default;
};

struct ServiceCapabilities {
    std::string title;
    std::string provider;
    std::vector<ProcessBrief> process_briefs;
    std::string endpoint;

    friend bool operator==(const ServiceCapabilities&, const ServiceCapabilities&) = default;
};

enum class ValueKind { literal, complex, bounding_box };

std::string to_string(ValueKind k);

struct InputDescriptor {
    std::string identifier;
    ValueKind kind = ValueKind::literal;
    std::optional<LiteralType> datatype;     // literal kind only
    std::vector<std::string> supported_formats; // complex kind only
    unsigned min_occurs = 1;
    unsigned max_occurs = 1;

    friend bool operator==(const InputDescriptor&, const InputDescriptor&) = default;
};

struct OutputDescriptor {
    std::string identifier;
    ValueKind kind = ValueKind::literal;
    std::optional<LiteralType> datatype;
    std::vector<std::string> supported_formats;

    friend bool operator==(const OutputDescriptor&, const OutputDescriptor&) = default;
};

struct ProcessDescription {
    std::string identifier;
    std::string title;
    std::optional<std::string> abstract;
    std::vector<std::string> taxonomy_tags;
    std::vector<InputDescriptor> inputs;
    std::vector<OutputDescriptor> outputs;

    friend bool operator==(const ProcessDescription&, const ProcessDescription&) = default;
};

struct ExecuteResult {
    std::string process_id;
    std::vector<NamedValue> outputs;

    friend bool operator==(const ExecuteResult&, const ExecuteResult&) = default;
};

struct ExceptionEntry {
    std::string code;
    std::optional<std::string> locator;
    std::optional<std::string> text;

    friend bool operator==(const ExceptionEntry&, const ExceptionEntry&) = default;
};

struct ExceptionReport {
    std::vector<ExceptionEntry> entries;

    friend bool operator==(const ExceptionReport&, const ExceptionReport&) = default;
};

/// A parsed execute response is one or the other; callers cannot know
/// which until the document has been read.
using ExecuteOutcome = std::variant<ExecuteResult, ExceptionReport>;

// Invariant checks. Each throws ProtocolError{invalid_model} naming the
// offending field; encoders call these before producing bytes.
void validate(const DataValue& v);
void validate(const OperationRequest& r);
void validate(const ServiceCapabilities& c);
void validate(const ProcessDescription& d);
void validate(const ExecuteResult& r);
void validate(const ExceptionReport& r);

} // namespace wpsgate::wps

#endif
