#ifndef WPSGATE_WPS_JSON_HPP
#define WPSGATE_WPS_JSON_HPP

#include "wpsgate/wps/types.hpp"

#include <json.hpp>

namespace wpsgate::wps {

// Lossless JSON forms, used for job persistence and the JSON views.
// Values are distinguished by shape: {"datatype","value"} literal,
// {"media_type",...} complex, {"bbox",...} bounding box.

nlohmann::json to_json(const DataValue& value);
DataValue data_value_from_json(const nlohmann::json& j); // throws ProtocolError{schema_violation}

nlohmann::json to_json(const ExecuteResult& result);
ExecuteResult result_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExceptionReport& report);
ExceptionReport report_from_json(const nlohmann::json& j);

} // namespace wpsgate::wps

#endif
