#ifndef WPSGATE_GATEWAY_VALIDATE_HPP
#define WPSGATE_GATEWAY_VALIDATE_HPP

#include "wpsgate/wps/types.hpp"

#include <json.hpp>

#include <vector>

namespace wpsgate::gateway {

/// Interpret a job-submission body against the process's input
/// descriptors. Shape: {"inputs": {id: value, ...}}. Literals are JSON
/// scalars, bounding boxes 4-number arrays, complex values embedded JSON
/// or {"href": uri}; an array submits repeated occurrences where the
/// descriptor allows them.
///
/// Throws ProtocolError{invalid_parameter} for values that cannot be
/// interpreted at all; occurrence and type checking happens in
/// validate_inputs.
std::vector<wps::NamedValue> parse_job_submission(
    const nlohmann::json& body, const std::vector<wps::InputDescriptor>& descriptors);

/// Enforce the descriptors: required inputs present, occurrence counts in
/// bounds, literal text parses under the declared datatype, complex media
/// types among the supported formats. Returns the inputs reordered to
/// descriptor order with literal datatypes normalized.
///
/// Throws ProtocolError{missing_parameter} or {invalid_parameter} with
/// the input identifier as locator.
std::vector<wps::NamedValue> validate_inputs(
    const std::vector<wps::NamedValue>& submitted,
    const std::vector<wps::InputDescriptor>& descriptors);

} // namespace wpsgate::gateway

#endif
