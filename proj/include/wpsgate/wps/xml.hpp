#ifndef WPSGATE_WPS_XML_HPP
#define WPSGATE_WPS_XML_HPP

#include "wpsgate/wps/types.hpp"
#include "wpsgate/xml/node.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace wpsgate::wps {

// Request documents (the POST body binding). The root element's local
// name is the operation name.
std::string encode_xml(const OperationRequest& req);
OperationRequest parse_xml(std::string_view bytes);

// Response documents.
std::string encode_capabilities(const ServiceCapabilities& caps);
ServiceCapabilities parse_capabilities(std::string_view bytes);

std::string encode_process_descriptions(const std::vector<ProcessDescription>& descs);
std::string encode_process_description(const ProcessDescription& desc);
std::vector<ProcessDescription> parse_process_descriptions(std::string_view bytes);

std::string encode_execute_response(const ExecuteResult& result);
std::string encode_exception_report(const ExceptionReport& report);

/// A response to execute may be a result document or an exception
/// document; the caller learns which by parsing.
ExecuteOutcome parse_execute_response(std::string_view bytes);

ExceptionReport parse_exception_report(std::string_view bytes);

// Shared element builders, exposed for the representation renderers.
xml::Node data_value_to_node(const DataValue& value);
DataValue data_value_from_node(const xml::Node& holder);
xml::Node capabilities_to_node(const ServiceCapabilities& caps);
xml::Node process_descriptions_to_node(const std::vector<ProcessDescription>& descs);
xml::Node execute_response_to_node(const ExecuteResult& result);
xml::Node exception_report_to_node(const ExceptionReport& report);

} // namespace wpsgate::wps

#endif
