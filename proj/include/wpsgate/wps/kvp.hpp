#ifndef WPSGATE_WPS_KVP_HPP
#define WPSGATE_WPS_KVP_HPP

#include "wpsgate/wps/types.hpp"

#include <string>
#include <string_view>

namespace wpsgate::wps {

/// Encode a request as a URI query string ("URI tunneling").
///
/// Key order is canonical: service, request, then the remaining keys
/// alphabetically. Values are percent-encoded. Execute inputs ride in a
/// single `datainputs` key: entries separated by `;`, each
/// `name=value@attr=value...`, with every component percent-encoded once
/// more inside that grammar.
///
/// Throws ProtocolError{unencodable_request} for Execute requests that
/// embed a complex value by body: the query string carries only
/// literals, bounding boxes and href references.
std::string encode_kvp(const OperationRequest& req);

/// Inverse of encode_kvp on its range. Keys and the `request`/`service`
/// values match case-insensitively; a leading '?' is tolerated.
///
/// Throws ProtocolError{missing_parameter} when `request`, `service` or
/// a variant-required key is absent, {unknown_operation} for an
/// unrecognized `request` value, and {invalid_parameter} for entries
/// that do not parse.
OperationRequest parse_kvp(std::string_view query);

} // namespace wpsgate::wps

#endif
