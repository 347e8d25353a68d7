#ifndef WPSGATE_REST_RENDER_HPP
#define WPSGATE_REST_RENDER_HPP

#include "wpsgate/rest/links.hpp"
#include "wpsgate/rest/negotiate.hpp"
#include "wpsgate/rest/resource.hpp"
#include "wpsgate/wps/types.hpp"

#include <ctime>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wpsgate::rest {

// Views are the media-type-independent payloads behind a resource.

struct EntryView {
    std::string title;
};

struct ProcessListView {
    std::string title;
    std::string provider;
    std::vector<wps::ProcessBrief> processes;
};

struct ProcessView {
    wps::ProcessDescription description;
};

struct JobBrief {
    std::string id;
    std::string process_id;
    JobPhase phase = JobPhase::accepted;
};

struct JobListView {
    std::vector<JobBrief> jobs;
};

struct JobView {
    std::string id;
    std::string process_id;
    JobPhase phase = JobPhase::accepted;
    long long created_ms = 0;
    long long updated_ms = 0;
    std::optional<wps::ExceptionEntry> error;
};

struct ResultView {
    wps::ExecuteResult result;
};

struct ProblemView {
    std::string code;
    std::optional<std::string> locator;
    std::optional<std::string> text;
    int status = 500;
};

using ResourceView = std::variant<EntryView, ProcessListView, ProcessView, JobListView,
                                  JobView, ResultView, ProblemView>;

/// Negotiated, self-describing message: body plus validators plus the
/// links that are also embedded in the body.
struct Representation {
    std::string media_type;
    std::string body;
    std::vector<TypedLink> links;
    std::string etag;
    std::time_t last_modified = 0;
};

/// Render a view in one of the supported media types.
///   application/json  {"data": ..., "links": [{"rel","href",...}]}
///   application/xml   protocol document shape with appended <link/> elements
///   text/html         readable page; every link is an anchor with a rel
/// The etag is the strong hash of the rendered body.
Representation render(const ResourceId& id, const ResourceView& view,
                      const std::string& media_type, std::vector<TypedLink> links,
                      std::time_t last_modified);

/// Recover embedded links from a rendered body (JSON envelope array, XML
/// link elements, HTML anchors). Unknown or unparseable bodies yield {}.
/// Also understands foreign documents well enough for auditing.
std::vector<TypedLink> extract_links(const std::string& media_type, std::string_view body);

} // namespace wpsgate::rest

#endif
