#ifndef WPSGATE_AUDIT_AUDIT_HPP
#define WPSGATE_AUDIT_AUDIT_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wpsgate::audit {

enum class Verdict { yes, partial, no, error, not_probed };

std::string to_string(Verdict v);
std::optional<Verdict> verdict_from(std::string_view name);

/// no < partial < yes for the improvement ordering; error and
/// informational rows sit outside the scale.
int verdict_rank(Verdict v);

struct ComplianceCheck {
    std::string check_id;          // stable machine name
    std::string table_row;         // human row title
    std::string probe_description;
    Verdict verdict = Verdict::error;
    std::vector<std::string> evidence;

    friend bool operator==(const ComplianceCheck&, const ComplianceCheck&) = default;
};

struct ComplianceReport {
    std::string target;
    std::string style; // raw-wps | resource
    std::string timestamp;
    std::vector<ComplianceCheck> checks;

    std::map<std::string, int> counts() const;
    const ComplianceCheck* find(std::string_view check_id) const;

    friend bool operator==(const ComplianceReport&, const ComplianceReport&) = default;
};

enum class EntryStyle { auto_detect, raw_wps, resource };

std::optional<EntryStyle> entry_style_from(std::string_view name);

struct AuditOptions {
    EntryStyle style = EntryStyle::auto_detect;
    int timeout_seconds = 10;
};

/// Probe battery against an HTTP endpoint: cache validators, verb
/// discipline and operation tunneling, resource identification, content
/// negotiation, hypermedia, status-code use, GET safety. Probes run
/// sequentially and never mutate remote state. When the target is
/// unreachable on first contact every check reports `error`.
ComplianceReport run_audit(const std::string& target, const AuditOptions& options = {});

/// `table` (fixed-width, keyed by row title) or `json` (stable machine
/// format, parse_report_json inverts it).
std::string render_report(const ComplianceReport& report, const std::string& format);
ComplianceReport parse_report_json(std::string_view bytes);

} // namespace wpsgate::audit

#endif
