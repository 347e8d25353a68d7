// Probes an HTTP endpoint for resource-oriented behavior and prints the
// compliance report.

#include "wpsgate/audit/audit.hpp"

#include <CLI11.hpp>

#include <cstdio>

int main(int argc, char** argv) {
    CLI::App app{"REST conformance audit for processing endpoints"};
    std::string url;
    std::string style = "auto";
    std::string format = "table";
    int timeout = 10;
    app.add_option("url", url, "target endpoint URL")->required();
    app.add_option("--style", style, "entry style hint")
        ->check(CLI::IsMember({"auto", "raw-wps", "resource"}));
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "json"}));
    app.add_option("--timeout", timeout, "per-probe timeout in seconds")
        ->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    wpsgate::audit::AuditOptions options;
    options.style = wpsgate::audit::entry_style_from(style).value();
    options.timeout_seconds = timeout;

    wpsgate::audit::ComplianceReport report = wpsgate::audit::run_audit(url, options);
    std::fputs(wpsgate::audit::render_report(report, format).c_str(), stdout);

    return report.style == "unknown" ? 2 : 0;
}
