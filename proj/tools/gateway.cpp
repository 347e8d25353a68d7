// Resource-oriented HTTP gateway in front of a WPS backend.

#include "wpsgate/gateway/service.hpp"
#include "wpsgate/http/httplib_adapter.hpp"

#include <CLI11.hpp>

#include <cstdio>

int main(int argc, char** argv) {
    CLI::App app{"resource-oriented gateway for a WPS backend"};
    wpsgate::gateway::Config config;
    config.port = 8080;
    app.add_option("--port", config.port, "listen port");
    app.add_option("--backend", config.backend_url, "backend endpoint URL")->required();
    app.add_option("--base-uri", config.base_uri,
                   "public base URI of this gateway (default http://127.0.0.1:PORT)");
    app.add_option("--cache-ttl", config.cache_ttl_seconds, "catalog TTL in seconds")
        ->check(CLI::PositiveNumber);
    app.add_option("--retry-after", config.retry_after_seconds,
                   "Retry-After for busy/unavailable answers")
        ->check(CLI::PositiveNumber);
    std::string journal;
    app.add_option("--journal", journal, "append-only job journal path");
    CLI11_PARSE(app, argc, argv);

    if (config.base_uri.empty())
        config.base_uri = "http://127.0.0.1:" + std::to_string(config.port);
    if (!journal.empty()) config.journal_path = journal;

    try {
        wpsgate::gateway::Service service(
            config, wpsgate::gateway::make_http_exchange(config.backend_url));

        httplib::Server server;
        wpsgate::http::attach(server, service);
        std::printf("gateway listening on %s (backend %s)\n", config.base_uri.c_str(),
                    config.backend_url.c_str());
        std::fflush(stdout);
        if (!server.listen("0.0.0.0", config.port)) {
            std::fprintf(stderr, "could not listen on port %d\n", config.port);
            return 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "gateway: %s\n", e.what());
        return 1;
    }
    return 0;
}
