// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "lumen/errors.hpp"
#include "lumen/intent.hpp"
#include "lumen/phys_topology.hpp"
#include "lumen/service.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw lumen::error(lumen::errc::invalid_args, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string encode_path_segment(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xf];
        }
    }
    return out;
}

int print_response(const httplib::Result& result) {
    if (!result) {
        std::cerr << "error: no response from server (" << httplib::to_string(result.error())
                  << ")\n";
        return 1;
    }
    if (!result->body.empty()) std::cout << result->body;
    if (result->status >= 200 && result->status < 300) return 0;
    std::cerr << "error: HTTP " << result->status << "\n";
    return 1;
}

int cmd_serve(const std::string& config_path) {
    auto cfg = lumen::service::load_config(config_path);
    return lumen::service::run_server(cfg);
}

int cmd_validate(const std::string& phys_path) {
    lumen::topo::parse_options opts;
    opts.validate = false;
    auto t = lumen::topo::parse_physical_topology(slurp(phys_path), opts);
    auto violations = lumen::topo::validate_topology(t);
    if (violations.empty()) {
        std::cout << "OK: " << t.nodes.size() << " nodes, " << t.links.size() << " links, "
                  << t.endpoints.size() << " endpoints\n";
        return 0;
    }
    for (const auto& v : violations)
        std::cout << v.rule << " at " << v.subject << ": " << v.message << "\n";
    return 1;
}

int cmd_submit(const std::string& server, const std::string& request_path,
               const std::string& client) {
    std::string body = slurp(request_path);
    auto request = lumen::intent::decode_request(body);  // client-side sanity check

    httplib::Client http(server);
    httplib::Headers headers;
    if (!client.empty()) headers.emplace("Client-Id", client);
    auto res = http.Put("/restconf/data/topologies/topology=" +
                            encode_path_segment(request.topology_id),
                        headers, body, "application/json");
    return print_response(res);
}

int cmd_show(const std::string& server, const std::string& topology, const std::string& client,
             bool dot, bool full) {
    httplib::Client http(server);
    httplib::Headers headers;
    if (!client.empty()) headers.emplace("Client-Id", client);
    std::string target = "/views/topology=" + encode_path_segment(topology);
    std::string sep = "?";
    if (dot) {
        target += sep + "format=dot";
        sep = "&";
    }
    if (full) target += sep + "full=true";
    return print_response(http.Get(target, headers));
}

int cmd_events(const std::string& server, std::uint64_t since, std::uint32_t limit) {
    httplib::Client http(server);
    return print_response(http.Get("/events?since=" + std::to_string(since) +
                                   "&limit=" + std::to_string(limit)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lumen - optical network hypervisor with a virtual topology intent interface"};
    app.require_subcommand(1);

    std::string config_path, phys_path, server_url, request_path, topology_id, client;
    std::uint64_t since = 0;
    std::uint32_t limit = 1000;
    bool dot = false, full = false;

    auto* serve = app.add_subcommand("serve", "run the hypervisor service");
    serve->add_option("--config", config_path, "service configuration file");

    auto* validate = app.add_subcommand("validate", "validate a physical topology file");
    validate->add_option("--phys", phys_path, "physical topology file")->required();

    auto* submit = app.add_subcommand("submit", "install or replace a virtual topology request");
    submit->add_option("--server", server_url, "service base URL")->required();
    submit->add_option("--request", request_path, "topology request file")->required();
    submit->add_option("--client", client, "Client-Id header value");

    auto* show = app.add_subcommand("show", "fetch a virtual topology view");
    show->add_option("--server", server_url, "service base URL")->required();
    show->add_option("--topology", topology_id, "topology id")->required();
    show->add_option("--client", client, "Client-Id header value");
    show->add_flag("--dot", dot, "render as Graphviz DOT");
    show->add_flag("--full", full, "operator view: include interior detail");

    auto* events = app.add_subcommand("events", "poll change notifications");
    events->add_option("--server", server_url, "service base URL")->required();
    events->add_option("--since", since, "return events with seq greater than this");
    events->add_option("--limit", limit, "maximum number of events");

    CLI11_PARSE(app, argc, argv);

    try {
        if (serve->parsed()) {
            // LUMEN_CONFIG overrides --config
            if (const char* env = std::getenv("LUMEN_CONFIG")) config_path = env;
            if (config_path.empty()) {
                std::cerr << "error: serve needs --config or LUMEN_CONFIG\n";
                return 1;
            }
            return cmd_serve(config_path);
        }
        if (validate->parsed()) return cmd_validate(phys_path);
        if (submit->parsed()) return cmd_submit(server_url, request_path, client);
        if (show->parsed()) return cmd_show(server_url, topology_id, client, dot, full);
        if (events->parsed()) return cmd_events(server_url, since, limit);
    } catch (const lumen::error& e) {
        std::cerr << "error: " << lumen::errc_name(e.code()) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
