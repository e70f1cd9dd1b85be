// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/service.hpp"

#include <csignal>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <httplib.h>

#include "lumen/errors.hpp"
#include "lumen/snapshot.hpp"
#include "lumen/virt_view.hpp"
#include "lumen/vtc.hpp"

namespace lumen::service {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw error(errc::invalid_args, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

hypervisor::hypervisor(service_config cfg) : cfg_(std::move(cfg)) {
    topo::parse_options opts;
    opts.slots_per_link = cfg_.slots_per_link;
    auto topology = topo::parse_physical_topology(slurp(cfg_.physical_topology_path), opts);
    constraints_ = load_constraints(cfg_.provider_constraints_path, topology);
    fingerprint_ = config_fingerprint(cfg_, topology, constraints_);

    if (!cfg_.snapshot_path.empty() && std::filesystem::exists(cfg_.snapshot_path)) {
        auto st = load_snapshot(slurp(cfg_.snapshot_path), fingerprint_, topology, cfg_.profiles);
        current_ = std::make_shared<const hypervisor_state>(std::move(st));
    } else {
        hypervisor_state st;
        st.topology = std::move(topology);
        current_ = std::make_shared<const hypervisor_state>(std::move(st));
    }
}

std::shared_ptr<const hypervisor_state> hypervisor::snapshot() const {
    std::lock_guard lk(ptr_mu_);
    return current_;
}

template <class Fn>
auto hypervisor::mutate(Fn&& fn) {
    std::lock_guard write(write_mu_);
    auto working = std::make_shared<hypervisor_state>(*snapshot());
    auto result = fn(*working);
    {
        std::lock_guard lk(ptr_mu_);
        current_ = std::move(working);
    }
    save();
    return result;
}

hypervisor::install_result hypervisor::install_or_replace(const client_id& client,
                                                          const intent::topology_request& request) {
    auto ctx = make_context();
    return mutate([&](hypervisor_state& st) {
        install_result r;
        r.created = find_installed(st, client, request.topology_id) == nullptr;
        const auto& rt = r.created ? vtc::realize(st, client, request, ctx)
                                   : vtc::replace(st, client, request, ctx);
        r.virtual_link_count = rt.links.size();
        return r;
    });
}

void hypervisor::teardown(const client_id& client, const std::string& topology_id, bool force) {
    auto ctx = make_context();
    mutate([&](hypervisor_state& st) {
        vtc::teardown(st, client, topology_id, force, ctx);
        return 0;
    });
}

view::connection hypervisor::activate(const client_id& client, const std::string& topology_id,
                                      const std::string& virtual_link_id) {
    return mutate([&](hypervisor_state& st) {
        return view::activate_connection(st, client, topology_id, virtual_link_id);
    });
}

void hypervisor::deactivate(const std::string& connection_id) {
    mutate([&](hypervisor_state& st) {
        view::deactivate_connection(st, connection_id);
        return 0;
    });
}

client_id hypervisor::resolve_client(const std::string& header_value) const {
    if (!header_value.empty()) return client_id{header_value};
    if (constraints_.assignments.size() == 1) return constraints_.assignments.begin()->first;
    throw error(errc::missing_client,
                "Client-Id header required when more than one client is configured");
}

void hypervisor::save() const {
    if (cfg_.snapshot_path.empty()) return;
    write_snapshot_file(cfg_.snapshot_path, *snapshot(), fingerprint_);
}

namespace {

int status_for(errc code) {
    switch (code) {
        case errc::malformed_document:
        case errc::schema_violation:
        case errc::duplicate_key:
        case errc::invalid_args:
        case errc::missing_client:
            return 400;
        case errc::unknown_topology:
        case errc::unknown_link:
        case errc::unknown_connection:
        case errc::unknown_node:
        case errc::unknown_token:
            return 404;
        case errc::infeasible_paths:
        case errc::insufficient_spectrum:
        case errc::no_feasible_profile:
        case errc::active_connections_exist:
        case errc::cap_exceeded:
        case errc::already_deleted:
        case errc::already_installed:
        case errc::conflicting_reservation:
        case errc::double_release:
            return 409;
        default:
            return 500;
    }
}

void reply_json(httplib::Response& res, int status, const nlohmann::ordered_json& body) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
}

void reply_error(httplib::Response& res, const error& e) {
    nlohmann::ordered_json body;
    body["error"] = std::string(errc_name(e.code()));
    body["message"] = e.what();
    if (!e.details().empty()) body["details"] = e.details();
    reply_json(res, status_for(e.code()), body);
}

template <class Fn>
void guarded(httplib::Response& res, Fn&& fn) {
    try {
        fn();
    } catch (const error& e) {
        reply_error(res, e);
    } catch (const std::exception& e) {
        nlohmann::ordered_json body;
        body["error"] = "Internal";
        body["message"] = e.what();
        reply_json(res, 500, body);
    }
}

nlohmann::ordered_json connection_to_json(const view::connection& c) {
    nlohmann::ordered_json j;
    j["connection-id"] = c.id;
    j["topology-id"] = c.topology_id;
    j["intent-id"] = c.intent_id;
    j["virtual-link-id"] = c.virtual_link_id;
    j["state"] = c.state == view::connection_state::active ? "active" : "deleted";
    j["activated-at"] = c.activated_at;
    return j;
}

std::vector<intent::topology_request> installed_requests(const hypervisor_state& st,
                                                         const client_id& client) {
    std::vector<intent::topology_request> out;
    auto it = st.installed.find(client);
    if (it == st.installed.end()) return out;
    for (const auto& [tid, inst] : it->second) out.push_back(inst.request);
    return out;
}

}  // namespace

void register_routes(httplib::Server& server, hypervisor& hv) {
    auto client_of = [&hv](const httplib::Request& req) {
        return hv.resolve_client(req.get_header_value("Client-Id"));
    };

    server.Get("/restconf/data/endpoints",
               [&hv, client_of](const httplib::Request& req, httplib::Response& res) {
                   guarded(res, [&] {
                       auto client = client_of(req);
                       auto assignment = vtc::assignment_for(hv.constraints(), client);
                       nlohmann::ordered_json body;
                       body["endpoints"] = intent::endpoints_subtree(assignment.endpoints);
                       reply_json(res, 200, body);
                   });
               });

    server.Get("/restconf/data/topologies",
               [&hv, client_of](const httplib::Request& req, httplib::Response& res) {
                   guarded(res, [&] {
                       auto client = client_of(req);
                       auto st = hv.snapshot();
                       nlohmann::ordered_json body;
                       body["topologies"] =
                           intent::topologies_subtree(installed_requests(*st, client));
                       reply_json(res, 200, body);
                   });
               });

    server.Put(R"(/restconf/data/topologies/topology=(.+))",
               [&hv, client_of](const httplib::Request& req, httplib::Response& res) {
                   guarded(res, [&] {
                       auto client = client_of(req);
                       auto request = intent::decode_request(req.body);
                       if (request.topology_id != req.matches[1].str())
                           throw error(errc::invalid_args,
                                       "topology-id in the body (\"" + request.topology_id +
                                           "\") differs from the URL (\"" + req.matches[1].str() +
                                           "\")");
                       auto result = hv.install_or_replace(client, request);
                       nlohmann::ordered_json body;
                       body["topology-id"] = request.topology_id;
                       body["virtual-link-count"] = result.virtual_link_count;
                       body["created"] = result.created;
                       reply_json(res, result.created ? 201 : 200, body);
                   });
               });

    server.Delete(R"(/restconf/data/topologies/topology=(.+))",
                  [&hv, client_of](const httplib::Request& req, httplib::Response& res) {
                      guarded(res, [&] {
                          auto client = client_of(req);
                          bool force = req.has_param("force") &&
                                       req.get_param_value("force") != "false";
                          hv.teardown(client, req.matches[1].str(), force);
                          res.status = 204;
                      });
                  });

    server.Get(R"(/views/topology=([^/]+))",
               [&hv, client_of](const httplib::Request& req, httplib::Response& res) {
                   guarded(res, [&] {
                       auto client = client_of(req);
                       auto st = hv.snapshot();
                       const installed_topology* inst =
                           find_installed(*st, client, req.matches[1].str());
                       if (inst == nullptr)
                           throw error(errc::unknown_topology,
                                       "topology " + req.matches[1].str() + " is not installed");
                       bool full = req.get_param_value("full") == "true";
                       bool hide = hv.constraints().hide_interior && !full;
                       auto v = view::render_view(inst->realized, st->topology, hide);
                       if (req.get_param_value("format") == "dot") {
                           res.status = 200;
                           res.set_content(view::view_to_dot(v), "text/vnd.graphviz");
                       } else {
                           reply_json(res, 200, view::view_to_json(v));
                       }
                   });
               });

    server.Post(R"(/views/topology=([^/]+)/connections)",
                [&hv, client_of](const httplib::Request& req, httplib::Response& res) {
                    guarded(res, [&] {
                        auto client = client_of(req);
                        auto body = nlohmann::json::parse(req.body, nullptr, false);
                        if (body.is_discarded() || !body.is_object() ||
                            !body.contains("virtual-link-id") ||
                            !body["virtual-link-id"].is_string())
                            throw error(errc::malformed_document,
                                        "body must be {\"virtual-link-id\": \"...\"}");
                        auto conn = hv.activate(client, req.matches[1].str(),
                                                body["virtual-link-id"].get<std::string>());
                        reply_json(res, 201, connection_to_json(conn));
                    });
                });

    server.Delete(R"(/connections/(.+))",
                  [&hv](const httplib::Request& req, httplib::Response& res) {
                      guarded(res, [&] {
                          hv.deactivate(req.matches[1].str());
                          res.status = 204;
                      });
                  });

    server.Get("/events", [&hv](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            std::uint64_t since = 0;
            std::uint32_t limit = 1000;
            if (req.has_param("since")) since = std::stoull(req.get_param_value("since"));
            if (req.has_param("limit")) limit = static_cast<std::uint32_t>(
                std::stoul(req.get_param_value("limit")));
            if (limit == 0) throw error(errc::invalid_args, "limit must be positive");
            auto st = hv.snapshot();
            nlohmann::ordered_json body;
            body["events"] = nlohmann::ordered_json::array();
            for (const auto& e : view::poll_events(*st, since, limit))
                body["events"].push_back(view::event_to_json(e));
            reply_json(res, 200, body);
        });
    });
}

namespace {
httplib::Server* running_server = nullptr;
void stop_handler(int) {
    if (running_server) running_server->stop();
}
}  // namespace

int run_server(const service_config& cfg) {
    hypervisor hv(cfg);
    httplib::Server server;
    register_routes(server, hv);

    if (!server.bind_to_port(cfg.listen_address, cfg.listen_port))
        throw error(errc::bind_failure, "cannot bind " + cfg.listen_address + ":" +
                                            std::to_string(cfg.listen_port));
    running_server = &server;
    std::signal(SIGINT, stop_handler);
    std::signal(SIGTERM, stop_handler);

    std::fprintf(stderr, "lumen: serving on %s:%d\n", cfg.listen_address.c_str(),
                 cfg.listen_port);
    server.listen_after_bind();
    running_server = nullptr;
    hv.save();
    std::fprintf(stderr, "lumen: snapshot written, bye\n");
    return 0;
}

}  // namespace lumen::service
