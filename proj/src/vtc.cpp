// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/vtc.hpp"

#include <algorithm>
#include <set>

#include "lumen/errors.hpp"
#include "lumen/state.hpp"

namespace lumen::vtc {

std::string_view path_role_name(path_role role) {
    return role == path_role::working ? "working" : "protection";
}

intent::endpoint_assignment assignment_for(const provider_constraints& c, const client_id& client) {
    intent::endpoint_assignment a;
    a.client = client;
    auto it = c.assignments.find(client);
    if (it != c.assignments.end()) a.endpoints = it->second;
    return a;
}

namespace {

std::string vlink_name(const std::string& topology_id, const std::string& intent_id,
                       const endpoint_id& a, const endpoint_id& b) {
    return topology_id + "/" + intent_id + "/" + a.str() + "-" + b.str();
}

std::string topology_object_id(const client_id& c, const std::string& topology_id) {
    return c.str() + "/" + topology_id;
}

// Rebuild the adjacency view without the given links; transit pairs that
// reference removed links disappear with them.
pathcomp::weighted_graph without_links(const pathcomp::weighted_graph& g,
                                       const std::set<link_id>& removed) {
    pathcomp::weighted_graph out;
    for (const auto& v : g.vertex_ids) out.add_vertex(v);
    for (const auto& e : g.edges) {
        if (removed.count(e.id)) continue;
        out.add_edge(e.id, g.vertex_ids[e.u], g.vertex_ids[e.v], e.weight);
    }
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        if (!g.transit[v]) continue;
        std::set<std::pair<link_id, link_id>> pairs;
        for (const auto& [ea, eb] : *g.transit[v]) {
            const link_id& la = g.edges[ea].id;
            const link_id& lb = g.edges[eb].id;
            if (!removed.count(la) && !removed.count(lb)) pairs.emplace(la, lb);
        }
        out.restrict_transit(g.vertex_ids[v], pairs);
    }
    return out;
}

nlohmann::json pair_detail(const endpoint_id& a, const endpoint_id& b) {
    return {{"endpoints", {a.str(), b.str()}}};
}

// Working (and optional protection) paths for one endpoint pair. Throws
// InfeasiblePaths when the requirement cannot be met.
std::vector<supporting_path> compute_paths(const pathcomp::weighted_graph& graph,
                                           const intent::intent_spec& spec, const node_id& src,
                                           const node_id& dst, const endpoint_id& ep_a,
                                           const endpoint_id& ep_b) {
    std::vector<supporting_path> out;
    std::uint32_t want_working = spec.minimum_paths;

    auto infeasible = [&](std::uint32_t needed, std::uint32_t found) -> error {
        auto detail = pair_detail(ep_a, ep_b);
        detail["needed"] = needed;
        detail["found"] = found;
        return error(errc::infeasible_paths,
                     "pair " + ep_a.str() + "-" + ep_b.str() + " needs " + std::to_string(needed) +
                         " paths, found " + std::to_string(found),
                     detail);
    };

    if (spec.disjoint == pathcomp::disjoint_mode::none) {
        auto working = pathcomp::k_shortest(graph, src, dst, want_working);
        if (working.size() < want_working)
            throw infeasible(want_working, static_cast<std::uint32_t>(working.size()));
        for (auto& p : working) out.push_back(supporting_path{std::move(p), path_role::working, {}, {}});
        if (spec.protection) {
            // protection must avoid every working link
            std::set<link_id> used;
            for (const auto& sp : out)
                for (const auto& l : sp.route.links) used.insert(l);
            auto pruned = without_links(graph, used);
            auto prot = pathcomp::shortest_path(pruned, src, dst);
            if (!prot || prot->links.empty()) throw infeasible(want_working + 1, want_working);
            out.push_back(supporting_path{std::move(*prot), path_role::protection, {}, {}});
        }
        return out;
    }

    std::uint32_t k = want_working + (spec.protection ? 1 : 0);
    auto found = pathcomp::disjoint_paths(graph, src, dst, k, spec.disjoint);
    if (!found) {
        std::uint32_t feasible = 0;
        for (std::uint32_t n = k; n-- > 1;) {
            if (pathcomp::disjoint_paths(graph, src, dst, n, spec.disjoint)) {
                feasible = n;
                break;
            }
        }
        if (feasible == 0 && pathcomp::shortest_path(graph, src, dst)) feasible = 1;
        throw infeasible(k, feasible);
    }
    for (std::size_t i = 0; i < found->size(); ++i) {
        path_role role = (spec.protection && i + 1 == found->size()) ? path_role::protection
                                                                     : path_role::working;
        out.push_back(supporting_path{std::move((*found)[i]), role, {}, {}});
    }
    return out;
}

struct reservation_scope {
    hypervisor_state& st;
    std::vector<std::uint64_t> applied;
    bool committed = false;

    explicit reservation_scope(hypervisor_state& s) : st(s) {}
    ~reservation_scope() {
        if (committed) return;
        auto resolve = [this](const link_id& id) -> spectrum::spectrum_state& {
            return st.topology.links.at(id).spectrum;
        };
        for (auto it = applied.rbegin(); it != applied.rend(); ++it)
            spectrum::release_reservation(st.ledger, resolve, *it);
    }
};

realized_topology build_topology(hypervisor_state& st, const client_id& client,
                                 const intent::topology_request& request, const context& ctx,
                                 reservation_scope& scope) {
    auto graph = topo::adjacency_view(st.topology);

    realized_topology rt;
    rt.topology_id = request.topology_id;
    rt.client = client;

    for (const auto& spec : request.intents) {
        rt.per_intent_cap[spec.intent_id] = spec.maximum_active_connections;

        std::vector<endpoint_id> eps = spec.endpoints;
        std::sort(eps.begin(), eps.end());

        for (std::size_t i = 0; i < eps.size(); ++i) {
            for (std::size_t j = i + 1; j < eps.size(); ++j) {
                const endpoint_id& ep_a = eps[i];
                const endpoint_id& ep_b = eps[j];

                auto ita = st.topology.endpoints.find(ep_a);
                auto itb = st.topology.endpoints.find(ep_b);
                if (ita == st.topology.endpoints.end() || itb == st.topology.endpoints.end())
                    throw error(errc::dangling_reference,
                                "endpoint not present in the physical topology",
                                pair_detail(ep_a, ep_b));
                const node_id& src = ita->second.node;
                const node_id& dst = itb->second.node;
                if (src == dst) {
                    auto detail = pair_detail(ep_a, ep_b);
                    detail["needed"] = spec.minimum_paths;
                    detail["found"] = 0;
                    throw error(errc::infeasible_paths,
                                "endpoints " + ep_a.str() + " and " + ep_b.str() +
                                    " attach to the same node; no fiber path exists",
                                detail);
                }

                virtual_link vl;
                vl.id = vlink_name(request.topology_id, spec.intent_id, ep_a, ep_b);
                vl.intent_id = spec.intent_id;
                vl.ep_a = ep_a;
                vl.ep_b = ep_b;
                vl.dedicated_mbps = spec.dedicated_bandwidth_mbps;
                vl.flexible_mbps = spec.flexible_bandwidth_mbps;
                vl.paths = compute_paths(graph, spec, src, dst, ep_a, ep_b);

                for (std::size_t pi = 0; pi < vl.paths.size(); ++pi) {
                    auto& sp = vl.paths[pi];
                    double length = sp.route.cost;

                    std::vector<std::pair<link_id, spectrum::spectrum_state*>> link_states;
                    std::vector<const spectrum::spectrum_state*> link_views;
                    for (const auto& lid : sp.route.links) {
                        auto& fl = st.topology.links.at(lid);
                        link_states.emplace_back(lid, &fl.spectrum);
                        link_views.push_back(&fl.spectrum);
                    }
                    std::string owner_base =
                        client.str() + "/" + vl.id + "/path" + std::to_string(pi);

                    if (spec.dedicated_bandwidth_mbps > 0) {
                        spectrum::demand_sizing sizing;
                        try {
                            sizing = spectrum::slots_for_demand(spec.dedicated_bandwidth_mbps,
                                                                length, ctx.profiles);
                        } catch (const error& e) {
                            if (e.code() != errc::no_feasible_profile) throw;
                            auto detail = pair_detail(ep_a, ep_b);
                            detail["path-length-km"] = length;
                            throw error(errc::no_feasible_profile,
                                        "pair " + ep_a.str() + "-" + ep_b.str() +
                                            ": no profile reaches " + std::to_string(length) +
                                            " km",
                                        detail);
                        }
                        reservation_id owner{owner_base + "/dedicated"};
                        auto range = spectrum::first_fit(link_views, sizing.slot_count,
                                                         spectrum::reservation_class::dedicated,
                                                         owner);
                        if (!range) {
                            auto detail = pair_detail(ep_a, ep_b);
                            detail["path"] = static_cast<std::uint64_t>(pi);
                            detail["slots"] = sizing.slot_count;
                            throw error(errc::insufficient_spectrum,
                                        "pair " + ep_a.str() + "-" + ep_b.str() + " path " +
                                            std::to_string(pi) + ": no contiguous " +
                                            std::to_string(sizing.slot_count) + " slots",
                                        detail);
                        }
                        auto token = spectrum::apply_reservation(
                            st.ledger, link_states, *range,
                            spectrum::reservation_class::dedicated, owner);
                        scope.applied.push_back(token);
                        sp.dedicated = path_reservation{token, *range, sizing.profile.name};
                    }

                    if (spec.flexible_bandwidth_mbps > 0) {
                        // best-effort: shortfall instead of failure
                        bool placed = false;
                        try {
                            auto sizing = spectrum::slots_for_demand(
                                spec.flexible_bandwidth_mbps, length, ctx.profiles);
                            reservation_id owner{owner_base + "/flexible"};
                            auto range = spectrum::first_fit(link_views, sizing.slot_count,
                                                             spectrum::reservation_class::shared,
                                                             owner);
                            if (range) {
                                auto token = spectrum::apply_reservation(
                                    st.ledger, link_states, *range,
                                    spectrum::reservation_class::shared, owner);
                                scope.applied.push_back(token);
                                sp.flexible = path_reservation{token, *range, sizing.profile.name};
                                placed = true;
                            }
                        } catch (const error& e) {
                            if (e.code() != errc::no_feasible_profile) throw;
                        }
                        if (!placed) vl.flexible_shortfall = true;
                    }
                }
                rt.links.push_back(std::move(vl));
            }
        }
    }
    return rt;
}

void delete_connections(hypervisor_state& st, const client_id& client,
                        const std::string& topology_id, bool emit_events) {
    for (auto& [cid, conn] : st.connections) {
        if (conn.client != client || conn.topology_id != topology_id) continue;
        if (conn.state != view::connection_state::active) continue;
        conn.state = view::connection_state::deleted;
        if (emit_events)
            push_event(st, view::event_kind::object_deleted, "connection", conn.id);
    }
}

std::size_t active_connection_count(const hypervisor_state& st, const client_id& client,
                                    const std::string& topology_id) {
    std::size_t n = 0;
    for (const auto& [cid, conn] : st.connections)
        if (conn.client == client && conn.topology_id == topology_id &&
            conn.state == view::connection_state::active)
            ++n;
    return n;
}

void teardown_core(hypervisor_state& st, const client_id& client, const std::string& topology_id,
                   bool force, bool emit_events) {
    const installed_topology* inst = find_installed(st, client, topology_id);
    if (inst == nullptr)
        throw error(errc::unknown_topology, "topology " + topology_id + " is not installed");

    std::size_t active = active_connection_count(st, client, topology_id);
    if (active > 0 && !force)
        throw error(errc::active_connections_exist,
                    std::to_string(active) + " connection(s) still active on " + topology_id,
                    {{"active-connections", active}});

    delete_connections(st, client, topology_id, emit_events);

    auto resolve = [&st](const link_id& id) -> spectrum::spectrum_state& {
        return st.topology.links.at(id).spectrum;
    };
    for (const auto& vl : inst->realized.links) {
        for (const auto& sp : vl.paths) {
            if (sp.dedicated) spectrum::release_reservation(st.ledger, resolve, sp.dedicated->token);
            if (sp.flexible) spectrum::release_reservation(st.ledger, resolve, sp.flexible->token);
        }
        if (emit_events)
            push_event(st, view::event_kind::object_deleted, "virtual-link",
                       client.str() + "/" + vl.id);
    }
    if (emit_events)
        push_event(st, view::event_kind::object_deleted, "topology",
                   topology_object_id(client, topology_id));

    st.installed[client].erase(topology_id);
    if (st.installed[client].empty()) st.installed.erase(client);
}

void check_request(const hypervisor_state& st, const client_id& client,
                   const intent::topology_request& request, const context& ctx) {
    auto assignment = assignment_for(ctx.constraints, client);
    auto violations = intent::validate_request(request, assignment);
    if (!violations.empty()) {
        nlohmann::json detail = nlohmann::json::array();
        for (const auto& v : violations)
            detail.push_back({{"rule", v.rule}, {"subject", v.subject}, {"message", v.message}});
        throw error(errc::schema_violation,
                    "request failed validation: " + violations.front().rule + " on " +
                        violations.front().subject,
                    {{"violations", detail}});
    }
    for (const auto& ep : assignment.endpoints) {
        if (!st.topology.endpoints.count(ep))
            throw error(errc::dangling_reference,
                        "assigned endpoint " + ep.str() + " missing from the physical topology");
    }
}

}  // namespace

const realized_topology& realize(hypervisor_state& st, const client_id& client,
                                 const intent::topology_request& request, const context& ctx) {
    check_request(st, client, request, ctx);
    if (find_installed(st, client, request.topology_id))
        throw error(errc::already_installed,
                    "topology " + request.topology_id + " is already installed");

    reservation_scope scope(st);
    realized_topology rt = build_topology(st, client, request, ctx, scope);
    scope.committed = true;

    const auto& created =
        push_event(st, view::event_kind::object_created, "topology",
                   topology_object_id(client, request.topology_id));
    rt.created_at = created.seq;
    for (const auto& vl : rt.links)
        push_event(st, view::event_kind::object_created, "virtual-link", client.str() + "/" + vl.id);

    auto& slot = st.installed[client][request.topology_id];
    slot.request = request;
    slot.realized = std::move(rt);
    return slot.realized;
}

void teardown(hypervisor_state& st, const client_id& client, const std::string& topology_id,
              bool force, const context&) {
    teardown_core(st, client, topology_id, force, true);
}

const realized_topology& replace(hypervisor_state& st, const client_id& client,
                                 const intent::topology_request& request, const context& ctx) {
    check_request(st, client, request, ctx);
    const installed_topology* old_inst = find_installed(st, client, request.topology_id);
    if (old_inst == nullptr)
        throw error(errc::unknown_topology,
                    "topology " + request.topology_id + " is not installed");
    realized_topology old_rt = old_inst->realized;

    std::vector<std::string> dying_connections;
    for (const auto& [cid, conn] : st.connections)
        if (conn.client == client && conn.topology_id == request.topology_id &&
            conn.state == view::connection_state::active)
            dying_connections.push_back(cid);

    // Work on a scratch copy: if the new request cannot be realized, the old
    // topology stays untouched.
    hypervisor_state scratch = st;
    teardown_core(scratch, client, request.topology_id, true, false);

    reservation_scope scope(scratch);
    realized_topology rt = build_topology(scratch, client, request, ctx, scope);
    scope.committed = true;
    rt.created_at = old_rt.created_at;

    st = std::move(scratch);

    // Diff events: connections died, removed links deleted, surviving links
    // report changed fields, added links created.
    for (const auto& cid : dying_connections)
        push_event(st, view::event_kind::object_deleted, "connection", cid);

    std::map<std::string, const virtual_link*> old_links, new_links;
    for (const auto& vl : old_rt.links) old_links.emplace(vl.id, &vl);

    auto& slot = st.installed[client][request.topology_id];
    slot.request = request;
    slot.realized = std::move(rt);
    for (const auto& vl : slot.realized.links) new_links.emplace(vl.id, &vl);

    for (const auto& [id, vl] : old_links) {
        if (!new_links.count(id))
            push_event(st, view::event_kind::object_deleted, "virtual-link",
                       client.str() + "/" + id);
    }
    for (const auto& vl : slot.realized.links) {
        auto it = old_links.find(vl.id);
        if (it == old_links.end()) {
            push_event(st, view::event_kind::object_created, "virtual-link",
                       client.str() + "/" + vl.id);
            continue;
        }
        const virtual_link& prev = *it->second;
        auto changed = [&](const char* field, nlohmann::json oldv, nlohmann::json newv) {
            push_event(st, view::event_kind::value_changed, "virtual-link",
                       client.str() + "/" + vl.id,
                       view::value_change{field, std::move(oldv), std::move(newv)});
        };
        if (prev.flexible_shortfall != vl.flexible_shortfall)
            changed("flexible-shortfall", prev.flexible_shortfall, vl.flexible_shortfall);
        if (prev.dedicated_mbps != vl.dedicated_mbps)
            changed("available-dedicated-bandwidth", prev.dedicated_mbps, vl.dedicated_mbps);
        if (prev.flexible_mbps != vl.flexible_mbps)
            changed("available-flexible-bandwidth", prev.flexible_mbps, vl.flexible_mbps);
        if (prev.paths.size() != vl.paths.size())
            changed("path-count", prev.paths.size(), vl.paths.size());
    }
    return slot.realized;
}

}  // namespace lumen::vtc
