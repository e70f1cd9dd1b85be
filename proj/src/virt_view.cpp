// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/virt_view.hpp"

#include <algorithm>
#include <set>

#include "lumen/errors.hpp"
#include "lumen/state.hpp"

namespace lumen::view {

std::string_view event_kind_name(event_kind kind) {
    switch (kind) {
        case event_kind::object_created: return "object-created";
        case event_kind::object_deleted: return "object-deleted";
        case event_kind::value_changed: return "value-changed";
    }
    return "object-created";
}

event_kind event_kind_from_name(std::string_view name) {
    if (name == "object-created") return event_kind::object_created;
    if (name == "object-deleted") return event_kind::object_deleted;
    if (name == "value-changed") return event_kind::value_changed;
    throw error(errc::invalid_args, "unknown event kind: " + std::string(name));
}

nlohmann::ordered_json event_to_json(const event& e) {
    nlohmann::ordered_json j;
    j["seq"] = e.seq;
    j["kind"] = std::string(event_kind_name(e.kind));
    j["object-type"] = e.object_type;
    j["object-id"] = e.object_id;
    if (e.detail) {
        j["detail"] = {{"field", e.detail->field},
                       {"old", e.detail->old_value},
                       {"new", e.detail->new_value}};
    }
    return j;
}

event event_from_json(const nlohmann::json& j) {
    event e;
    e.seq = j.at("seq").get<std::uint64_t>();
    e.kind = event_kind_from_name(j.at("kind").get<std::string>());
    e.object_type = j.at("object-type").get<std::string>();
    e.object_id = j.at("object-id").get<std::string>();
    if (j.contains("detail")) {
        value_change d;
        d.field = j.at("detail").at("field").get<std::string>();
        d.old_value = j.at("detail").at("old");
        d.new_value = j.at("detail").at("new");
        e.detail = std::move(d);
    }
    return e;
}

virtual_topology_view render_view(const vtc::realized_topology& rt,
                                  const topo::physical_topology& topology, bool hide_interior) {
    virtual_topology_view v;
    v.topology_id = rt.topology_id;
    v.interior_hidden = hide_interior;

    std::set<endpoint_id> eps;
    for (const auto& vl : rt.links) {
        eps.insert(vl.ep_a);
        eps.insert(vl.ep_b);
    }
    for (const auto& ep : eps) {
        view_node n;
        n.id = ep;
        if (!hide_interior) {
            auto it = topology.endpoints.find(ep);
            if (it != topology.endpoints.end()) n.supporting = it->second;
        }
        v.nodes.push_back(std::move(n));
    }

    for (const auto& vl : rt.links) {
        view_link l;
        l.id = vl.id;
        l.intent_id = vl.intent_id;
        l.a = vl.ep_a;
        l.b = vl.ep_b;
        l.available_dedicated_mbps = vl.dedicated_mbps;
        l.available_flexible_mbps = vl.flexible_mbps;
        l.flexible_shortfall = vl.flexible_shortfall;
        l.path_count = static_cast<std::uint32_t>(vl.paths.size());
        if (!hide_interior) {
            for (const auto& sp : vl.paths) {
                view_path p;
                p.role = sp.role;
                p.nodes = sp.route.nodes;
                p.links = sp.route.links;
                p.length_km = sp.route.cost;
                if (sp.dedicated) p.dedicated_slots = sp.dedicated->range;
                if (sp.flexible) p.flexible_slots = sp.flexible->range;
                l.paths.push_back(std::move(p));
            }
        }
        v.links.push_back(std::move(l));
    }
    return v;
}

nlohmann::ordered_json view_to_json(const virtual_topology_view& v) {
    nlohmann::ordered_json j;
    j["topology-id"] = v.topology_id;
    j["interior-hidden"] = v.interior_hidden;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : v.nodes) {
        nlohmann::ordered_json jn;
        jn["node-id"] = n.id.str();
        if (n.supporting) {
            jn["supporting-node"] = n.supporting->node.str();
            jn["supporting-tp"] = n.supporting->tp.str();
        }
        j["nodes"].push_back(std::move(jn));
    }
    j["links"] = nlohmann::ordered_json::array();
    for (const auto& l : v.links) {
        nlohmann::ordered_json jl;
        jl["link-id"] = l.id;
        jl["intent-id"] = l.intent_id;
        jl["endpoints"] = {l.a.str(), l.b.str()};
        jl["available-dedicated-bandwidth"] = l.available_dedicated_mbps;
        jl["available-flexible-bandwidth"] = l.available_flexible_mbps;
        jl["flexible-shortfall"] = l.flexible_shortfall;
        jl["path-count"] = l.path_count;
        if (!v.interior_hidden) {
            jl["supporting-paths"] = nlohmann::ordered_json::array();
            for (const auto& p : l.paths) {
                nlohmann::ordered_json jp;
                jp["role"] = std::string(vtc::path_role_name(p.role));
                jp["length-km"] = p.length_km;
                jp["nodes"] = nlohmann::ordered_json::array();
                for (const auto& n : p.nodes) jp["nodes"].push_back(n.str());
                jp["links"] = nlohmann::ordered_json::array();
                for (const auto& lk : p.links) jp["links"].push_back(lk.str());
                if (p.dedicated_slots)
                    jp["dedicated-slots"] = {{"start", p.dedicated_slots->start},
                                             {"count", p.dedicated_slots->count}};
                if (p.flexible_slots)
                    jp["flexible-slots"] = {{"start", p.flexible_slots->start},
                                            {"count", p.flexible_slots->count}};
                jl["supporting-paths"].push_back(std::move(jp));
            }
        }
        j["links"].push_back(std::move(jl));
    }
    return j;
}

std::string view_to_dot(const virtual_topology_view& v) {
    std::string dot = "graph \"" + v.topology_id + "\" {\n";
    dot += "  layout=neato;\n  overlap=false;\n";
    for (const auto& n : v.nodes) {
        dot += "  \"" + n.id.str() + "\" [shape=circle";
        if (n.supporting) dot += ", xlabel=\"" + n.supporting->node.str() + "\"";
        dot += "];\n";
    }
    for (const auto& l : v.links) {
        dot += "  \"" + l.a.str() + "\" -- \"" + l.b.str() + "\" [label=\"" + l.intent_id + "\\n" +
               std::to_string(l.available_dedicated_mbps) + "+" +
               std::to_string(l.available_flexible_mbps) + " Mbit/s, " +
               std::to_string(l.path_count) + " paths\"";
        if (l.flexible_shortfall) dot += ", style=dashed";
        dot += "];\n";
    }
    dot += "}\n";
    return dot;
}

const connection& activate_connection(hypervisor_state& st, const client_id& client,
                                      const std::string& topology_id,
                                      const std::string& virtual_link_id) {
    const installed_topology* inst = find_installed(st, client, topology_id);
    if (inst == nullptr)
        throw error(errc::unknown_topology, "topology " + topology_id + " is not installed");

    const vtc::virtual_link* link = nullptr;
    for (const auto& vl : inst->realized.links)
        if (vl.id == virtual_link_id) link = &vl;
    if (link == nullptr)
        throw error(errc::unknown_link, "no virtual link " + virtual_link_id + " in " + topology_id);

    std::uint32_t cap = inst->realized.per_intent_cap.at(link->intent_id);
    if (cap > 0) {
        std::uint32_t active = 0;
        for (const auto& [cid, conn] : st.connections)
            if (conn.client == client && conn.topology_id == topology_id &&
                conn.intent_id == link->intent_id && conn.state == connection_state::active)
                ++active;
        if (active >= cap)
            throw error(errc::cap_exceeded,
                        "intent " + link->intent_id + " already has " + std::to_string(active) +
                            " of " + std::to_string(cap) + " active connections",
                        {{"intent-id", link->intent_id}, {"cap", cap}});
    }

    std::string id = "conn-" + std::to_string(st.event_seq + 1);
    const auto& ev = push_event(st, event_kind::object_created, "connection", id);

    connection c;
    c.id = id;
    c.client = client;
    c.topology_id = topology_id;
    c.intent_id = link->intent_id;
    c.virtual_link_id = virtual_link_id;
    c.state = connection_state::active;
    c.activated_at = ev.seq;
    auto [it, inserted] = st.connections.emplace(id, std::move(c));
    return it->second;
}

void deactivate_connection(hypervisor_state& st, const std::string& connection_id) {
    auto it = st.connections.find(connection_id);
    if (it == st.connections.end())
        throw error(errc::unknown_connection, "unknown connection " + connection_id);
    if (it->second.state == connection_state::deleted)
        throw error(errc::already_deleted, "connection " + connection_id + " already deleted");
    it->second.state = connection_state::deleted;
    push_event(st, event_kind::object_deleted, "connection", connection_id);
}

std::vector<event> poll_events(const hypervisor_state& st, std::uint64_t since_seq,
                               std::uint32_t limit) {
    std::vector<event> out;
    for (const auto& e : st.events) {
        if (e.seq <= since_seq) continue;
        out.push_back(e);
        if (out.size() >= limit) break;
    }
    return out;
}

}  // namespace lumen::view
