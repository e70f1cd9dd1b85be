// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lumen/ids.hpp"
#include "lumen/phys_topology.hpp"
#include "lumen/vtc.hpp"

namespace lumen {
struct hypervisor_state;
}

namespace lumen::view {

enum class event_kind { object_created, object_deleted, value_changed };

std::string_view event_kind_name(event_kind kind);
event_kind event_kind_from_name(std::string_view name);

struct value_change {
    std::string field;
    nlohmann::json old_value;
    nlohmann::json new_value;

    bool operator==(const value_change&) const = default;
};

struct event {
    std::uint64_t seq = 0;  // strictly increasing, gap-free
    event_kind kind = event_kind::object_created;
    std::string object_type;  // "topology" | "virtual-link" | "connection"
    std::string object_id;
    std::optional<value_change> detail;

    bool operator==(const event&) const = default;
};

nlohmann::ordered_json event_to_json(const event& e);
event event_from_json(const nlohmann::json& j);

enum class connection_state { active, deleted };

struct connection {
    std::string id;
    client_id client;
    std::string topology_id;
    std::string intent_id;
    std::string virtual_link_id;
    connection_state state = connection_state::active;
    std::uint64_t activated_at = 0;

    bool operator==(const connection&) const = default;
};

// Client-facing projection of a realized topology. hide_interior strips the
// supporting node and path details, leaving ids, bandwidths and path counts.
struct view_node {
    endpoint_id id;
    std::optional<topo::attachment> supporting;

    bool operator==(const view_node&) const = default;
};

struct view_path {
    vtc::path_role role = vtc::path_role::working;
    std::vector<node_id> nodes;
    std::vector<link_id> links;
    double length_km = 0;
    std::optional<spectrum::slot_range> dedicated_slots;
    std::optional<spectrum::slot_range> flexible_slots;

    bool operator==(const view_path&) const = default;
};

struct view_link {
    std::string id;
    std::string intent_id;
    endpoint_id a;
    endpoint_id b;
    std::uint64_t available_dedicated_mbps = 0;
    std::uint64_t available_flexible_mbps = 0;
    bool flexible_shortfall = false;
    std::uint32_t path_count = 0;
    std::vector<view_path> paths;  // empty when interior is hidden

    bool operator==(const view_link&) const = default;
};

struct virtual_topology_view {
    std::string topology_id;
    bool interior_hidden = false;
    std::vector<view_node> nodes;
    std::vector<view_link> links;

    bool operator==(const virtual_topology_view&) const = default;
};

virtual_topology_view render_view(const vtc::realized_topology& rt,
                                  const topo::physical_topology& topology, bool hide_interior);
nlohmann::ordered_json view_to_json(const virtual_topology_view& v);
std::string view_to_dot(const virtual_topology_view& v);

// Connection lifecycle over already-reserved resources; no spectrum action.
const connection& activate_connection(hypervisor_state& st, const client_id& client,
                                      const std::string& topology_id,
                                      const std::string& virtual_link_id);
void deactivate_connection(hypervisor_state& st, const std::string& connection_id);

std::vector<event> poll_events(const hypervisor_state& st, std::uint64_t since_seq,
                               std::uint32_t limit);

}  // namespace lumen::view
