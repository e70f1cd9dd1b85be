// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <set>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lumen/ids.hpp"
#include "lumen/pathcomp.hpp"
#include "lumen/spectrum.hpp"

namespace lumen::topo {

enum class node_kind { roadm, terminal };

std::string_view node_kind_name(node_kind kind);

// Valid interconnections between a node's link TPs. Ordered pairs, kept
// symmetric: (a,b) allowed iff (b,a) allowed. An omitted matrix allows every
// transit; an explicit one is exhaustive.
struct connectivity_matrix {
    bool allow_all = true;
    std::set<std::pair<tp_id, tp_id>> allowed;

    bool transit_allowed(const tp_id& in, const tp_id& out) const {
        if (in == out) return false;
        if (allow_all) return true;
        return allowed.count({in, out}) > 0;
    }

    bool operator==(const connectivity_matrix&) const = default;
};

struct phys_node {
    node_id id;
    node_kind kind = node_kind::roadm;
    std::vector<tp_id> tps;
    connectivity_matrix connectivity;

    bool operator==(const phys_node&) const = default;
};

struct attachment {
    node_id node;
    tp_id tp;

    auto operator<=>(const attachment&) const = default;
};

// Bidirectional fiber with one shared spectrum state.
struct fiber_link {
    link_id id;
    attachment a;
    attachment b;
    double length_km = 0;
    spectrum::spectrum_state spectrum;

    bool operator==(const fiber_link&) const = default;
};

struct physical_topology {
    std::map<node_id, phys_node> nodes;
    std::map<link_id, fiber_link> links;
    std::map<endpoint_id, attachment> endpoints;

    bool operator==(const physical_topology&) const = default;
};

struct parse_options {
    std::uint32_t slots_per_link = spectrum::default_slots_per_link;
    // When false, structural decoding still happens but semantic validation is
    // left to the caller (used by the CLI to report every violation at once).
    bool validate = true;
};

// Physical Topology File ingestion. Rejects anything validate_topology would
// flag, so parsed topologies always satisfy every invariant.
physical_topology parse_physical_topology(std::string_view document,
                                          const parse_options& options = {});
physical_topology topology_from_json(const nlohmann::json& doc, const parse_options& options = {});

// Canonical Physical Topology File form of the structural content (spectrum
// occupancy is runtime state and not part of the file format).
nlohmann::ordered_json serialize_topology(const physical_topology& t);

std::vector<violation> validate_topology(const physical_topology& t);

// Undirected weighted graph over node ids: one edge per fiber link weighted by
// length, with per-node transit restrictions compiled from the connectivity
// matrices. Throws InvalidTopology when validate_topology is non-empty.
pathcomp::weighted_graph adjacency_view(const physical_topology& t);

}  // namespace lumen::topo
