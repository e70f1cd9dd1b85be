// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lumen/ids.hpp"

namespace lumen::pathcomp {

// Undirected weighted multigraph over node ids. Edges carry the fiber link id.
// A vertex may restrict transit: a path entering via edge e may leave via edge
// f only if the unordered pair {e, f} is allowed. Vertices without a
// restriction allow every transit. Entering or leaving a path at a vertex
// (add/drop) is never restricted.
struct weighted_graph {
    struct edge {
        link_id id;
        std::uint32_t u = 0;
        std::uint32_t v = 0;
        double weight = 0;
    };

    std::vector<node_id> vertex_ids;
    std::map<node_id, std::uint32_t> vertex_index;
    std::vector<edge> edges;
    std::vector<std::optional<std::set<std::pair<std::uint32_t, std::uint32_t>>>> transit;

    std::uint32_t add_vertex(const node_id& id);
    std::uint32_t add_edge(const link_id& id, const node_id& u, const node_id& v, double weight);
    // Pairs are unordered pairs of link ids incident to the vertex. Exhaustive:
    // anything unlisted is forbidden.
    void restrict_transit(const node_id& vertex, const std::set<std::pair<link_id, link_id>>& allowed);

    std::optional<std::uint32_t> find_vertex(const node_id& id) const;
    std::uint32_t require_vertex(const node_id& id) const;  // throws UnknownNode
    bool has_restrictions() const;

    std::size_t vertex_count() const { return vertex_ids.size(); }
    std::size_t edge_count() const { return edges.size(); }
};

struct path {
    std::vector<node_id> nodes;
    std::vector<link_id> links;
    double cost = 0;

    bool operator==(const path&) const = default;
    std::size_t hop_count() const { return links.size(); }
};

enum class disjoint_mode { none, link, node };

std::string_view disjoint_mode_name(disjoint_mode mode);
std::optional<disjoint_mode> disjoint_mode_from_name(std::string_view name);

// Structural check: consecutive nodes joined by the named links, loopless,
// transit restrictions respected, cost equal to the sum of link weights.
bool path_valid(const weighted_graph& g, const path& p);

// Minimum-cost loopless path; ties broken by lexicographically smallest link
// id sequence. src == dst yields the trivial single-node path.
std::optional<path> shortest_path(const weighted_graph& g, const node_id& src, const node_id& dst);

// Up to k loopless paths in nondecreasing cost order (Yen), pairwise distinct.
std::vector<path> k_shortest(const weighted_graph& g, const node_id& src, const node_id& dst,
                             std::uint32_t k);

// k pairwise disjoint paths minimizing the total cost of the whole set
// (successive shortest paths / Bhandari; node mode via vertex splitting).
// Returns nullopt when no k-disjoint set exists. mode none is invalid here.
std::optional<std::vector<path>> disjoint_paths(const weighted_graph& g, const node_id& src,
                                                const node_id& dst, std::uint32_t k,
                                                disjoint_mode mode);

}  // namespace lumen::pathcomp
