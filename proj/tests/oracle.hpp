// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

// Test-only brute-force oracles. These reimplement the checked behavior from
// first principles (plain enumeration), independent of the library code paths
// they verify.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "lumen/pathcomp.hpp"
#include "lumen/spectrum.hpp"

namespace oracle {

using lumen::link_id;
using lumen::node_id;
using lumen::pathcomp::disjoint_mode;
using lumen::pathcomp::path;
using lumen::pathcomp::weighted_graph;

namespace detail {

inline void dfs_paths(const weighted_graph& g, std::uint32_t cur, std::uint32_t dst,
                      std::int64_t entry_edge, std::vector<bool>& on_path,
                      std::vector<std::uint32_t>& edge_trail, std::vector<path>& out) {
    if (cur == dst) {
        // emit links and cost; the wrapper fills in the node sequence
        path p;
        for (std::uint32_t ei : edge_trail) {
            p.links.push_back(g.edges[ei].id);
            p.cost += g.edges[ei].weight;
        }
        out.push_back(std::move(p));
        return;
    }
    for (std::uint32_t ei = 0; ei < g.edges.size(); ++ei) {
        const auto& e = g.edges[ei];
        if (e.u != cur && e.v != cur) continue;
        std::uint32_t nxt = e.u == cur ? e.v : e.u;
        if (on_path[nxt]) continue;
        if (entry_edge >= 0 && g.transit[cur].has_value()) {
            auto key = std::make_pair(std::min<std::uint32_t>(entry_edge, ei),
                                      std::max<std::uint32_t>(entry_edge, ei));
            if (!g.transit[cur]->count(key)) continue;
        }
        on_path[nxt] = true;
        edge_trail.push_back(ei);
        dfs_paths(g, nxt, dst, ei, on_path, edge_trail, out);
        edge_trail.pop_back();
        on_path[nxt] = false;
    }
}

}  // namespace detail

// Every simple path from src to dst that honors the transit restrictions,
// sorted by (cost, link sequence).
inline std::vector<path> all_simple_paths(const weighted_graph& g, const node_id& src,
                                          const node_id& dst) {
    std::uint32_t s = g.vertex_index.at(src);
    std::uint32_t d = g.vertex_index.at(dst);
    std::vector<path> out;
    if (s == d) {
        out.push_back(path{{src}, {}, 0.0});
        return out;
    }
    std::vector<bool> on_path(g.vertex_count(), false);
    std::vector<std::uint32_t> trail;
    on_path[s] = true;
    detail::dfs_paths(g, s, d, -1, on_path, trail, out);

    // fill node sequences from the link trails
    for (auto& p : out) {
        p.nodes.assign(1, src);
        std::uint32_t cur = s;
        for (const auto& lid : p.links) {
            for (std::uint32_t ei = 0; ei < g.edges.size(); ++ei) {
                if (g.edges[ei].id != lid) continue;
                if (g.edges[ei].u == cur || g.edges[ei].v == cur) {
                    cur = g.edges[ei].u == cur ? g.edges[ei].v : g.edges[ei].u;
                    break;
                }
            }
            p.nodes.push_back(g.vertex_ids[cur]);
        }
    }
    std::sort(out.begin(), out.end(), [](const path& a, const path& b) {
        if (a.cost != b.cost) return a.cost < b.cost;
        return a.links < b.links;
    });
    return out;
}

inline bool disjoint_pair(const path& a, const path& b, disjoint_mode mode) {
    std::set<link_id> la(a.links.begin(), a.links.end());
    for (const auto& l : b.links)
        if (la.count(l)) return false;
    if (mode == disjoint_mode::node) {
        std::set<node_id> na;
        for (std::size_t i = 1; i + 1 < a.nodes.size(); ++i) na.insert(a.nodes[i]);
        for (std::size_t i = 1; i + 1 < b.nodes.size(); ++i)
            if (na.count(b.nodes[i])) return false;
    }
    return true;
}

struct disjoint_set_result {
    double total = 0;
    std::vector<path> paths;
};

// Exhaustive minimum over every k-subset of pairwise disjoint simple paths.
inline std::optional<disjoint_set_result> best_disjoint_set(const weighted_graph& g,
                                                            const node_id& src, const node_id& dst,
                                                            std::uint32_t k, disjoint_mode mode) {
    auto all = all_simple_paths(g, src, dst);
    std::optional<disjoint_set_result> best;
    std::vector<std::size_t> pick;

    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (pick.size() == k) {
            double total = 0;
            for (std::size_t i : pick) total += all[i].cost;
            if (!best || total < best->total - 1e-9) {
                disjoint_set_result r;
                r.total = total;
                for (std::size_t i : pick) r.paths.push_back(all[i]);
                best = std::move(r);
            }
            return;
        }
        for (std::size_t i = start; i < all.size(); ++i) {
            bool ok = true;
            for (std::size_t j : pick)
                if (!disjoint_pair(all[j], all[i], mode)) ok = false;
            if (!ok) continue;
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return best;
}

// First-fit reference: scan every start index and test the assignability
// predicate slot by slot.
inline std::optional<lumen::spectrum::slot_range> first_fit_scan(
    const std::vector<const lumen::spectrum::spectrum_state*>& links, std::uint32_t count,
    lumen::spectrum::reservation_class cls, const lumen::reservation_id& owner) {
    if (links.empty()) return lumen::spectrum::slot_range{0, count};
    std::uint32_t slots = links.front()->slot_count();
    for (const auto* s : links) slots = std::min(slots, s->slot_count());
    for (std::uint32_t start = 0; start + count <= slots; ++start) {
        bool ok = true;
        for (std::uint32_t off = 0; ok && off < count; ++off) {
            for (const auto* s : links) {
                if (!s->slot_assignable(start + off, cls, owner)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return lumen::spectrum::slot_range{start, count};
    }
    return std::nullopt;
}

// Seeded random connected graph with integer weights; vertices n0..n{n-1}.
inline weighted_graph random_connected_graph(std::uint32_t seed, std::uint32_t max_nodes,
                                             double edge_prob = 0.5) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::uint32_t> nd(2, max_nodes);
    std::uniform_int_distribution<int> wd(1, 10);
    std::bernoulli_distribution ed(edge_prob);

    for (;;) {
        weighted_graph g;
        std::uint32_t n = nd(rng);
        for (std::uint32_t i = 0; i < n; ++i) g.add_vertex(node_id{"n" + std::to_string(i)});
        int next_edge = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = i + 1; j < n; ++j) {
                if (!ed(rng)) continue;
                char buf[16];
                std::snprintf(buf, sizeof buf, "e%03d", next_edge++);
                g.add_edge(link_id{buf}, g.vertex_ids[i], g.vertex_ids[j],
                           static_cast<double>(wd(rng)));
            }
        }
        // connectivity check by BFS
        std::vector<bool> seen(n, false);
        std::vector<std::uint32_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            for (const auto& e : g.edges) {
                std::uint32_t o;
                if (e.u == v) o = e.v;
                else if (e.v == v) o = e.u;
                else continue;
                if (!seen[o]) {
                    seen[o] = true;
                    stack.push_back(o);
                }
            }
        }
        if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) return g;
    }
}

}  // namespace oracle
