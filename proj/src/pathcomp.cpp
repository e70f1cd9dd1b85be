// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/pathcomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "lumen/errors.hpp"

namespace lumen::pathcomp {

namespace {

constexpr double eps = 1e-9;
constexpr double inf = std::numeric_limits<double>::infinity();

}  // namespace

std::uint32_t weighted_graph::add_vertex(const node_id& id) {
    if (vertex_index.count(id))
        throw error(errc::duplicate_id, "vertex already present: " + id.str());
    auto idx = static_cast<std::uint32_t>(vertex_ids.size());
    vertex_ids.push_back(id);
    vertex_index.emplace(id, idx);
    transit.emplace_back(std::nullopt);
    return idx;
}

std::uint32_t weighted_graph::add_edge(const link_id& id, const node_id& u, const node_id& v,
                                       double weight) {
    if (weight < 0) throw error(errc::invalid_args, "edge weight must be nonnegative: " + id.str());
    for (const auto& e : edges)
        if (e.id == id) throw error(errc::duplicate_id, "edge already present: " + id.str());
    edges.push_back(edge{id, require_vertex(u), require_vertex(v), weight});
    return static_cast<std::uint32_t>(edges.size() - 1);
}

void weighted_graph::restrict_transit(const node_id& vertex,
                                      const std::set<std::pair<link_id, link_id>>& allowed) {
    std::uint32_t v = require_vertex(vertex);
    std::map<link_id, std::uint32_t> incident;
    for (std::uint32_t i = 0; i < edges.size(); ++i)
        if (edges[i].u == v || edges[i].v == v) incident.emplace(edges[i].id, i);

    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (const auto& [a, b] : allowed) {
        auto ia = incident.find(a);
        auto ib = incident.find(b);
        if (ia == incident.end() || ib == incident.end())
            throw error(errc::invalid_args,
                        "transit pair references a link not incident to " + vertex.str());
        if (ia->second == ib->second) continue;  // re-traversing the same link is never a transit
        pairs.emplace(std::min(ia->second, ib->second), std::max(ia->second, ib->second));
    }
    transit[v] = std::move(pairs);
}

std::optional<std::uint32_t> weighted_graph::find_vertex(const node_id& id) const {
    auto it = vertex_index.find(id);
    if (it == vertex_index.end()) return std::nullopt;
    return it->second;
}

std::uint32_t weighted_graph::require_vertex(const node_id& id) const {
    auto v = find_vertex(id);
    if (!v) throw error(errc::unknown_node, "unknown node: " + id.str());
    return *v;
}

bool weighted_graph::has_restrictions() const {
    return std::any_of(transit.begin(), transit.end(),
                       [](const auto& t) { return t.has_value(); });
}

std::string_view disjoint_mode_name(disjoint_mode mode) {
    switch (mode) {
        case disjoint_mode::none: return "none";
        case disjoint_mode::link: return "link";
        case disjoint_mode::node: return "node";
    }
    return "none";
}

std::optional<disjoint_mode> disjoint_mode_from_name(std::string_view name) {
    if (name == "none") return disjoint_mode::none;
    if (name == "link") return disjoint_mode::link;
    if (name == "node") return disjoint_mode::node;
    return std::nullopt;
}

namespace {

bool transit_allowed(const weighted_graph& g, std::uint32_t vertex, std::uint32_t edge_in,
                     std::uint32_t edge_out) {
    const auto& t = g.transit[vertex];
    if (!t) return true;
    auto key = std::make_pair(std::min(edge_in, edge_out), std::max(edge_in, edge_out));
    return t->count(key) > 0;
}

std::vector<std::vector<std::uint32_t>> incidence(const weighted_graph& g) {
    std::vector<std::vector<std::uint32_t>> inc(g.vertex_count());
    for (std::uint32_t i = 0; i < g.edges.size(); ++i) {
        inc[g.edges[i].u].push_back(i);
        inc[g.edges[i].v].push_back(i);
    }
    return inc;
}

std::uint32_t edge_other(const weighted_graph::edge& e, std::uint32_t x) {
    return e.u == x ? e.v : e.u;
}

// ---------------------------------------------------------------------------
// Search graph: vertices with transit restrictions are expanded into one
// subvertex per incident link plus zero-weight transit edges for allowed
// pairs, so the path algorithms run on a plain weighted graph. Query
// endpoints additionally get a root subvertex with free add/drop edges.
// ---------------------------------------------------------------------------

struct sgraph {
    struct sedge {
        std::uint32_t u = 0;
        std::uint32_t v = 0;
        double w = 0;
        std::int32_t orig = -1;  // index into weighted_graph::edges, -1 = synthetic
    };

    const weighted_graph* g = nullptr;
    std::vector<sedge> edges;
    std::vector<std::vector<std::uint32_t>> incident;
    std::vector<std::uint32_t> vertex_orig;
    std::uint32_t src = 0;
    std::uint32_t dst = 0;

    std::uint32_t add_vertex(std::uint32_t orig) {
        vertex_orig.push_back(orig);
        incident.emplace_back();
        return static_cast<std::uint32_t>(vertex_orig.size() - 1);
    }
    void add_sedge(std::uint32_t u, std::uint32_t v, double w, std::int32_t orig) {
        edges.push_back(sedge{u, v, w, orig});
        auto idx = static_cast<std::uint32_t>(edges.size() - 1);
        incident[u].push_back(idx);
        incident[v].push_back(idx);
    }
    std::uint32_t other(std::uint32_t e, std::uint32_t x) const {
        return edges[e].u == x ? edges[e].v : edges[e].u;
    }
};

sgraph build_search_graph(const weighted_graph& g, std::uint32_t src, std::uint32_t dst) {
    sgraph sg;
    sg.g = &g;
    auto inc = incidence(g);

    std::vector<std::int64_t> plain(g.vertex_count(), -1);
    std::vector<std::map<std::uint32_t, std::uint32_t>> port(g.vertex_count());

    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        if (!g.transit[v]) {
            plain[v] = sg.add_vertex(v);
            continue;
        }
        for (std::uint32_t ei : inc[v]) port[v].emplace(ei, sg.add_vertex(v));
        for (const auto& [a, b] : *g.transit[v]) {
            auto ia = port[v].find(a);
            auto ib = port[v].find(b);
            if (ia != port[v].end() && ib != port[v].end())
                sg.add_sedge(ia->second, ib->second, 0.0, -1);
        }
    }

    for (std::uint32_t ei = 0; ei < g.edges.size(); ++ei) {
        const auto& e = g.edges[ei];
        std::uint32_t su = plain[e.u] >= 0 ? static_cast<std::uint32_t>(plain[e.u]) : port[e.u].at(ei);
        std::uint32_t sv = plain[e.v] >= 0 ? static_cast<std::uint32_t>(plain[e.v]) : port[e.v].at(ei);
        sg.add_sedge(su, sv, e.weight, static_cast<std::int32_t>(ei));
    }

    auto root_for = [&](std::uint32_t v) -> std::uint32_t {
        if (plain[v] >= 0) return static_cast<std::uint32_t>(plain[v]);
        std::uint32_t r = sg.add_vertex(v);
        for (const auto& [ei, sv] : port[v]) sg.add_sedge(r, sv, 0.0, -1);
        return r;
    };
    sg.src = root_for(src);
    sg.dst = root_for(dst);
    return sg;
}

// Lexicographic order of the original link-id projections of two expanded
// edge sequences; synthetic edges contribute nothing.
int compare_link_seq(const sgraph& sg, const std::vector<std::uint32_t>& a,
                     const std::vector<std::uint32_t>& b) {
    std::size_t i = 0, j = 0;
    for (;;) {
        while (i < a.size() && sg.edges[a[i]].orig < 0) ++i;
        while (j < b.size() && sg.edges[b[j]].orig < 0) ++j;
        bool ea = i == a.size(), eb = j == b.size();
        if (ea && eb) return 0;
        if (ea) return -1;
        if (eb) return 1;
        const std::string& la = sg.g->edges[sg.edges[a[i]].orig].id.str();
        const std::string& lb = sg.g->edges[sg.edges[b[j]].orig].id.str();
        if (int c = la.compare(lb); c != 0) return c < 0 ? -1 : 1;
        ++i;
        ++j;
    }
}

struct search_result {
    bool reached = false;
    double cost = 0;
    std::vector<std::uint32_t> edge_seq;
};

// Dijkstra with lexicographic link-sequence refinement on cost ties.
search_result sdijkstra(const sgraph& sg, std::uint32_t from, std::uint32_t to,
                        const std::vector<char>& vblock, const std::vector<char>& eblock) {
    std::size_t n = sg.vertex_orig.size();
    std::vector<double> dist(n, inf);
    std::vector<std::vector<std::uint32_t>> seq(n);

    if (vblock[from]) return {};
    using qe = std::pair<double, std::uint32_t>;
    std::priority_queue<qe, std::vector<qe>, std::greater<>> pq;
    dist[from] = 0;
    pq.push({0.0, from});

    while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (d > dist[x] + eps) continue;
        for (std::uint32_t ei : sg.incident[x]) {
            if (eblock[ei]) continue;
            std::uint32_t y = sg.other(ei, x);
            if (vblock[y]) continue;
            double nd = dist[x] + sg.edges[ei].w;
            bool improve = false;
            if (nd < dist[y] - eps) {
                improve = true;
            } else if (nd < dist[y] + eps) {
                std::vector<std::uint32_t> cand = seq[x];
                cand.push_back(ei);
                if (compare_link_seq(sg, cand, seq[y]) < 0) improve = true;
            }
            if (improve) {
                dist[y] = nd;
                seq[y] = seq[x];
                seq[y].push_back(ei);
                pq.push({nd, y});
            }
        }
    }

    if (dist[to] == inf) return {};
    return search_result{true, dist[to], seq[to]};
}

path to_path(const sgraph& sg, const std::vector<std::uint32_t>& edge_seq) {
    const weighted_graph& g = *sg.g;
    path p;
    p.nodes.push_back(g.vertex_ids[sg.vertex_orig[sg.src]]);
    std::uint32_t cur = sg.src;
    for (std::uint32_t ei : edge_seq) {
        std::uint32_t nxt = sg.other(ei, cur);
        const auto& se = sg.edges[ei];
        if (se.orig >= 0) {
            p.links.push_back(g.edges[se.orig].id);
            p.nodes.push_back(g.vertex_ids[sg.vertex_orig[nxt]]);
            p.cost += se.w;
        }
        cur = nxt;
    }
    return p;
}

bool node_loopless(const path& p) {
    std::set<node_id> seen(p.nodes.begin(), p.nodes.end());
    return seen.size() == p.nodes.size();
}

std::vector<std::uint32_t> expanded_vertices(const sgraph& sg,
                                             const std::vector<std::uint32_t>& edge_seq) {
    std::vector<std::uint32_t> out{sg.src};
    std::uint32_t cur = sg.src;
    for (std::uint32_t ei : edge_seq) {
        cur = sg.other(ei, cur);
        out.push_back(cur);
    }
    return out;
}

// Yen's loopless k-shortest over the (expanded) search graph, emitting only
// paths that are loopless over original node ids.
std::vector<path> yen_valid(const weighted_graph& g, std::uint32_t src, std::uint32_t dst,
                            std::uint32_t want) {
    std::vector<path> out;
    if (want == 0) return out;

    sgraph sg = build_search_graph(g, src, dst);
    std::vector<char> vblock(sg.vertex_orig.size(), 0);
    std::vector<char> eblock(sg.edges.size(), 0);

    auto first = sdijkstra(sg, sg.src, sg.dst, vblock, eblock);
    if (!first.reached) return out;

    struct cand {
        double cost = 0;
        std::vector<std::uint32_t> edges;
    };
    std::vector<std::vector<std::uint32_t>> accepted;
    std::vector<cand> pool;
    std::set<std::vector<std::uint32_t>> seen;

    auto emit = [&](const std::vector<std::uint32_t>& edge_seq) {
        path p = to_path(sg, edge_seq);
        if (node_loopless(p)) out.push_back(std::move(p));
    };

    accepted.push_back(first.edge_seq);
    seen.insert(first.edge_seq);
    emit(first.edge_seq);

    while (out.size() < want) {
        const auto& last = accepted.back();
        auto verts = expanded_vertices(sg, last);

        for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
            std::fill(vblock.begin(), vblock.end(), 0);
            std::fill(eblock.begin(), eblock.end(), 0);
            for (std::size_t j = 0; j < i; ++j) vblock[verts[j]] = 1;

            std::vector<std::uint32_t> root(last.begin(), last.begin() + i);
            for (const auto& ap : accepted) {
                if (ap.size() > i && std::equal(root.begin(), root.end(), ap.begin()))
                    eblock[ap[i]] = 1;
            }

            auto spur = sdijkstra(sg, verts[i], sg.dst, vblock, eblock);
            if (!spur.reached) continue;

            cand c;
            c.edges = root;
            c.edges.insert(c.edges.end(), spur.edge_seq.begin(), spur.edge_seq.end());
            if (seen.count(c.edges)) continue;
            for (std::uint32_t ei : c.edges) c.cost += sg.edges[ei].w;
            seen.insert(c.edges);
            pool.push_back(std::move(c));
        }

        if (pool.empty()) break;
        auto best = std::min_element(pool.begin(), pool.end(), [&](const cand& a, const cand& b) {
            if (a.cost < b.cost - eps) return true;
            if (b.cost < a.cost - eps) return false;
            if (int c = compare_link_seq(sg, a.edges, b.edges); c != 0) return c < 0;
            return a.edges < b.edges;
        });
        accepted.push_back(best->edges);
        emit(best->edges);
        pool.erase(best);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Minimum-cost disjoint path sets on unrestricted graphs: successive shortest
// paths over a residual graph (Bhandari), vertex splitting for node mode.
// ---------------------------------------------------------------------------

struct residual_arc {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    double w = 0;
    std::int32_t edge = -1;    // original edge index, -1 for split arcs
    std::int8_t set_dir = 0;   // usage to record when traversed (+1 u->v, -1 v->u, 0 cancel)
    std::int32_t split_of = -1;
    bool cancel = false;
};

std::optional<std::vector<path>> bhandari(const weighted_graph& g, std::uint32_t src,
                                          std::uint32_t dst, std::uint32_t k, disjoint_mode mode) {
    const bool split = mode == disjoint_mode::node;
    const std::uint32_t n = static_cast<std::uint32_t>(g.vertex_count());
    auto vin = [&](std::uint32_t v) { return split ? 2 * v : v; };
    auto vout = [&](std::uint32_t v) { return split ? 2 * v + 1 : v; };
    const std::uint32_t nn = split ? 2 * n : n;

    std::vector<std::int8_t> edge_use(g.edges.size(), 0);
    std::vector<char> split_used(n, 0);

    for (std::uint32_t round = 0; round < k; ++round) {
        std::vector<residual_arc> arcs;
        for (std::uint32_t ei = 0; ei < g.edges.size(); ++ei) {
            const auto& e = g.edges[ei];
            if (edge_use[ei] == 0) {
                arcs.push_back({vout(e.u), vin(e.v), e.weight, static_cast<std::int32_t>(ei), 1, -1, false});
                arcs.push_back({vout(e.v), vin(e.u), e.weight, static_cast<std::int32_t>(ei), -1, -1, false});
            } else if (edge_use[ei] > 0) {
                arcs.push_back({vin(e.v), vout(e.u), -e.weight, static_cast<std::int32_t>(ei), 0, -1, true});
            } else {
                arcs.push_back({vin(e.u), vout(e.v), -e.weight, static_cast<std::int32_t>(ei), 0, -1, true});
            }
        }
        if (split) {
            for (std::uint32_t v = 0; v < n; ++v) {
                if (v == src || v == dst) {
                    arcs.push_back({vin(v), vout(v), 0.0, -1, 0, static_cast<std::int32_t>(v), false});
                } else if (!split_used[v]) {
                    arcs.push_back({vin(v), vout(v), 0.0, -1, 0, static_cast<std::int32_t>(v), false});
                } else {
                    arcs.push_back({vout(v), vin(v), 0.0, -1, 0, static_cast<std::int32_t>(v), true});
                }
            }
        }

        // Bellman-Ford; residuals of successive shortest paths carry negative
        // arcs but never negative cycles.
        std::vector<double> dist(nn, inf);
        std::vector<std::int32_t> parent(nn, -1);
        dist[vout(src)] = 0;
        for (std::uint32_t pass = 0; pass <= nn; ++pass) {
            bool changed = false;
            for (std::size_t ai = 0; ai < arcs.size(); ++ai) {
                const auto& a = arcs[ai];
                if (dist[a.from] == inf) continue;
                if (dist[a.from] + a.w < dist[a.to] - eps) {
                    dist[a.to] = dist[a.from] + a.w;
                    parent[a.to] = static_cast<std::int32_t>(ai);
                    changed = true;
                }
            }
            if (!changed) break;
        }
        if (dist[vin(dst)] == inf) return std::nullopt;

        for (std::uint32_t cur = vin(dst); cur != vout(src);) {
            const auto& a = arcs[static_cast<std::size_t>(parent[cur])];
            if (a.edge >= 0) {
                edge_use[a.edge] = a.cancel ? 0 : a.set_dir;
            } else if (a.split_of >= 0 && static_cast<std::uint32_t>(a.split_of) != src &&
                       static_cast<std::uint32_t>(a.split_of) != dst) {
                split_used[a.split_of] = a.cancel ? 0 : 1;
            }
            cur = a.from;
        }
    }

    // Decompose the directed edge usage into k paths; greedy walk by smallest
    // link id, then excise any zero-cost loops.
    auto inc = incidence(g);
    std::vector<char> consumed(g.edges.size(), 0);
    std::vector<path> result;

    for (std::uint32_t t = 0; t < k; ++t) {
        std::vector<std::uint32_t> vpath{src};
        std::vector<std::uint32_t> epath;
        std::uint32_t cur = src;
        while (cur != dst) {
            std::int32_t pick = -1;
            for (std::uint32_t ei : inc[cur]) {
                if (consumed[ei] || edge_use[ei] == 0) continue;
                const auto& e = g.edges[ei];
                bool outgoing = (edge_use[ei] > 0 && e.u == cur) || (edge_use[ei] < 0 && e.v == cur);
                if (!outgoing) continue;
                if (pick < 0 || g.edges[ei].id < g.edges[pick].id) pick = static_cast<std::int32_t>(ei);
            }
            if (pick < 0) return std::nullopt;  // conservation breach; cannot happen
            consumed[pick] = 1;
            epath.push_back(static_cast<std::uint32_t>(pick));
            cur = edge_other(g.edges[static_cast<std::size_t>(pick)], cur);
            vpath.push_back(cur);
        }

        for (bool again = true; again;) {
            again = false;
            std::map<std::uint32_t, std::size_t> pos;
            for (std::size_t i = 0; i < vpath.size(); ++i) {
                auto it = pos.find(vpath[i]);
                if (it != pos.end()) {
                    vpath.erase(vpath.begin() + static_cast<std::ptrdiff_t>(it->second + 1),
                                vpath.begin() + static_cast<std::ptrdiff_t>(i + 1));
                    epath.erase(epath.begin() + static_cast<std::ptrdiff_t>(it->second),
                                epath.begin() + static_cast<std::ptrdiff_t>(i));
                    again = true;
                    break;
                }
                pos.emplace(vpath[i], i);
            }
        }

        path p;
        for (std::uint32_t v : vpath) p.nodes.push_back(g.vertex_ids[v]);
        for (std::uint32_t ei : epath) {
            p.links.push_back(g.edges[ei].id);
            p.cost += g.edges[ei].weight;
        }
        result.push_back(std::move(p));
    }

    std::sort(result.begin(), result.end(), [](const path& a, const path& b) {
        if (a.cost != b.cost) return a.cost < b.cost;
        return a.links < b.links;
    });
    return result;
}

// ---------------------------------------------------------------------------
// Exact search over the full valid simple-path set; used when the graph
// carries transit restrictions, where the residual construction does not
// model node legality.
// ---------------------------------------------------------------------------

void enumerate_paths_rec(const weighted_graph& g, const std::vector<std::vector<std::uint32_t>>& inc,
                         std::uint32_t cur, std::int32_t entry, std::uint32_t dst,
                         std::vector<char>& visited, std::vector<std::uint32_t>& vpath,
                         std::vector<std::uint32_t>& epath, double cost, std::vector<path>& out) {
    if (cur == dst) {
        path p;
        for (std::uint32_t v : vpath) p.nodes.push_back(g.vertex_ids[v]);
        for (std::uint32_t ei : epath) p.links.push_back(g.edges[ei].id);
        p.cost = cost;
        out.push_back(std::move(p));
        return;
    }
    std::vector<std::uint32_t> order = inc[cur];
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return g.edges[a].id < g.edges[b].id; });
    for (std::uint32_t ei : order) {
        if (entry >= 0 && !transit_allowed(g, cur, static_cast<std::uint32_t>(entry), ei)) continue;
        std::uint32_t nxt = edge_other(g.edges[ei], cur);
        if (visited[nxt]) continue;
        visited[nxt] = 1;
        vpath.push_back(nxt);
        epath.push_back(ei);
        enumerate_paths_rec(g, inc, nxt, static_cast<std::int32_t>(ei), dst, visited, vpath, epath,
                            cost + g.edges[ei].weight, out);
        epath.pop_back();
        vpath.pop_back();
        visited[nxt] = 0;
    }
}

std::vector<path> enumerate_valid_paths(const weighted_graph& g, std::uint32_t src,
                                        std::uint32_t dst) {
    auto inc = incidence(g);
    std::vector<char> visited(g.vertex_count(), 0);
    std::vector<std::uint32_t> vpath{src}, epath;
    std::vector<path> out;
    visited[src] = 1;
    enumerate_paths_rec(g, inc, src, -1, dst, visited, vpath, epath, 0.0, out);
    std::sort(out.begin(), out.end(), [](const path& a, const path& b) {
        if (a.cost != b.cost) return a.cost < b.cost;
        return a.links < b.links;
    });
    return out;
}

bool paths_compatible(const path& a, const path& b, disjoint_mode mode) {
    std::set<link_id> la(a.links.begin(), a.links.end());
    for (const auto& l : b.links)
        if (la.count(l)) return false;
    if (mode == disjoint_mode::node) {
        std::set<node_id> ia;
        for (std::size_t i = 1; i + 1 < a.nodes.size(); ++i) ia.insert(a.nodes[i]);
        for (std::size_t i = 1; i + 1 < b.nodes.size(); ++i)
            if (ia.count(b.nodes[i])) return false;
    }
    return true;
}

std::optional<std::vector<path>> disjoint_exhaustive(const weighted_graph& g, std::uint32_t src,
                                                     std::uint32_t dst, std::uint32_t k,
                                                     disjoint_mode mode) {
    auto all = enumerate_valid_paths(g, src, dst);
    if (all.size() < k) return std::nullopt;

    double best_total = inf;
    std::vector<std::size_t> best_idx;
    std::vector<std::size_t> chosen;

    auto rec = [&](auto&& self, std::size_t start, double total) -> void {
        if (chosen.size() == k) {
            if (total < best_total - eps ||
                (total < best_total + eps && (best_idx.empty() || chosen < best_idx))) {
                best_total = total;
                best_idx = chosen;
            }
            return;
        }
        std::size_t need = k - chosen.size();
        for (std::size_t i = start; i + need <= all.size(); ++i) {
            if (total + static_cast<double>(need) * all[i].cost >= best_total - eps) break;
            bool ok = true;
            for (std::size_t c : chosen) {
                if (!paths_compatible(all[c], all[i], mode)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            chosen.push_back(i);
            self(self, i + 1, total + all[i].cost);
            chosen.pop_back();
        }
    };
    rec(rec, 0, 0.0);

    if (best_idx.empty()) return std::nullopt;
    std::vector<path> out;
    for (std::size_t i : best_idx) out.push_back(all[i]);
    return out;
}

}  // namespace

bool path_valid(const weighted_graph& g, const path& p) {
    if (p.nodes.empty()) return false;
    if (p.links.size() + 1 != p.nodes.size()) return false;
    std::set<node_id> seen(p.nodes.begin(), p.nodes.end());
    if (seen.size() != p.nodes.size()) return false;

    std::map<link_id, std::uint32_t> by_id;
    for (std::uint32_t i = 0; i < g.edges.size(); ++i) by_id.emplace(g.edges[i].id, i);

    double cost = 0;
    std::int32_t prev = -1;
    for (std::size_t i = 0; i < p.links.size(); ++i) {
        auto it = by_id.find(p.links[i]);
        if (it == by_id.end()) return false;
        const auto& e = g.edges[it->second];
        auto a = g.find_vertex(p.nodes[i]);
        auto b = g.find_vertex(p.nodes[i + 1]);
        if (!a || !b) return false;
        if (!((e.u == *a && e.v == *b) || (e.u == *b && e.v == *a))) return false;
        if (prev >= 0 &&
            !transit_allowed(g, *a, static_cast<std::uint32_t>(prev), it->second))
            return false;
        cost += e.weight;
        prev = static_cast<std::int32_t>(it->second);
    }
    return std::abs(cost - p.cost) <= 1e-6;
}

std::optional<path> shortest_path(const weighted_graph& g, const node_id& src,
                                  const node_id& dst) {
    std::uint32_t s = g.require_vertex(src);
    std::uint32_t d = g.require_vertex(dst);
    if (s == d) return path{{src}, {}, 0.0};
    auto found = yen_valid(g, s, d, 1);
    if (found.empty()) return std::nullopt;
    return found.front();
}

std::vector<path> k_shortest(const weighted_graph& g, const node_id& src, const node_id& dst,
                             std::uint32_t k) {
    std::uint32_t s = g.require_vertex(src);
    std::uint32_t d = g.require_vertex(dst);
    if (k == 0) throw error(errc::invalid_args, "k must be positive");
    if (s == d) return {path{{src}, {}, 0.0}};
    return yen_valid(g, s, d, k);
}

std::optional<std::vector<path>> disjoint_paths(const weighted_graph& g, const node_id& src,
                                                const node_id& dst, std::uint32_t k,
                                                disjoint_mode mode) {
    if (mode == disjoint_mode::none)
        throw error(errc::invalid_args, "disjoint_paths requires mode link or node");
    std::uint32_t s = g.require_vertex(src);
    std::uint32_t d = g.require_vertex(dst);
    if (k == 0) throw error(errc::invalid_args, "k must be positive");
    if (s == d) throw error(errc::invalid_args, "src and dst must differ");

    if (g.has_restrictions()) return disjoint_exhaustive(g, s, d, k, mode);

    auto found = bhandari(g, s, d, k, mode);
    if (!found) return std::nullopt;

    // Safety net: the residual construction should always return a valid set;
    // fall back to the exact search if it ever does not.
    bool ok = true;
    for (const auto& p : *found)
        if (!path_valid(g, p)) ok = false;
    for (std::size_t i = 0; ok && i < found->size(); ++i)
        for (std::size_t j = i + 1; ok && j < found->size(); ++j)
            if (!paths_compatible((*found)[i], (*found)[j], mode)) ok = false;
    if (!ok) return disjoint_exhaustive(g, s, d, k, mode);
    return found;
}

}  // namespace lumen::pathcomp
