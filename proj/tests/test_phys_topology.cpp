// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/phys_topology.hpp"

#include <fstream>
#include <sstream>

#include <doctest.h>

#include "lumen/errors.hpp"
#include "oracle.hpp"

using namespace lumen;
using namespace lumen::topo;

namespace {

const char* minimal_doc = R"({
  "nodes": [
    {"id": "T1", "kind": "terminal", "tps": ["c1"]},
    {"id": "R1", "kind": "roadm", "tps": ["d1"]}
  ],
  "links": [
    {"id": "L1", "a": {"node": "T1", "tp": "c1"}, "b": {"node": "R1", "tp": "d1"}, "length-km": 10}
  ],
  "endpoints": [
    {"endpoint-id": "A1", "node": "T1", "tp": "c1"}
  ]
})";

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "cannot open " << path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    FAIL("expected a lumen::error");
    return errc::invalid_args;
}

}  // namespace

TEST_CASE("empty document parses to an empty, valid topology") {
    auto t = parse_physical_topology("{}");
    CHECK(t.nodes.empty());
    CHECK(t.links.empty());
    CHECK(t.endpoints.empty());
    CHECK(validate_topology(t).empty());
}

TEST_CASE("minimal two-node document") {
    auto t = parse_physical_topology(minimal_doc);
    CHECK(t.nodes.size() == 2);
    CHECK(t.links.size() == 1);
    CHECK(t.endpoints.size() == 1);
    CHECK(t.nodes.at(node_id{"T1"}).kind == node_kind::terminal);
    CHECK(t.links.at(link_id{"L1"}).length_km == 10);
    CHECK(t.endpoints.at(endpoint_id{"A1"}) == attachment{node_id{"T1"}, tp_id{"c1"}});
    CHECK(validate_topology(t).empty());
}

TEST_CASE("parser rejects broken documents with the right error") {
    CHECK(code_of([] { parse_physical_topology("not json"); }) == errc::malformed_document);

    // link references a node never defined
    const char* dangling = R"({
      "nodes": [{"id": "T1", "kind": "terminal", "tps": ["c1"]}],
      "links": [{"id": "L1", "a": {"node": "T1", "tp": "c1"}, "b": {"node": "Rx", "tp": "d1"}, "length-km": 1}]
    })";
    CHECK(code_of([&] { parse_physical_topology(dangling); }) == errc::dangling_reference);

    const char* dup = R"({
      "nodes": [
        {"id": "N", "kind": "roadm", "tps": ["a"]},
        {"id": "N", "kind": "roadm", "tps": ["b"]}
      ]
    })";
    CHECK(code_of([&] { parse_physical_topology(dup); }) == errc::duplicate_id);

    // endpoint on a roadm tp
    const char* bad_attach = R"({
      "nodes": [{"id": "R1", "kind": "roadm", "tps": ["d1"]}],
      "endpoints": [{"endpoint-id": "A1", "node": "R1", "tp": "d1"}]
    })";
    CHECK(code_of([&] { parse_physical_topology(bad_attach); }) == errc::invalid_attachment);

    // reflexive connectivity pair
    const char* reflexive = R"({
      "nodes": [{"id": "R1", "kind": "roadm", "tps": ["d1", "d2"], "connectivity": [["d1", "d1"]]}]
    })";
    CHECK(code_of([&] { parse_physical_topology(reflexive); }) == errc::malformed_document);

    // same tp in two links
    const char* reuse = R"({
      "nodes": [
        {"id": "T1", "kind": "terminal", "tps": ["c1"]},
        {"id": "R1", "kind": "roadm", "tps": ["d1"]},
        {"id": "R2", "kind": "roadm", "tps": ["d1"]}
      ],
      "links": [
        {"id": "L1", "a": {"node": "T1", "tp": "c1"}, "b": {"node": "R1", "tp": "d1"}, "length-km": 1},
        {"id": "L2", "a": {"node": "T1", "tp": "c1"}, "b": {"node": "R2", "tp": "d1"}, "length-km": 1}
      ]
    })";
    CHECK(code_of([&] { parse_physical_topology(reuse); }) == errc::duplicate_id);
}

TEST_CASE("validator reports violations on programmatically built topologies") {
    auto t = parse_physical_topology(minimal_doc);
    CHECK(validate_topology(t).empty());

    SUBCASE("reflexive connectivity pair") {
        auto bad = t;
        auto& r1 = bad.nodes.at(node_id{"R1"});
        r1.connectivity.allow_all = false;
        r1.connectivity.allowed.emplace(tp_id{"d1"}, tp_id{"d1"});
        auto v = validate_topology(bad);
        REQUIRE(!v.empty());
        CHECK(v.front().rule == "Irreflexivity");
        CHECK(v.front().subject == "R1.d1");
    }

    SUBCASE("tp reused by two links") {
        auto bad = t;
        bad.nodes.emplace(node_id{"R2"}, phys_node{node_id{"R2"}, node_kind::roadm,
                                                   {tp_id{"x1"}}, {}});
        fiber_link l2;
        l2.id = link_id{"L2"};
        l2.a = attachment{node_id{"T1"}, tp_id{"c1"}};  // c1 already used by L1
        l2.b = attachment{node_id{"R2"}, tp_id{"x1"}};
        l2.length_km = 5;
        bad.links.emplace(l2.id, std::move(l2));
        auto v = validate_topology(bad);
        bool found = false;
        for (const auto& viol : v)
            if (viol.rule == "TpReuse") found = true;
        CHECK(found);
    }

    SUBCASE("asymmetric matrix") {
        auto bad = t;
        auto& r1 = bad.nodes.at(node_id{"R1"});
        r1.tps.push_back(tp_id{"d2"});
        r1.connectivity.allow_all = false;
        r1.connectivity.allowed.emplace(tp_id{"d1"}, tp_id{"d2"});
        auto v = validate_topology(bad);
        bool found = false;
        for (const auto& viol : v)
            if (viol.rule == "AsymmetricMatrix") found = true;
        CHECK(found);
    }
}

TEST_CASE("parse / serialize round-trip is the identity") {
    for (const std::string doc :
         {std::string(minimal_doc), read_file(std::string(LUMEN_FIXTURE_DIR) + "/phys_6node.json")}) {
        auto t1 = parse_physical_topology(doc);
        auto bytes = serialize_topology(t1).dump(2);
        auto t2 = parse_physical_topology(bytes);
        CHECK(t1 == t2);
        CHECK(serialize_topology(t2).dump(2) == bytes);
    }
}

TEST_CASE("adjacency_view mirrors nodes and links") {
    auto t = parse_physical_topology(minimal_doc);
    auto g = adjacency_view(t);
    CHECK(g.vertex_count() == t.nodes.size());
    CHECK(g.edge_count() == t.links.size());

    auto p = pathcomp::shortest_path(g, node_id{"T1"}, node_id{"R1"});
    REQUIRE(p.has_value());
    CHECK(p->cost == 10);

    auto six = parse_physical_topology(read_file(std::string(LUMEN_FIXTURE_DIR) + "/phys_6node.json"));
    auto g6 = adjacency_view(six);
    CHECK(g6.vertex_count() == 6);
    CHECK(g6.edge_count() == 9);

    SUBCASE("triangle of roadms becomes K3 with the given lengths") {
        const char* tri = R"({
          "nodes": [
            {"id": "R1", "kind": "roadm", "tps": ["d1", "d2"]},
            {"id": "R2", "kind": "roadm", "tps": ["d1", "d2"]},
            {"id": "R3", "kind": "roadm", "tps": ["d1", "d2"]}
          ],
          "links": [
            {"id": "a", "a": {"node": "R1", "tp": "d1"}, "b": {"node": "R2", "tp": "d1"}, "length-km": 5},
            {"id": "b", "a": {"node": "R2", "tp": "d2"}, "b": {"node": "R3", "tp": "d1"}, "length-km": 7},
            {"id": "c", "a": {"node": "R3", "tp": "d2"}, "b": {"node": "R1", "tp": "d2"}, "length-km": 9}
          ]
        })";
        auto k3 = adjacency_view(parse_physical_topology(tri));
        CHECK(k3.vertex_count() == 3);
        CHECK(k3.edge_count() == 3);
        for (const auto& e : k3.edges) {
            double want = e.id == link_id{"a"} ? 5 : e.id == link_id{"b"} ? 7 : 9;
            CHECK(e.weight == want);
        }
    }

    SUBCASE("invalid topology is rejected") {
        auto bad = t;
        auto& r1 = bad.nodes.at(node_id{"R1"});
        r1.connectivity.allow_all = false;
        r1.connectivity.allowed.emplace(tp_id{"d1"}, tp_id{"d1"});
        CHECK_THROWS_AS(adjacency_view(bad), error);
    }
}

TEST_CASE("connectivity matrix restricts transit in the adjacency view") {
    // T1 - R1 - T2 plus detour R1 - R3 - R2 - T2; R1's matrix only allows the
    // detour turn, so the shorter interior route is not usable end to end.
    const char* doc = R"({
      "nodes": [
        {"id": "T1", "kind": "terminal", "tps": ["c1"]},
        {"id": "T2", "kind": "terminal", "tps": ["c1"]},
        {"id": "R1", "kind": "roadm", "tps": ["d0", "d1", "d2"],
         "connectivity": [["d0", "d2"]]},
        {"id": "R2", "kind": "roadm", "tps": ["d1", "d2", "d3"]},
        {"id": "R3", "kind": "roadm", "tps": ["d1", "d2"]}
      ],
      "links": [
        {"id": "l-t1r1", "a": {"node": "T1", "tp": "c1"}, "b": {"node": "R1", "tp": "d0"}, "length-km": 1},
        {"id": "l-r1r2", "a": {"node": "R1", "tp": "d1"}, "b": {"node": "R2", "tp": "d1"}, "length-km": 1},
        {"id": "l-r1r3", "a": {"node": "R1", "tp": "d2"}, "b": {"node": "R3", "tp": "d1"}, "length-km": 5},
        {"id": "l-r3r2", "a": {"node": "R3", "tp": "d2"}, "b": {"node": "R2", "tp": "d2"}, "length-km": 5},
        {"id": "l-r2t2", "a": {"node": "R2", "tp": "d3"}, "b": {"node": "T2", "tp": "c1"}, "length-km": 1}
      ],
      "endpoints": []
    })";

    auto t = parse_physical_topology(doc);
    auto g = adjacency_view(t);

    auto p = pathcomp::shortest_path(g, node_id{"T1"}, node_id{"T2"});
    REQUIRE(p.has_value());
    CHECK(p->cost == 12);  // forced through R3 despite the 3 km route existing as edges

    auto want = oracle::all_simple_paths(g, node_id{"T1"}, node_id{"T2"});
    REQUIRE(want.size() == 1);
    CHECK(want.front().links == p->links);
}
