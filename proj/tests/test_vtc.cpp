// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/vtc.hpp"

#include <fstream>
#include <sstream>

#include <doctest.h>

#include "lumen/audit.hpp"
#include "lumen/errors.hpp"
#include "lumen/state.hpp"
#include "oracle.hpp"

using namespace lumen;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "cannot open " << path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

hypervisor_state six_node_state(std::uint32_t slots = 320) {
    hypervisor_state st;
    topo::parse_options opts;
    opts.slots_per_link = slots;
    st.topology = topo::parse_physical_topology(
        read_file(std::string(LUMEN_FIXTURE_DIR) + "/phys_6node.json"), opts);
    return st;
}

vtc::context six_node_ctx() {
    vtc::context ctx;
    ctx.profiles = spectrum::default_profile_table();
    ctx.constraints.assignments[client_id{"A"}] = {endpoint_id{"A1"}, endpoint_id{"A2"},
                                                   endpoint_id{"A3"}};
    return ctx;
}

intent::topology_request client_a_request() {
    return intent::decode_request(read_file(std::string(LUMEN_FIXTURE_DIR) +
                                            "/client_a_request.json"));
}

// two directly fibered terminals, 10 km apart
hypervisor_state two_terminal_state(std::uint32_t slots = 320) {
    hypervisor_state st;
    topo::parse_options opts;
    opts.slots_per_link = slots;
    st.topology = topo::parse_physical_topology(R"({
      "nodes": [
        {"id": "T1", "kind": "terminal", "tps": ["c1", "l1"]},
        {"id": "T2", "kind": "terminal", "tps": ["c1", "l1"]}
      ],
      "links": [
        {"id": "L1", "a": {"node": "T1", "tp": "l1"}, "b": {"node": "T2", "tp": "l1"}, "length-km": 10}
      ],
      "endpoints": [
        {"endpoint-id": "B1", "node": "T1", "tp": "c1"},
        {"endpoint-id": "B2", "node": "T2", "tp": "c1"}
      ]
    })",
                                                opts);
    return st;
}

vtc::context two_terminal_ctx() {
    vtc::context ctx;
    ctx.profiles = spectrum::default_profile_table();
    ctx.constraints.assignments[client_id{"B"}] = {endpoint_id{"B1"}, endpoint_id{"B2"}};
    return ctx;
}

intent::topology_request simple_request(std::uint64_t dedicated, std::uint64_t flexible,
                                        std::uint32_t min_paths = 1,
                                        pathcomp::disjoint_mode mode = pathcomp::disjoint_mode::none,
                                        bool protection = false) {
    intent::topology_request r;
    r.topology_id = "pair";
    intent::intent_spec spec;
    spec.intent_id = "i1";
    spec.endpoints = {endpoint_id{"B1"}, endpoint_id{"B2"}};
    spec.dedicated_bandwidth_mbps = dedicated;
    spec.flexible_bandwidth_mbps = flexible;
    spec.minimum_paths = min_paths;
    spec.disjoint = mode;
    spec.protection = protection;
    spec.maximum_active_connections = 0;
    r.intents.push_back(std::move(spec));
    return r;
}

}  // namespace

TEST_CASE("realize builds the example client triangle on the 6-node fixture") {
    auto st = six_node_state();
    auto ctx = six_node_ctx();
    const auto& rt = vtc::realize(st, client_id{"A"}, client_a_request(), ctx);

    REQUIRE(rt.links.size() == 3);  // C(3,2) pairs
    CHECK(rt.links[0].ep_a == endpoint_id{"A1"});
    CHECK(rt.links[0].ep_b == endpoint_id{"A2"});
    CHECK(rt.links[1].ep_a == endpoint_id{"A1"});
    CHECK(rt.links[1].ep_b == endpoint_id{"A3"});
    CHECK(rt.links[2].ep_a == endpoint_id{"A2"});
    CHECK(rt.links[2].ep_b == endpoint_id{"A3"});

    auto graph = topo::adjacency_view(st.topology);
    for (const auto& vl : rt.links) {
        CHECK(vl.id.substr(0, 17) == "Client A/Intent A");
        REQUIRE(vl.paths.size() == 2);  // minimum-paths 2, no protection
        for (const auto& sp : vl.paths) {
            CHECK(sp.role == vtc::path_role::working);
            REQUIRE(sp.dedicated.has_value());
            REQUIRE(sp.flexible.has_value());
            CHECK(pathcomp::path_valid(graph, sp.route));
            // dedicated 10000 and flexible 5000 each fit one 16QAM slot here
            CHECK(sp.dedicated->range.count == 1);
            CHECK(sp.flexible->range.count == 1);
            CHECK(sp.dedicated->profile == "profile-16QAM");
        }
        CHECK(!vl.flexible_shortfall);
        CHECK(oracle::disjoint_pair(vl.paths[0].route, vl.paths[1].route,
                                    pathcomp::disjoint_mode::link));

        // minimal total cost confirmed by the exhaustive oracle
        auto src = st.topology.endpoints.at(vl.ep_a).node;
        auto dst = st.topology.endpoints.at(vl.ep_b).node;
        auto best = oracle::best_disjoint_set(graph, src, dst, 2, pathcomp::disjoint_mode::link);
        REQUIRE(best.has_value());
        CHECK(vl.paths[0].route.cost + vl.paths[1].route.cost == doctest::Approx(best->total));
    }

    CHECK(rt.per_intent_cap.at("Intent A") == 2);
    CHECK(audit::audit_state(st, ctx.profiles).empty());

    SUBCASE("events record the construction in order") {
        REQUIRE(st.events.size() == 4);
        CHECK(st.events[0].object_type == "topology");
        CHECK(st.events[0].kind == view::event_kind::object_created);
        CHECK(st.events[0].object_id == "A/Client A");
        for (int i = 1; i < 4; ++i) CHECK(st.events[i].object_type == "virtual-link");
        CHECK(rt.created_at == st.events[0].seq);
    }

    SUBCASE("installing the same id again is refused") {
        auto before = spectrum_occupancy_hash(st);
        CHECK_THROWS_AS(vtc::realize(st, client_id{"A"}, client_a_request(), ctx), error);
        CHECK(spectrum_occupancy_hash(st) == before);
    }
}

TEST_CASE("realize is deterministic") {
    auto st1 = six_node_state();
    auto st2 = six_node_state();
    auto ctx = six_node_ctx();
    vtc::realize(st1, client_id{"A"}, client_a_request(), ctx);
    vtc::realize(st2, client_id{"A"}, client_a_request(), ctx);
    CHECK(st1 == st2);
    CHECK(state_hash(st1) == state_hash(st2));
}

TEST_CASE("minimal realize on a two-terminal pair") {
    auto st = two_terminal_state();
    auto ctx = two_terminal_ctx();
    const auto& rt = vtc::realize(st, client_id{"B"}, simple_request(10000, 0), ctx);

    REQUIRE(rt.links.size() == 1);
    REQUIRE(rt.links[0].paths.size() == 1);
    const auto& sp = rt.links[0].paths[0];
    CHECK(sp.route.links == std::vector<link_id>{link_id{"L1"}});
    REQUIRE(sp.dedicated.has_value());
    CHECK(sp.dedicated->range == spectrum::slot_range{0, 1});  // first fit on empty spectrum
    CHECK(sp.dedicated->profile == "profile-16QAM");           // 10 km within 500 km reach
    CHECK(!sp.flexible.has_value());
    CHECK(!rt.links[0].flexible_shortfall);
    CHECK(audit::audit_state(st, ctx.profiles).empty());
}

TEST_CASE("infeasible requests leave the spectrum untouched") {
    auto st = six_node_state();
    auto ctx = six_node_ctx();
    auto before = spectrum_occupancy_hash(st);
    auto before_state = st;

    SUBCASE("more disjoint paths than the fixture admits") {
        auto r = client_a_request();
        r.intents[0].minimum_paths = 3;  // pairs only admit 2 link-disjoint paths
        try {
            vtc::realize(st, client_id{"A"}, r, ctx);
            FAIL("expected InfeasiblePaths");
        } catch (const error& e) {
            CHECK(e.code() == errc::infeasible_paths);
            CHECK(e.details().at("needed").get<int>() == 3);
            CHECK(e.details().at("found").get<int>() == 2);
        }
        CHECK(spectrum_occupancy_hash(st) == before);
        CHECK(st.topology == before_state.topology);
    }

    SUBCASE("chain admits only one simple path") {
        hypervisor_state chain;
        chain.topology = topo::parse_physical_topology(R"({
          "nodes": [
            {"id": "T1", "kind": "terminal", "tps": ["c1", "l1"]},
            {"id": "R1", "kind": "roadm", "tps": ["d1", "d2"]},
            {"id": "T2", "kind": "terminal", "tps": ["c1", "l1"]}
          ],
          "links": [
            {"id": "L1", "a": {"node": "T1", "tp": "l1"}, "b": {"node": "R1", "tp": "d1"}, "length-km": 10},
            {"id": "L2", "a": {"node": "R1", "tp": "d2"}, "b": {"node": "T2", "tp": "l1"}, "length-km": 10}
          ],
          "endpoints": [
            {"endpoint-id": "B1", "node": "T1", "tp": "c1"},
            {"endpoint-id": "B2", "node": "T2", "tp": "c1"}
          ]
        })");
        auto ctx2 = two_terminal_ctx();
        auto hash0 = spectrum_occupancy_hash(chain);
        auto r = simple_request(10000, 5000, 2, pathcomp::disjoint_mode::link);
        try {
            vtc::realize(chain, client_id{"B"}, r, ctx2);
            FAIL("expected InfeasiblePaths");
        } catch (const error& e) {
            CHECK(e.code() == errc::infeasible_paths);
        }
        CHECK(spectrum_occupancy_hash(chain) == hash0);
    }

    SUBCASE("path longer than every profile reach") {
        hypervisor_state longhaul = two_terminal_state();
        longhaul.topology.links.at(link_id{"L1"}).length_km = 3000;
        auto ctx2 = two_terminal_ctx();
        auto hash0 = spectrum_occupancy_hash(longhaul);
        try {
            vtc::realize(longhaul, client_id{"B"}, simple_request(10000, 0), ctx2);
            FAIL("expected NoFeasibleProfile");
        } catch (const error& e) {
            CHECK(e.code() == errc::no_feasible_profile);
        }
        CHECK(spectrum_occupancy_hash(longhaul) == hash0);
    }

    SUBCASE("not enough contiguous slots") {
        auto tiny = two_terminal_state(2);  // 2 slots per link
        auto ctx2 = two_terminal_ctx();
        auto hash0 = spectrum_occupancy_hash(tiny);
        // 200000 Mbit/s at 16QAM needs 4 slots
        try {
            vtc::realize(tiny, client_id{"B"}, simple_request(200000, 0), ctx2);
            FAIL("expected InsufficientSpectrum");
        } catch (const error& e) {
            CHECK(e.code() == errc::insufficient_spectrum);
        }
        CHECK(spectrum_occupancy_hash(tiny) == hash0);
    }

    SUBCASE("validation failures carry the violation list") {
        auto r = client_a_request();
        r.intents[0].endpoints.push_back(endpoint_id{"A9"});
        try {
            vtc::realize(st, client_id{"A"}, r, ctx);
            FAIL("expected SchemaViolation");
        } catch (const error& e) {
            CHECK(e.code() == errc::schema_violation);
            CHECK(e.details().at("violations").size() == 1);
        }
        CHECK(spectrum_occupancy_hash(st) == before);
    }
}

TEST_CASE("flexible bandwidth is best-effort") {
    // 1 slot per link: the dedicated demand takes it, flexible falls short
    auto st = two_terminal_state(1);
    auto ctx = two_terminal_ctx();
    const auto& rt = vtc::realize(st, client_id{"B"}, simple_request(10000, 5000), ctx);
    REQUIRE(rt.links.size() == 1);
    CHECK(rt.links[0].paths[0].dedicated.has_value());
    CHECK(!rt.links[0].paths[0].flexible.has_value());
    CHECK(rt.links[0].flexible_shortfall);
    CHECK(audit::audit_state(st, ctx.profiles).empty());
}

TEST_CASE("flexible reservations share slots across intents") {
    auto st = two_terminal_state(4);
    auto ctx = two_terminal_ctx();

    auto r1 = simple_request(0, 10000);
    r1.topology_id = "flex-1";
    auto r2 = simple_request(0, 10000);
    r2.topology_id = "flex-2";
    vtc::realize(st, client_id{"B"}, r1, ctx);
    vtc::realize(st, client_id{"B"}, r2, ctx);

    // both flexible demands share slot 0 on the only link
    const auto& spec = st.topology.links.at(link_id{"L1"}).spectrum;
    CHECK(spec.slot_owners(0).size() == 2);
    CHECK(!spec.slot_dedicated(0));
    CHECK(audit::audit_state(st, ctx.profiles).empty());
}

TEST_CASE("protection adds one extra disjoint path") {
    auto st = six_node_state();
    auto ctx = six_node_ctx();
    auto r = client_a_request();
    r.intents[0].minimum_paths = 1;
    r.intents[0].protection = true;

    const auto& rt = vtc::realize(st, client_id{"A"}, r, ctx);
    for (const auto& vl : rt.links) {
        REQUIRE(vl.paths.size() == 2);
        CHECK(vl.paths[0].role == vtc::path_role::working);
        CHECK(vl.paths[1].role == vtc::path_role::protection);
        CHECK(oracle::disjoint_pair(vl.paths[0].route, vl.paths[1].route,
                                    pathcomp::disjoint_mode::link));
        // protection is reserved like a working path
        CHECK(vl.paths[1].dedicated.has_value());
        CHECK(vl.paths[1].flexible.has_value());
    }
    CHECK(audit::audit_state(st, ctx.profiles).empty());

    SUBCASE("mode none with protection still yields a link-disjoint standby") {
        auto st2 = six_node_state();
        auto r2 = client_a_request();
        r2.intents[0].minimum_paths = 1;
        r2.intents[0].protection = true;
        r2.intents[0].disjoint = pathcomp::disjoint_mode::none;
        const auto& rt2 = vtc::realize(st2, client_id{"A"}, r2, ctx);
        for (const auto& vl : rt2.links) {
            REQUIRE(vl.paths.size() == 2);
            CHECK(oracle::disjoint_pair(vl.paths[0].route, vl.paths[1].route,
                                        pathcomp::disjoint_mode::link));
        }
    }
}

TEST_CASE("teardown releases everything") {
    auto st = six_node_state();
    auto ctx = six_node_ctx();
    auto hash0 = spectrum_occupancy_hash(st);
    vtc::realize(st, client_id{"A"}, client_a_request(), ctx);
    CHECK(spectrum_occupancy_hash(st) != hash0);

    SUBCASE("plain teardown") {
        vtc::teardown(st, client_id{"A"}, "Client A", false, ctx);
        CHECK(spectrum_occupancy_hash(st) == hash0);
        CHECK(st.installed.empty());
        CHECK(st.ledger.records.empty());
        CHECK(audit::audit_state(st, ctx.profiles).empty());
    }

    SUBCASE("active connections block teardown unless forced") {
        const auto& rt = st.installed.at(client_id{"A"}).at("Client A").realized;
        view::activate_connection(st, client_id{"A"}, "Client A", rt.links[0].id);
        try {
            vtc::teardown(st, client_id{"A"}, "Client A", false, ctx);
            FAIL("expected ActiveConnectionsExist");
        } catch (const error& e) {
            CHECK(e.code() == errc::active_connections_exist);
        }
        CHECK(!st.installed.empty());

        vtc::teardown(st, client_id{"A"}, "Client A", true, ctx);
        CHECK(spectrum_occupancy_hash(st) == hash0);
        // the forced teardown deleted the connection first
        bool saw_conn_delete = false;
        for (const auto& e : st.events)
            if (e.object_type == "connection" && e.kind == view::event_kind::object_deleted)
                saw_conn_delete = true;
        CHECK(saw_conn_delete);
        CHECK(audit::audit_state(st, ctx.profiles).empty());
    }

    SUBCASE("teardown of an unknown topology") {
        CHECK_THROWS_AS(vtc::teardown(st, client_id{"A"}, "nope", false, ctx), error);
    }
}

TEST_CASE("replace semantics") {
    auto st = six_node_state();
    auto ctx = six_node_ctx();
    vtc::realize(st, client_id{"A"}, client_a_request(), ctx);
    auto installed_hash = state_hash(st);

    SUBCASE("replace with an identical request reproduces identical placements") {
        auto links_before = st.installed.at(client_id{"A"}).at("Client A").realized.links;
        vtc::replace(st, client_id{"A"}, client_a_request(), ctx);
        auto links_after = st.installed.at(client_id{"A"}).at("Client A").realized.links;
        // deterministic algorithm, same spectrum: identical placements (token
        // ids are fresh bookkeeping and excluded from the comparison)
        auto scrub = [](std::vector<vtc::virtual_link> links) {
            for (auto& vl : links)
                for (auto& sp : vl.paths) {
                    if (sp.dedicated) sp.dedicated->token = 0;
                    if (sp.flexible) sp.flexible->token = 0;
                }
            return links;
        };
        CHECK(scrub(links_before) == scrub(links_after));
        // no object or value events: nothing changed
        for (const auto& e : view::poll_events(st, 4, 100))
            CHECK(e.object_type != "virtual-link");
    }

    SUBCASE("failed replace restores the old topology untouched") {
        auto r = client_a_request();
        r.intents[0].minimum_paths = 5;
        try {
            vtc::replace(st, client_id{"A"}, r, ctx);
            FAIL("expected InfeasiblePaths");
        } catch (const error& e) {
            CHECK(e.code() == errc::infeasible_paths);
        }
        CHECK(state_hash(st) == installed_hash);
        CHECK(audit::audit_state(st, ctx.profiles).empty());
    }

    SUBCASE("growing a two-endpoint intent to three multiplies the links") {
        auto st2 = six_node_state();
        auto small = client_a_request();
        small.intents[0].endpoints = {endpoint_id{"A1"}, endpoint_id{"A2"}};
        vtc::realize(st2, client_id{"A"}, small, ctx);
        CHECK(st2.installed.at(client_id{"A"}).at("Client A").realized.links.size() == 1);

        vtc::replace(st2, client_id{"A"}, client_a_request(), ctx);
        CHECK(st2.installed.at(client_id{"A"}).at("Client A").realized.links.size() == 3);
        CHECK(audit::audit_state(st2, ctx.profiles).empty());

        // diff events: surviving A1-A2 link reported as changed or silent, two creations
        int created = 0;
        for (const auto& e : st2.events)
            if (e.object_type == "virtual-link" && e.kind == view::event_kind::object_created)
                ++created;
        CHECK(created == 1 + 2);  // initial install + two new pair links
    }

    SUBCASE("replace flips flexible-shortfall and reports it") {
        auto tight = two_terminal_state(3);
        auto ctx2 = two_terminal_ctx();
        auto r1 = simple_request(50000, 50000);  // 1 + 1 slots, fits in 3
        vtc::realize(tight, client_id{"B"}, r1, ctx2);
        CHECK(!tight.installed.at(client_id{"B"}).at("pair").realized.links[0].flexible_shortfall);

        auto r2 = simple_request(50000, 150000);  // flexible now needs 3 slots, only 2 free
        vtc::replace(tight, client_id{"B"}, r2, ctx2);
        CHECK(tight.installed.at(client_id{"B"}).at("pair").realized.links[0].flexible_shortfall);

        bool saw_change = false;
        for (const auto& e : tight.events) {
            if (e.kind == view::event_kind::value_changed && e.detail &&
                e.detail->field == "flexible-shortfall") {
                CHECK(e.detail->old_value == nlohmann::json(false));
                CHECK(e.detail->new_value == nlohmann::json(true));
                saw_change = true;
            }
        }
        CHECK(saw_change);
        CHECK(audit::audit_state(tight, ctx2.profiles).empty());
    }
}

TEST_CASE("co-located endpoints cannot be realized") {
    hypervisor_state st;
    st.topology = topo::parse_physical_topology(R"({
      "nodes": [{"id": "T1", "kind": "terminal", "tps": ["c1", "c2"]}],
      "links": [],
      "endpoints": [
        {"endpoint-id": "B1", "node": "T1", "tp": "c1"},
        {"endpoint-id": "B2", "node": "T1", "tp": "c2"}
      ]
    })");
    auto ctx = two_terminal_ctx();
    try {
        vtc::realize(st, client_id{"B"}, simple_request(10000, 0), ctx);
        FAIL("expected InfeasiblePaths");
    } catch (const error& e) {
        CHECK(e.code() == errc::infeasible_paths);
    }
}
