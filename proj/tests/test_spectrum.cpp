// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/spectrum.hpp"

#include <random>

#include <doctest.h>

#include "lumen/errors.hpp"
#include "oracle.hpp"

using namespace lumen;
using namespace lumen::spectrum;

namespace {

reservation_id rid(const std::string& s) { return reservation_id{s}; }

void check_occupancy_invariants(const spectrum_state& s) {
    for (std::uint32_t i = 0; i < s.slot_count(); ++i) {
        const auto& owners = s.slot_owners(i);
        if (s.slot_dedicated(i)) {
            REQUIRE(owners.size() == 1);
        }
        std::set<reservation_id> uniq(owners.begin(), owners.end());
        REQUIRE(uniq.size() == owners.size());
        if (owners.empty()) REQUIRE(!s.slot_dedicated(i));
    }
}

}  // namespace

TEST_CASE("slots_for_demand picks the fastest profile within reach") {
    auto table = default_profile_table();

    auto a = slots_for_demand(10000, 100, table);
    CHECK(a.slot_count == 1);
    CHECK(a.profile.name == "profile-16QAM");

    auto b = slots_for_demand(10000, 1500, table);
    CHECK(b.slot_count == 1);
    CHECK(b.profile.name == "profile-QPSK");

    auto c = slots_for_demand(100000, 1500, table);
    CHECK(c.slot_count == 4);
    CHECK(c.profile.name == "profile-QPSK");

    auto d = slots_for_demand(1, 10, table);
    CHECK(d.slot_count == 1);
    CHECK(d.profile.name == "profile-16QAM");
}

TEST_CASE("slots_for_demand error cases") {
    auto table = default_profile_table();
    CHECK_THROWS_AS(slots_for_demand(10000, 2500, table), error);
    try {
        slots_for_demand(10000, 2500, table);
    } catch (const error& e) {
        CHECK(e.code() == errc::no_feasible_profile);
    }
    CHECK_THROWS_AS(slots_for_demand(0, 10, table), error);
    CHECK_THROWS_AS(slots_for_demand(10, 10, {}), error);

    // ill-formed table: capacity not strictly decreasing
    std::vector<transceiver_profile> bad{{"a", 100, 10.0}, {"b", 100, 20.0}};
    CHECK_THROWS_AS(check_profile_table(bad), error);
}

TEST_CASE("slots_for_demand monotonicity") {
    auto table = default_profile_table();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> len(0, 1999);
    for (int i = 0; i < 200; ++i) {
        double l = len(rng);
        std::uint64_t r1 = 1 + rng() % 200000, r2 = 1 + rng() % 200000;
        if (r1 > r2) std::swap(r1, r2);
        CHECK(slots_for_demand(r1, l, table).slot_count <=
              slots_for_demand(r2, l, table).slot_count);

        double l1 = len(rng), l2 = len(rng);
        if (l1 > l2) std::swap(l1, l2);
        std::uint64_t r = 1 + rng() % 200000;
        CHECK(slots_for_demand(r, l1, table).profile.slot_capacity_mbps >=
              slots_for_demand(r, l2, table).profile.slot_capacity_mbps);
    }
}

TEST_CASE("first_fit returns the smallest feasible start") {
    spectrum_state l1(16), l2(16);
    l1.occupy({0, 2}, reservation_class::dedicated, rid("x"));
    l2.occupy({2, 1}, reservation_class::dedicated, rid("y"));

    auto r = first_fit({&l1, &l2}, 2, reservation_class::dedicated, rid("mine"));
    REQUIRE(r.has_value());
    CHECK(r->start == 3);
    CHECK(r->count == 2);

    spectrum_state empty(16);
    auto r2 = first_fit({&empty}, 2, reservation_class::dedicated, rid("mine"));
    REQUIRE(r2.has_value());
    CHECK(*r2 == slot_range{0, 2});

    spectrum_state full(8);
    full.occupy({0, 8}, reservation_class::dedicated, rid("other"));
    CHECK(!first_fit({&full}, 1, reservation_class::shared, rid("mine")).has_value());
}

TEST_CASE("first_fit shared class accepts shared but never dedicated slots") {
    spectrum_state s(8);
    s.occupy({0, 2}, reservation_class::shared, rid("a"));
    s.occupy({2, 2}, reservation_class::dedicated, rid("b"));

    auto r = first_fit({&s}, 2, reservation_class::shared, rid("c"));
    REQUIRE(r.has_value());
    CHECK(*r == slot_range{0, 2});

    auto d = first_fit({&s}, 3, reservation_class::dedicated, rid("c"));
    REQUIRE(d.has_value());
    CHECK(*d == slot_range{4, 3});
}

TEST_CASE("first_fit minimality against exhaustive scan") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        std::uint32_t S = 8 + rng() % 9;
        int nlinks = 1 + static_cast<int>(rng() % 3);
        std::vector<spectrum_state> links(nlinks, spectrum_state(S));
        for (auto& l : links) {
            int blobs = static_cast<int>(rng() % 4);
            for (int b = 0; b < blobs; ++b) {
                std::uint32_t start = rng() % S;
                std::uint32_t count = 1 + rng() % 3;
                if (start + count > S) continue;
                auto cls = (rng() % 2) ? reservation_class::dedicated : reservation_class::shared;
                reservation_id owner = rid("o" + std::to_string(rng() % 3));
                if (l.range_assignable({start, count}, cls, owner)) l.occupy({start, count}, cls, owner);
            }
        }
        std::vector<const spectrum_state*> view;
        for (auto& l : links) view.push_back(&l);

        std::uint32_t count = 1 + rng() % 4;
        auto cls = (rng() % 2) ? reservation_class::dedicated : reservation_class::shared;
        auto owner = rid("o1");
        auto got = first_fit(view, count, cls, owner);
        auto want = oracle::first_fit_scan(view, count, cls, owner);
        CHECK(got == want);
    }
}

TEST_CASE("apply then release restores the exact spectrum state") {
    spectrum_state a(32), b(32);
    a.occupy({9, 3}, reservation_class::shared, rid("pre"));
    spectrum_state a0 = a, b0 = b;

    reservation_ledger ledger;
    std::vector<std::pair<link_id, spectrum_state*>> path{{link_id{"L1"}, &a}, {link_id{"L2"}, &b}};
    auto tok = apply_reservation(ledger, path, {3, 4}, reservation_class::dedicated, rid("me"));
    CHECK(a.slot_dedicated(3));
    CHECK(b.slot_dedicated(6));
    CHECK(ledger.records.size() == 1);

    auto resolve = [&](const link_id& id) -> spectrum_state& {
        return id == link_id{"L1"} ? a : b;
    };
    release_reservation(ledger, resolve, tok);
    CHECK(a == a0);
    CHECK(b == b0);
    CHECK(ledger.records.empty());

    CHECK_THROWS_AS(release_reservation(ledger, resolve, tok), error);
    try {
        release_reservation(ledger, resolve, tok);
    } catch (const error& e) {
        CHECK(e.code() == errc::double_release);
    }
    try {
        release_reservation(ledger, resolve, 9999);
    } catch (const error& e) {
        CHECK(e.code() == errc::unknown_token);
    }
}

TEST_CASE("shared reservations accumulate owners and release one at a time") {
    spectrum_state s(8);
    reservation_ledger ledger;
    std::vector<std::pair<link_id, spectrum_state*>> path{{link_id{"L"}, &s}};
    auto resolve = [&](const link_id&) -> spectrum_state& { return s; };

    auto tx = apply_reservation(ledger, path, {0, 1}, reservation_class::shared, rid("X"));
    auto ty = apply_reservation(ledger, path, {0, 1}, reservation_class::shared, rid("Y"));
    CHECK(s.slot_owners(0) == std::vector<reservation_id>{rid("X"), rid("Y")});
    CHECK(!s.slot_dedicated(0));

    release_reservation(ledger, resolve, tx);
    CHECK(s.slot_owners(0) == std::vector<reservation_id>{rid("Y")});
    release_reservation(ledger, resolve, ty);
    CHECK(s.slot_free(0));
}

TEST_CASE("apply over a foreign dedicated slot fails atomically") {
    spectrum_state a(8), b(8);
    b.occupy({1, 1}, reservation_class::dedicated, rid("other"));
    spectrum_state a0 = a, b0 = b;

    reservation_ledger ledger;
    std::vector<std::pair<link_id, spectrum_state*>> path{{link_id{"LA"}, &a}, {link_id{"LB"}, &b}};
    CHECK_THROWS_AS(apply_reservation(ledger, path, {0, 3}, reservation_class::dedicated, rid("me")),
                    error);
    CHECK(a == a0);
    CHECK(b == b0);
    CHECK(ledger.records.empty());
}

TEST_CASE("occupancy invariants hold under random apply/release traffic") {
    std::mt19937 rng(2026);
    spectrum_state s(24);
    reservation_ledger ledger;
    std::vector<std::pair<link_id, spectrum_state*>> path{{link_id{"L"}, &s}};
    auto resolve = [&](const link_id&) -> spectrum_state& { return s; };
    std::vector<std::uint64_t> live;
    spectrum_state initial = s;

    for (int step = 0; step < 2000; ++step) {
        bool do_apply = live.empty() || (rng() % 2 == 0);
        if (do_apply) {
            std::uint32_t start = rng() % 24;
            std::uint32_t count = 1 + rng() % 4;
            auto cls = (rng() % 2) ? reservation_class::dedicated : reservation_class::shared;
            reservation_id owner = rid("owner" + std::to_string(rng() % 5));
            if (start + count <= 24 && s.range_assignable({start, count}, cls, owner))
                live.push_back(apply_reservation(ledger, path, {start, count}, cls, owner));
        } else {
            std::size_t i = rng() % live.size();
            release_reservation(ledger, resolve, live[i]);
            live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
        }
        check_occupancy_invariants(s);
    }
    for (auto tok : live) release_reservation(ledger, resolve, tok);
    CHECK(s == initial);
}
