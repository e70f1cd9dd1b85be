// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lumen/ids.hpp"

namespace lumen::spectrum {

// ITU flexible-grid convention: 12.5 GHz slots, 320 slots ~ 4 THz C-band.
// Both are configuration, not constants; this is only the default.
inline constexpr std::uint32_t default_slots_per_link = 320;
inline constexpr double slot_width_ghz = 12.5;

enum class reservation_class { dedicated, shared };

std::string_view reservation_class_name(reservation_class cls);
reservation_class reservation_class_from_name(std::string_view name);

// A contiguous run of slots. Contiguity is implicit in the representation.
struct slot_range {
    std::uint32_t start = 0;
    std::uint32_t count = 0;

    auto operator<=>(const slot_range&) const = default;
    std::uint32_t end() const { return start + count; }  // one past last
};

// Per-slot occupancy of one fiber. A slot is free, dedicated to exactly one
// owner, or shared by a non-empty owner set.
class spectrum_state {
public:
    spectrum_state() : spectrum_state(default_slots_per_link) {}
    explicit spectrum_state(std::uint32_t slot_count);

    std::uint32_t slot_count() const { return static_cast<std::uint32_t>(cells_.size()); }

    bool slot_free(std::uint32_t slot) const;
    bool slot_dedicated(std::uint32_t slot) const;
    const std::vector<reservation_id>& slot_owners(std::uint32_t slot) const;

    // Assignability predicate: dedicated class needs free slots; shared class
    // accepts free or already-shared slots where the owner is not yet present.
    bool slot_assignable(std::uint32_t slot, reservation_class cls, const reservation_id& owner) const;
    bool range_assignable(slot_range range, reservation_class cls, const reservation_id& owner) const;

    // Mutations keep the occupancy invariants; they throw ConflictingReservation
    // on a precondition breach and leave the state untouched.
    void occupy(slot_range range, reservation_class cls, const reservation_id& owner);
    void vacate(slot_range range, const reservation_id& owner);

    std::size_t occupied_slots() const;

    bool operator==(const spectrum_state&) const = default;

    // Maximal runs of identical occupancy, for serialization and hashing.
    struct run {
        std::uint32_t start = 0;
        std::uint32_t count = 0;
        bool dedicated = false;
        std::vector<reservation_id> owners;  // empty = free run
    };
    std::vector<run> runs() const;

private:
    struct cell {
        bool dedicated = false;
        std::vector<reservation_id> owners;  // sorted, unique; empty = free

        bool operator==(const cell&) const = default;
    };
    void check_range(slot_range range) const;

    std::vector<cell> cells_;
};

// Reach-limited modulation selection. Stands in for impairment awareness:
// longer paths fall back to lower-capacity profiles.
struct transceiver_profile {
    std::string name;
    std::uint64_t slot_capacity_mbps = 0;  // Mbit/s carried per 12.5 GHz slot
    double max_reach_km = 0;

    bool operator==(const transceiver_profile&) const = default;
};

std::vector<transceiver_profile> default_profile_table();

// Sorted by reach ascending, strictly decreasing slot capacity, non-dominated.
// Throws InvalidArgs otherwise.
void check_profile_table(const std::vector<transceiver_profile>& table);

struct demand_sizing {
    std::uint32_t slot_count = 0;
    transceiver_profile profile;
};

// Picks the highest-capacity profile whose reach covers the path, then sizes
// the demand as ceil(bitrate / slot_capacity). Throws NoFeasibleProfile when
// the path exceeds every profile's reach.
demand_sizing slots_for_demand(std::uint64_t bitrate_mbps, double path_length_km,
                               const std::vector<transceiver_profile>& table);

// Smallest start index such that `count` slots from it are assignable on every
// link of the path. Pure query; nullopt signals exhaustion.
std::optional<slot_range> first_fit(const std::vector<const spectrum_state*>& path_links,
                                    std::uint32_t count, reservation_class cls,
                                    const reservation_id& owner);

// Enough to undo an apply exactly.
struct reservation_record {
    std::vector<link_id> links;
    slot_range range;
    reservation_class cls = reservation_class::dedicated;
    reservation_id owner;

    bool operator==(const reservation_record&) const = default;
};

struct reservation_ledger {
    std::map<std::uint64_t, reservation_record> records;
    std::set<std::uint64_t> released;  // tombstones for DoubleRelease detection
    std::uint64_t next_token = 1;

    bool operator==(const reservation_ledger&) const = default;
};

using spectrum_resolver = std::function<spectrum_state&(const link_id&)>;

// Atomic per link set: every link is checked before any is mutated. Throws
// ConflictingReservation with no partial mutation if any link refuses.
std::uint64_t apply_reservation(reservation_ledger& ledger,
                                const std::vector<std::pair<link_id, spectrum_state*>>& path_links,
                                slot_range range, reservation_class cls,
                                const reservation_id& owner);

// Exact inverse of the matching apply. Throws UnknownToken / DoubleRelease.
void release_reservation(reservation_ledger& ledger, const spectrum_resolver& resolve,
                         std::uint64_t token);

}  // namespace lumen::spectrum
