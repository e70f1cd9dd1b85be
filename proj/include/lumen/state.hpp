// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lumen/intent.hpp"
#include "lumen/phys_topology.hpp"
#include "lumen/spectrum.hpp"
#include "lumen/virt_view.hpp"
#include "lumen/vtc.hpp"

namespace lumen {

struct installed_topology {
    intent::topology_request request;  // canonical request as accepted
    vtc::realized_topology realized;

    bool operator==(const installed_topology&) const = default;
};

// The whole mutable world as one value. Mutating operations run on a copy
// that the service commits atomically, so readers always see a consistent
// snapshot and failed operations leave no trace.
struct hypervisor_state {
    topo::physical_topology topology;  // per-link spectrum state lives here
    spectrum::reservation_ledger ledger;
    std::map<client_id, std::map<std::string, installed_topology>> installed;
    std::map<std::string, view::connection> connections;
    std::vector<view::event> events;
    std::uint64_t event_seq = 0;  // persisted high-water mark

    bool operator==(const hypervisor_state&) const = default;
};

// Appends with the next gap-free sequence number.
const view::event& push_event(hypervisor_state& st, view::event_kind kind, std::string object_type,
                              std::string object_id,
                              std::optional<view::value_change> detail = std::nullopt);

std::uint64_t fnv1a64(std::string_view bytes);

// Hash of the canonical serialized state (everything the snapshot carries).
std::uint64_t state_hash(const hypervisor_state& st);

// Hash of per-link spectrum occupancy only; used for atomicity checks.
std::uint64_t spectrum_occupancy_hash(const hypervisor_state& st);

const installed_topology* find_installed(const hypervisor_state& st, const client_id& client,
                                         const std::string& topology_id);

}  // namespace lumen
