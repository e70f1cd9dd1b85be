// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lumen/ids.hpp"
#include "lumen/intent.hpp"
#include "lumen/pathcomp.hpp"
#include "lumen/spectrum.hpp"

namespace lumen {
struct hypervisor_state;
}

namespace lumen::vtc {

enum class path_role { working, protection };

std::string_view path_role_name(path_role role);

struct path_reservation {
    std::uint64_t token = 0;
    spectrum::slot_range range;
    std::string profile;  // transceiver profile chosen for this path

    bool operator==(const path_reservation&) const = default;
};

struct supporting_path {
    pathcomp::path route;
    path_role role = path_role::working;
    std::optional<path_reservation> dedicated;
    std::optional<path_reservation> flexible;

    bool operator==(const supporting_path&) const = default;
};

// One potential connection between an unordered endpoint pair, backed by
// spectrum-reserved physical paths.
struct virtual_link {
    std::string id;  // "<topology>/<intent>/<epA>-<epB>"
    std::string intent_id;
    endpoint_id ep_a;  // lexicographically smaller endpoint
    endpoint_id ep_b;
    std::uint64_t dedicated_mbps = 0;
    std::uint64_t flexible_mbps = 0;
    std::vector<supporting_path> paths;  // working first, protection (if any) last
    bool flexible_shortfall = false;

    bool operator==(const virtual_link&) const = default;
};

struct realized_topology {
    std::string topology_id;
    client_id client;
    std::vector<virtual_link> links;
    std::map<std::string, std::uint32_t> per_intent_cap;  // intent -> max active (0 = unlimited)
    std::uint64_t created_at = 0;                         // event sequence number

    bool operator==(const realized_topology&) const = default;
};

struct provider_constraints {
    std::map<client_id, std::vector<endpoint_id>> assignments;
    bool hide_interior = false;

    bool operator==(const provider_constraints&) const = default;
};

struct context {
    std::vector<spectrum::transceiver_profile> profiles;
    provider_constraints constraints;
};

intent::endpoint_assignment assignment_for(const provider_constraints& c, const client_id& client);

// Full-mesh realization: one virtual link per unordered endpoint pair per
// intent, minimum-paths disjoint working paths each (plus one protection path
// when requested), dedicated and flexible spectrum reserved per path. All
// pairs succeed or nothing stays reserved. Failed flexible placement sets
// flexible_shortfall instead of failing; dedicated failure is fatal.
const realized_topology& realize(hypervisor_state& st, const client_id& client,
                                 const intent::topology_request& request, const context& ctx);

// Inverse of realize. Refuses while connections are active unless forced, in
// which case connections are deleted first.
void teardown(hypervisor_state& st, const client_id& client, const std::string& topology_id,
              bool force, const context& ctx);

// teardown(force) + realize, atomically: on failure the old topology stays
// installed untouched. Surviving virtual links get value-changed events
// instead of delete/create pairs.
const realized_topology& replace(hypervisor_state& st, const client_id& client,
                                 const intent::topology_request& request, const context& ctx);

}  // namespace lumen::vtc
