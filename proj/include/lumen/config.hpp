// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "lumen/phys_topology.hpp"
#include "lumen/spectrum.hpp"
#include "lumen/vtc.hpp"

namespace lumen::service {

struct service_config {
    std::string listen_address = "127.0.0.1";
    int listen_port = 8080;
    std::string physical_topology_path;
    std::string provider_constraints_path;
    std::string snapshot_path;  // empty disables persistence
    std::uint32_t slots_per_link = spectrum::default_slots_per_link;
    std::vector<spectrum::transceiver_profile> profiles = spectrum::default_profile_table();
};

// Relative file paths are resolved against the config file's directory.
service_config load_config(const std::string& path);
service_config config_from_json(const nlohmann::json& doc, const std::string& base_dir);

// Assignments must reference endpoints that exist in the topology; an
// endpoint belongs to at most one client.
vtc::provider_constraints load_constraints(const std::string& path,
                                           const topo::physical_topology& topology);
vtc::provider_constraints constraints_from_json(const nlohmann::json& doc,
                                                const topo::physical_topology& topology);

// Changes under any of slots-per-link, profile table, physical topology or
// constraints invalidate existing snapshots.
std::string config_fingerprint(const service_config& cfg, const topo::physical_topology& topology,
                               const vtc::provider_constraints& constraints);

}  // namespace lumen::service
