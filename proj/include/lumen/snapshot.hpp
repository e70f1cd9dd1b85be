// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "lumen/state.hpp"

namespace lumen::service {

// Canonical snapshot document: installed requests, realized topologies,
// reservation tokens, connections, the event log and its high-water mark,
// plus the config fingerprint.
std::string save_snapshot(const hypervisor_state& st, const std::string& config_fingerprint);

// Rebuilds state on top of a freshly loaded physical topology. Refuses with
// CorruptSnapshot (naming the failing validator) rather than discarding or
// repairing anything.
hypervisor_state load_snapshot(std::string_view bytes, const std::string& expected_fingerprint,
                               const topo::physical_topology& fresh_topology,
                               const std::vector<spectrum::transceiver_profile>& profiles);

// Atomic write: temp file + rename.
void write_snapshot_file(const std::string& path, const hypervisor_state& st,
                         const std::string& config_fingerprint);

}  // namespace lumen::service
