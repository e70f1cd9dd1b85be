// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "lumen/ids.hpp"
#include "lumen/spectrum.hpp"
#include "lumen/state.hpp"

namespace lumen::audit {

// Independent re-checkers over installed state. They re-derive everything
// from stored data (paths, reservations, spectra, events) rather than
// trusting the construction code.

// Pairwise disjointness of working paths per virtual link against the
// recorded intent mode; protection paths disjoint from every working path.
std::vector<violation> audit_disjointness(const hypervisor_state& st);

// Re-summed path length fits the chosen transceiver profile's reach.
std::vector<violation> audit_reach(const hypervisor_state& st,
                                   const std::vector<spectrum::transceiver_profile>& profiles);

// Reservation records and per-link occupancy agree exactly: rebuilding every
// spectrum from the ledger reproduces the live spectra, and every realized
// path's reservations are live with matching links and ranges.
std::vector<violation> audit_continuity(const hypervisor_state& st);

// Per-slot occupancy invariants (dedicated slots have exactly one owner, no
// duplicate shared owners).
std::vector<violation> audit_spectrum_invariants(const hypervisor_state& st);

// Active connection count per intent never exceeds the recorded cap.
std::vector<violation> audit_caps(const hypervisor_state& st);

// Replaying the event log reconstructs the exact inventory of topologies,
// virtual links and active connections.
std::vector<violation> audit_event_replay(const hypervisor_state& st);

// All of the above.
std::vector<violation> audit_state(const hypervisor_state& st,
                                   const std::vector<spectrum::transceiver_profile>& profiles);

}  // namespace lumen::audit
