// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lumen/ids.hpp"
#include "lumen/pathcomp.hpp"

namespace lumen::intent {

// One intent: a set of endpoints plus the requirements they must fulfil.
// Field-for-field the "intents" list entry of the wire format.
struct intent_spec {
    std::string intent_id;
    std::vector<endpoint_id> endpoints;  // a set; order preserved for encoding
    std::uint64_t dedicated_bandwidth_mbps = 0;
    std::uint64_t flexible_bandwidth_mbps = 0;
    std::uint32_t minimum_paths = 1;
    pathcomp::disjoint_mode disjoint = pathcomp::disjoint_mode::none;
    bool protection = false;
    std::uint32_t maximum_active_connections = 0;  // 0 = unlimited

    bool operator==(const intent_spec&) const = default;
};

struct topology_request {
    std::string topology_id;
    std::vector<intent_spec> intents;

    bool operator==(const topology_request&) const = default;
};

// Endpoints the provider has assigned to one client.
struct endpoint_assignment {
    client_id client;
    std::vector<endpoint_id> endpoints;

    bool operator==(const endpoint_assignment&) const = default;
};

// One entry of "installed-topologies". Strict: unknown keys, missing fields,
// ill-typed values and duplicate list keys are rejected with the JSON path.
topology_request decode_request(std::string_view document);
topology_request request_from_json(const nlohmann::json& doc, const std::string& json_path);

// A whole two-entry-point document ("endpoints" + "topologies").
struct state_document {
    std::vector<endpoint_id> assigned_endpoints;
    std::vector<topology_request> topologies;

    bool operator==(const state_document&) const = default;
};
state_document decode_state(std::string_view document);

// Canonical encodings: key order as in the wire format, 2-space indentation.
nlohmann::ordered_json request_to_json(const topology_request& r);
nlohmann::ordered_json endpoints_subtree(const std::vector<endpoint_id>& assigned);
nlohmann::ordered_json topologies_subtree(const std::vector<topology_request>& installed);
std::string encode_state(const endpoint_assignment& assignment,
                         const std::vector<topology_request>& installed);

// Empty iff every intent invariant holds and every referenced endpoint is
// assigned to the client. Total and side-effect-free; violations are reported
// in document order.
std::vector<violation> validate_request(const topology_request& r,
                                        const endpoint_assignment& assignment);

}  // namespace lumen::intent
