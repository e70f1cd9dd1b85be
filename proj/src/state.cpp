// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/state.hpp"

namespace lumen {

const view::event& push_event(hypervisor_state& st, view::event_kind kind, std::string object_type,
                              std::string object_id, std::optional<view::value_change> detail) {
    view::event e;
    e.seq = ++st.event_seq;
    e.kind = kind;
    e.object_type = std::move(object_type);
    e.object_id = std::move(object_id);
    e.detail = std::move(detail);
    st.events.push_back(std::move(e));
    return st.events.back();
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t spectrum_occupancy_hash(const hypervisor_state& st) {
    std::string repr;
    for (const auto& [lid, link] : st.topology.links) {
        repr += lid.str();
        repr += '{';
        for (const auto& run : link.spectrum.runs()) {
            repr += std::to_string(run.start) + ":" + std::to_string(run.count) +
                    (run.dedicated ? "D" : "s");
            for (const auto& o : run.owners) {
                repr += o.str();
                repr += ',';
            }
            repr += ';';
        }
        repr += '}';
    }
    return fnv1a64(repr);
}

const installed_topology* find_installed(const hypervisor_state& st, const client_id& client,
                                         const std::string& topology_id) {
    auto cit = st.installed.find(client);
    if (cit == st.installed.end()) return nullptr;
    auto tit = cit->second.find(topology_id);
    if (tit == cit->second.end()) return nullptr;
    return &tit->second;
}

}  // namespace lumen
