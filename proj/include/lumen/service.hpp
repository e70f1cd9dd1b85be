// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <mutex>
#include <string>

#include "lumen/config.hpp"
#include "lumen/state.hpp"

namespace httplib {
class Server;
}

namespace lumen::service {

// Process shell around the modules: holds the current state snapshot, funnels
// every mutation through one writer, persists a snapshot after each commit
// and on shutdown. Readers share immutable snapshots and never block writers.
class hypervisor {
public:
    explicit hypervisor(service_config cfg);

    std::shared_ptr<const hypervisor_state> snapshot() const;

    struct install_result {
        bool created = false;  // false = replaced
        std::uint64_t virtual_link_count = 0;
    };
    install_result install_or_replace(const client_id& client,
                                      const intent::topology_request& request);
    void teardown(const client_id& client, const std::string& topology_id, bool force);
    view::connection activate(const client_id& client, const std::string& topology_id,
                              const std::string& virtual_link_id);
    void deactivate(const std::string& connection_id);

    const service_config& config() const { return cfg_; }
    const vtc::provider_constraints& constraints() const { return constraints_; }
    const std::string& fingerprint() const { return fingerprint_; }
    vtc::context make_context() const { return vtc::context{cfg_.profiles, constraints_}; }

    // Missing header resolves to the sole configured client, if unambiguous.
    client_id resolve_client(const std::string& header_value) const;

    void save() const;

private:
    template <class Fn>
    auto mutate(Fn&& fn);

    service_config cfg_;
    vtc::provider_constraints constraints_;
    std::string fingerprint_;

    mutable std::mutex write_mu_;  // serializes all mutators
    mutable std::mutex ptr_mu_;    // guards current_
    std::shared_ptr<const hypervisor_state> current_;
};

void register_routes(httplib::Server& server, hypervisor& hv);

// Binds, serves until SIGINT/SIGTERM, then writes a final snapshot.
int run_server(const service_config& cfg);

}  // namespace lumen::service
