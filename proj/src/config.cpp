// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lumen/errors.hpp"
#include "lumen/state.hpp"

namespace lumen::service {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw error(errc::invalid_args, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string resolve(const std::string& base_dir, const std::string& path) {
    if (path.empty()) return path;
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace

service_config config_from_json(const nlohmann::json& doc, const std::string& base_dir) {
    if (!doc.is_object()) throw error(errc::malformed_document, "config must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        static const std::set<std::string> known{
            "listen-address", "listen-port",    "physical-topology", "provider-constraints",
            "snapshot-path",  "slots-per-link", "transceiver-profiles"};
        if (!known.count(key))
            throw error(errc::malformed_document, "unknown config key \"" + key + "\"");
    }

    service_config cfg;
    cfg.listen_address = doc.value("listen-address", cfg.listen_address);
    cfg.listen_port = doc.value("listen-port", cfg.listen_port);
    cfg.physical_topology_path = resolve(base_dir, doc.value("physical-topology", ""));
    cfg.provider_constraints_path = resolve(base_dir, doc.value("provider-constraints", ""));
    cfg.snapshot_path = resolve(base_dir, doc.value("snapshot-path", ""));
    cfg.slots_per_link = doc.value("slots-per-link", cfg.slots_per_link);
    if (cfg.slots_per_link < 1)
        throw error(errc::malformed_document, "slots-per-link must be >= 1");

    if (doc.contains("transceiver-profiles")) {
        cfg.profiles.clear();
        for (const auto& jp : doc.at("transceiver-profiles")) {
            spectrum::transceiver_profile p;
            p.name = jp.at("name").get<std::string>();
            p.slot_capacity_mbps = jp.at("slot-capacity-mbps").get<std::uint64_t>();
            p.max_reach_km = jp.at("max-reach-km").get<double>();
            cfg.profiles.push_back(std::move(p));
        }
    }
    spectrum::check_profile_table(cfg.profiles);

    if (cfg.physical_topology_path.empty())
        throw error(errc::malformed_document, "config must name a physical-topology file");
    if (cfg.provider_constraints_path.empty())
        throw error(errc::malformed_document, "config must name a provider-constraints file");
    return cfg;
}

service_config load_config(const std::string& path) {
    nlohmann::json doc = nlohmann::json::parse(slurp(path), nullptr, false);
    if (doc.is_discarded()) throw error(errc::malformed_document, path + " is not valid JSON");
    return config_from_json(doc, std::filesystem::path(path).parent_path().string());
}

vtc::provider_constraints constraints_from_json(const nlohmann::json& doc,
                                                const topo::physical_topology& topology) {
    if (!doc.is_object())
        throw error(errc::malformed_document, "constraints must be a JSON object");
    vtc::provider_constraints out;
    out.hide_interior = doc.value("hide-interior", false);

    std::set<endpoint_id> taken;
    for (const auto& ja : doc.value("assignments", nlohmann::json::array())) {
        client_id client{ja.at("client-id").get<std::string>()};
        if (out.assignments.count(client))
            throw error(errc::duplicate_id, "client " + client.str() + " assigned twice");
        std::vector<endpoint_id> eps;
        for (const auto& je : ja.at("endpoints")) {
            endpoint_id ep{je.get<std::string>()};
            if (!topology.endpoints.count(ep))
                throw error(errc::dangling_reference,
                            "assignment references unknown endpoint " + ep.str());
            if (!taken.insert(ep).second)
                throw error(errc::duplicate_id,
                            "endpoint " + ep.str() + " assigned to more than one client");
            eps.push_back(ep);
        }
        out.assignments.emplace(client, std::move(eps));
    }
    return out;
}

vtc::provider_constraints load_constraints(const std::string& path,
                                           const topo::physical_topology& topology) {
    nlohmann::json doc = nlohmann::json::parse(slurp(path), nullptr, false);
    if (doc.is_discarded()) throw error(errc::malformed_document, path + " is not valid JSON");
    return constraints_from_json(doc, topology);
}

std::string config_fingerprint(const service_config& cfg, const topo::physical_topology& topology,
                               const vtc::provider_constraints& constraints) {
    nlohmann::ordered_json j;
    j["slots-per-link"] = cfg.slots_per_link;
    j["profiles"] = nlohmann::ordered_json::array();
    for (const auto& p : cfg.profiles)
        j["profiles"].push_back(
            {{"name", p.name}, {"capacity", p.slot_capacity_mbps}, {"reach", p.max_reach_km}});
    j["topology"] = topo::serialize_topology(topology);
    j["hide-interior"] = constraints.hide_interior;
    j["assignments"] = nlohmann::ordered_json::object();
    for (const auto& [client, eps] : constraints.assignments) {
        nlohmann::ordered_json je = nlohmann::ordered_json::array();
        for (const auto& ep : eps) je.push_back(ep.str());
        j["assignments"][client.str()] = std::move(je);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(j.dump())));
    return buf;
}

}  // namespace lumen::service
