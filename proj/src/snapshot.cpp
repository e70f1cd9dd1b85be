// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/snapshot.hpp"

#include <cstdio>
#include <fstream>

#include "lumen/audit.hpp"
#include "lumen/errors.hpp"

namespace lumen::service {

namespace {

constexpr const char* snapshot_format = "lumen-snapshot-1";

nlohmann::ordered_json range_to_json(const spectrum::slot_range& r) {
    return {{"start", r.start}, {"count", r.count}};
}

spectrum::slot_range range_from_json(const nlohmann::json& j) {
    return {j.at("start").get<std::uint32_t>(), j.at("count").get<std::uint32_t>()};
}

nlohmann::ordered_json reservation_to_json(const vtc::path_reservation& r) {
    nlohmann::ordered_json j = range_to_json(r.range);
    j["token"] = r.token;
    j["profile"] = r.profile;
    return j;
}

vtc::path_reservation reservation_from_json(const nlohmann::json& j) {
    vtc::path_reservation r;
    r.range = range_from_json(j);
    r.token = j.at("token").get<std::uint64_t>();
    r.profile = j.at("profile").get<std::string>();
    return r;
}

nlohmann::ordered_json realized_to_json(const vtc::realized_topology& rt) {
    nlohmann::ordered_json j;
    j["topology-id"] = rt.topology_id;
    j["client"] = rt.client.str();
    j["created-at"] = rt.created_at;
    j["caps"] = nlohmann::ordered_json::object();
    for (const auto& [intent, cap] : rt.per_intent_cap) j["caps"][intent] = cap;
    j["links"] = nlohmann::ordered_json::array();
    for (const auto& vl : rt.links) {
        nlohmann::ordered_json jl;
        jl["id"] = vl.id;
        jl["intent-id"] = vl.intent_id;
        jl["endpoints"] = {vl.ep_a.str(), vl.ep_b.str()};
        jl["dedicated-bandwidth"] = vl.dedicated_mbps;
        jl["flexible-bandwidth"] = vl.flexible_mbps;
        jl["flexible-shortfall"] = vl.flexible_shortfall;
        jl["paths"] = nlohmann::ordered_json::array();
        for (const auto& sp : vl.paths) {
            nlohmann::ordered_json jp;
            jp["role"] = std::string(vtc::path_role_name(sp.role));
            jp["cost"] = sp.route.cost;
            jp["nodes"] = nlohmann::ordered_json::array();
            for (const auto& n : sp.route.nodes) jp["nodes"].push_back(n.str());
            jp["links"] = nlohmann::ordered_json::array();
            for (const auto& l : sp.route.links) jp["links"].push_back(l.str());
            if (sp.dedicated) jp["dedicated"] = reservation_to_json(*sp.dedicated);
            if (sp.flexible) jp["flexible"] = reservation_to_json(*sp.flexible);
            jl["paths"].push_back(std::move(jp));
        }
        j["links"].push_back(std::move(jl));
    }
    return j;
}

vtc::realized_topology realized_from_json(const nlohmann::json& j) {
    vtc::realized_topology rt;
    rt.topology_id = j.at("topology-id").get<std::string>();
    rt.client = client_id{j.at("client").get<std::string>()};
    rt.created_at = j.at("created-at").get<std::uint64_t>();
    for (const auto& [intent, cap] : j.at("caps").items())
        rt.per_intent_cap[intent] = cap.get<std::uint32_t>();
    for (const auto& jl : j.at("links")) {
        vtc::virtual_link vl;
        vl.id = jl.at("id").get<std::string>();
        vl.intent_id = jl.at("intent-id").get<std::string>();
        vl.ep_a = endpoint_id{jl.at("endpoints").at(0).get<std::string>()};
        vl.ep_b = endpoint_id{jl.at("endpoints").at(1).get<std::string>()};
        vl.dedicated_mbps = jl.at("dedicated-bandwidth").get<std::uint64_t>();
        vl.flexible_mbps = jl.at("flexible-bandwidth").get<std::uint64_t>();
        vl.flexible_shortfall = jl.at("flexible-shortfall").get<bool>();
        for (const auto& jp : jl.at("paths")) {
            vtc::supporting_path sp;
            std::string role = jp.at("role").get<std::string>();
            sp.role = role == "protection" ? vtc::path_role::protection : vtc::path_role::working;
            sp.route.cost = jp.at("cost").get<double>();
            for (const auto& n : jp.at("nodes")) sp.route.nodes.push_back(node_id{n.get<std::string>()});
            for (const auto& l : jp.at("links")) sp.route.links.push_back(link_id{l.get<std::string>()});
            if (jp.contains("dedicated")) sp.dedicated = reservation_from_json(jp.at("dedicated"));
            if (jp.contains("flexible")) sp.flexible = reservation_from_json(jp.at("flexible"));
            vl.paths.push_back(std::move(sp));
        }
        rt.links.push_back(std::move(vl));
    }
    return rt;
}

nlohmann::ordered_json state_to_json(const hypervisor_state& st) {
    nlohmann::ordered_json doc;
    doc["format"] = snapshot_format;

    doc["reservations"] = nlohmann::ordered_json::object();
    for (const auto& [token, rec] : st.ledger.records) {
        nlohmann::ordered_json jr;
        jr["links"] = nlohmann::ordered_json::array();
        for (const auto& l : rec.links) jr["links"].push_back(l.str());
        jr["range"] = range_to_json(rec.range);
        jr["class"] = std::string(spectrum::reservation_class_name(rec.cls));
        jr["owner"] = rec.owner.str();
        doc["reservations"][std::to_string(token)] = std::move(jr);
    }
    doc["next-token"] = st.ledger.next_token;
    doc["spectrum-hash"] = spectrum_occupancy_hash(st);

    doc["clients"] = nlohmann::ordered_json::object();
    for (const auto& [client, topologies] : st.installed) {
        nlohmann::ordered_json jc = nlohmann::ordered_json::object();
        for (const auto& [tid, inst] : topologies) {
            nlohmann::ordered_json jt;
            jt["request"] = intent::request_to_json(inst.request);
            jt["realized"] = realized_to_json(inst.realized);
            jc[tid] = std::move(jt);
        }
        doc["clients"][client.str()] = std::move(jc);
    }

    doc["connections"] = nlohmann::ordered_json::object();
    for (const auto& [cid, conn] : st.connections) {
        nlohmann::ordered_json jc;
        jc["client"] = conn.client.str();
        jc["topology-id"] = conn.topology_id;
        jc["intent-id"] = conn.intent_id;
        jc["virtual-link-id"] = conn.virtual_link_id;
        jc["state"] = conn.state == view::connection_state::active ? "active" : "deleted";
        jc["activated-at"] = conn.activated_at;
        doc["connections"][cid] = std::move(jc);
    }

    doc["event-seq"] = st.event_seq;
    doc["events"] = nlohmann::ordered_json::array();
    for (const auto& e : st.events) doc["events"].push_back(view::event_to_json(e));
    return doc;
}

}  // namespace

std::string save_snapshot(const hypervisor_state& st, const std::string& config_fingerprint) {
    nlohmann::ordered_json doc = state_to_json(st);
    doc["config-fingerprint"] = config_fingerprint;
    return doc.dump(2) + "\n";
}

hypervisor_state load_snapshot(std::string_view bytes, const std::string& expected_fingerprint,
                               const topo::physical_topology& fresh_topology,
                               const std::vector<spectrum::transceiver_profile>& profiles) {
    nlohmann::json doc = nlohmann::json::parse(bytes, nullptr, false);
    if (doc.is_discarded())
        throw error(errc::corrupt_snapshot, "snapshot is not valid JSON");

    try {
        if (doc.value("format", "") != snapshot_format)
            throw error(errc::corrupt_snapshot, "unknown snapshot format");
        if (doc.at("config-fingerprint").get<std::string>() != expected_fingerprint)
            throw error(errc::corrupt_snapshot,
                        "snapshot was taken under a different configuration");

        hypervisor_state st;
        st.topology = fresh_topology;

        for (const auto& [token_str, jr] : doc.at("reservations").items()) {
            spectrum::reservation_record rec;
            for (const auto& l : jr.at("links")) rec.links.push_back(link_id{l.get<std::string>()});
            rec.range = range_from_json(jr.at("range"));
            rec.cls = spectrum::reservation_class_from_name(jr.at("class").get<std::string>());
            rec.owner = reservation_id{jr.at("owner").get<std::string>()};

            for (const auto& lid : rec.links) {
                auto it = st.topology.links.find(lid);
                if (it == st.topology.links.end())
                    throw error(errc::corrupt_snapshot,
                                "reservation references unknown link " + lid.str());
                it->second.spectrum.occupy(rec.range, rec.cls, rec.owner);
            }
            st.ledger.records.emplace(std::stoull(token_str), std::move(rec));
        }
        st.ledger.next_token = doc.at("next-token").get<std::uint64_t>();

        if (spectrum_occupancy_hash(st) != doc.at("spectrum-hash").get<std::uint64_t>())
            throw error(errc::corrupt_snapshot,
                        "validator SpectrumHash: rebuilt occupancy differs from the snapshot");

        for (const auto& [client, jtopos] : doc.at("clients").items()) {
            for (const auto& [tid, jt] : jtopos.items()) {
                installed_topology inst;
                inst.request = intent::request_from_json(jt.at("request"), "$.request");
                inst.realized = realized_from_json(jt.at("realized"));
                st.installed[client_id{client}][tid] = std::move(inst);
            }
        }

        for (const auto& [cid, jc] : doc.at("connections").items()) {
            view::connection conn;
            conn.id = cid;
            conn.client = client_id{jc.at("client").get<std::string>()};
            conn.topology_id = jc.at("topology-id").get<std::string>();
            conn.intent_id = jc.at("intent-id").get<std::string>();
            conn.virtual_link_id = jc.at("virtual-link-id").get<std::string>();
            conn.state = jc.at("state").get<std::string>() == "active"
                             ? view::connection_state::active
                             : view::connection_state::deleted;
            conn.activated_at = jc.at("activated-at").get<std::uint64_t>();
            st.connections.emplace(cid, std::move(conn));
        }

        st.event_seq = doc.at("event-seq").get<std::uint64_t>();
        for (const auto& je : doc.at("events")) st.events.push_back(view::event_from_json(je));

        auto violations = audit::audit_state(st, profiles);
        if (!violations.empty())
            throw error(errc::corrupt_snapshot,
                        "validator " + violations.front().rule + " failed on " +
                            violations.front().subject + ": " + violations.front().message);
        return st;
    } catch (const error&) {
        throw;
    } catch (const std::exception& e) {
        throw error(errc::corrupt_snapshot, std::string("snapshot is incomplete: ") + e.what());
    }
}

void write_snapshot_file(const std::string& path, const hypervisor_state& st,
                         const std::string& config_fingerprint) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
        if (!out.good()) throw error(errc::invalid_args, "cannot write snapshot to " + tmp);
        out << save_snapshot(st, config_fingerprint);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw error(errc::invalid_args, "cannot move snapshot into place at " + path);
}

}  // namespace lumen::service

namespace lumen {

std::uint64_t state_hash(const hypervisor_state& st) {
    return fnv1a64(service::save_snapshot(st, ""));
}

}  // namespace lumen
