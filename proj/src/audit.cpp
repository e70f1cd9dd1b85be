// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/audit.hpp"

#include <algorithm>
#include <set>

namespace lumen::audit {

namespace {

void flag(std::vector<violation>& out, std::string rule, std::string subject, std::string message) {
    out.push_back(violation{std::move(rule), std::move(subject), std::move(message)});
}

std::set<link_id> link_set(const pathcomp::path& p) {
    return {p.links.begin(), p.links.end()};
}

std::set<node_id> interior_nodes(const pathcomp::path& p) {
    std::set<node_id> out;
    for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) out.insert(p.nodes[i]);
    return out;
}

bool share_links(const pathcomp::path& a, const pathcomp::path& b) {
    auto la = link_set(a);
    return std::any_of(b.links.begin(), b.links.end(),
                       [&](const link_id& l) { return la.count(l) > 0; });
}

bool share_interior(const pathcomp::path& a, const pathcomp::path& b) {
    auto na = interior_nodes(a);
    auto nb = interior_nodes(b);
    return std::any_of(nb.begin(), nb.end(), [&](const node_id& n) { return na.count(n) > 0; });
}

bool pair_disjoint(const pathcomp::path& a, const pathcomp::path& b,
                   pathcomp::disjoint_mode mode) {
    if (share_links(a, b)) return false;
    if (mode == pathcomp::disjoint_mode::node && share_interior(a, b)) return false;
    return true;
}

}  // namespace

std::vector<violation> audit_disjointness(const hypervisor_state& st) {
    std::vector<violation> out;
    for (const auto& [client, topologies] : st.installed) {
        for (const auto& [tid, inst] : topologies) {
            std::map<std::string, const intent::intent_spec*> specs;
            for (const auto& spec : inst.request.intents) specs.emplace(spec.intent_id, &spec);

            for (const auto& vl : inst.realized.links) {
                auto sit = specs.find(vl.intent_id);
                if (sit == specs.end()) {
                    flag(out, "UnknownIntent", vl.id, "link references intent not in the request");
                    continue;
                }
                const intent::intent_spec& spec = *sit->second;

                std::vector<const pathcomp::path*> working;
                std::vector<const pathcomp::path*> protection;
                for (const auto& sp : vl.paths) {
                    (sp.role == vtc::path_role::working ? working : protection)
                        .push_back(&sp.route);
                }

                if (working.size() < spec.minimum_paths)
                    flag(out, "TooFewPaths", vl.id,
                         "only " + std::to_string(working.size()) + " working paths, intent wants " +
                             std::to_string(spec.minimum_paths));
                if (spec.protection && protection.size() != 1)
                    flag(out, "MissingProtection", vl.id, "protection requested but not recorded");

                if (spec.disjoint != pathcomp::disjoint_mode::none) {
                    for (std::size_t i = 0; i < working.size(); ++i)
                        for (std::size_t j = i + 1; j < working.size(); ++j)
                            if (!pair_disjoint(*working[i], *working[j], spec.disjoint))
                                flag(out, "DisjointnessBreach", vl.id,
                                     "working paths " + std::to_string(i) + " and " +
                                         std::to_string(j) + " are not " +
                                         std::string(pathcomp::disjoint_mode_name(spec.disjoint)) +
                                         "-disjoint");
                }
                // protection path must avoid every working path (link mode at
                // minimum, the intent's own mode otherwise)
                auto prot_mode = spec.disjoint == pathcomp::disjoint_mode::none
                                     ? pathcomp::disjoint_mode::link
                                     : spec.disjoint;
                for (const auto* prot : protection)
                    for (std::size_t i = 0; i < working.size(); ++i)
                        if (!pair_disjoint(*prot, *working[i], prot_mode))
                            flag(out, "DisjointnessBreach", vl.id,
                                 "protection path overlaps working path " + std::to_string(i));
            }
        }
    }
    return out;
}

std::vector<violation> audit_reach(const hypervisor_state& st,
                                   const std::vector<spectrum::transceiver_profile>& profiles) {
    std::vector<violation> out;
    auto reach_of = [&](const std::string& name) -> double {
        for (const auto& p : profiles)
            if (p.name == name) return p.max_reach_km;
        return -1;
    };

    for (const auto& [client, topologies] : st.installed) {
        for (const auto& [tid, inst] : topologies) {
            for (const auto& vl : inst.realized.links) {
                for (const auto& sp : vl.paths) {
                    double length = 0;
                    bool resolvable = true;
                    for (const auto& l : sp.route.links) {
                        auto it = st.topology.links.find(l);
                        if (it == st.topology.links.end()) {
                            flag(out, "DanglingReference", vl.id,
                                 "path uses unknown link " + l.str());
                            resolvable = false;
                            break;
                        }
                        length += it->second.length_km;
                    }
                    if (!resolvable) continue;
                    if (std::abs(length - sp.route.cost) > 1e-6)
                        flag(out, "CostMismatch", vl.id,
                             "stored path cost differs from the sum of link lengths");
                    for (const auto& res : {sp.dedicated, sp.flexible}) {
                        if (!res) continue;
                        double reach = reach_of(res->profile);
                        if (reach < 0)
                            flag(out, "UnknownProfile", vl.id,
                                 "reservation uses unknown profile " + res->profile);
                        else if (length > reach + 1e-9)
                            flag(out, "ReachExceeded", vl.id,
                                 res->profile + " reaches " + std::to_string(reach) + " km, path is " +
                                     std::to_string(length) + " km");
                    }
                }
            }
        }
    }
    return out;
}

std::vector<violation> audit_continuity(const hypervisor_state& st) {
    std::vector<violation> out;

    // Rebuild every link's spectrum from the ledger and compare with reality.
    std::map<link_id, spectrum::spectrum_state> rebuilt;
    for (const auto& [lid, l] : st.topology.links)
        rebuilt.emplace(lid, spectrum::spectrum_state(l.spectrum.slot_count()));

    for (const auto& [token, rec] : st.ledger.records) {
        for (const auto& lid : rec.links) {
            auto it = rebuilt.find(lid);
            if (it == rebuilt.end()) {
                flag(out, "DanglingReference", std::to_string(token),
                     "reservation references unknown link " + lid.str());
                continue;
            }
            try {
                it->second.occupy(rec.range, rec.cls, rec.owner);
            } catch (const std::exception& e) {
                flag(out, "ReservationOverlap", std::to_string(token),
                     "replaying reservations collides on " + lid.str() + ": " + e.what());
            }
        }
    }
    for (const auto& [lid, l] : st.topology.links) {
        if (!(rebuilt.at(lid) == l.spectrum))
            flag(out, "SpectrumDivergence", lid.str(),
                 "live occupancy differs from the reservation ledger");
    }

    // Every realized path's reservations are live and match the path exactly
    // (same slot range on every link of the path).
    for (const auto& [client, topologies] : st.installed) {
        for (const auto& [tid, inst] : topologies) {
            for (const auto& vl : inst.realized.links) {
                for (const auto& sp : vl.paths) {
                    for (const auto& res : {sp.dedicated, sp.flexible}) {
                        if (!res) continue;
                        auto it = st.ledger.records.find(res->token);
                        if (it == st.ledger.records.end()) {
                            flag(out, "DeadReservation", vl.id,
                                 "token " + std::to_string(res->token) + " is not live");
                            continue;
                        }
                        if (it->second.links != sp.route.links)
                            flag(out, "ContinuityBreach", vl.id,
                                 "reservation links differ from the supporting path");
                        if (it->second.range != res->range)
                            flag(out, "ContinuityBreach", vl.id,
                                 "reservation range differs from the recorded range");
                    }
                }
            }
        }
    }
    return out;
}

std::vector<violation> audit_spectrum_invariants(const hypervisor_state& st) {
    std::vector<violation> out;
    for (const auto& [lid, l] : st.topology.links) {
        for (std::uint32_t s = 0; s < l.spectrum.slot_count(); ++s) {
            const auto& owners = l.spectrum.slot_owners(s);
            if (l.spectrum.slot_dedicated(s) && owners.size() != 1)
                flag(out, "DedicatedOverlap", lid.str(),
                     "slot " + std::to_string(s) + " dedicated with " +
                         std::to_string(owners.size()) + " owners");
            std::set<reservation_id> uniq(owners.begin(), owners.end());
            if (uniq.size() != owners.size())
                flag(out, "DuplicateOwner", lid.str(),
                     "slot " + std::to_string(s) + " lists an owner twice");
        }
    }
    return out;
}

std::vector<violation> audit_caps(const hypervisor_state& st) {
    std::vector<violation> out;
    std::map<std::tuple<client_id, std::string, std::string>, std::uint32_t> active;
    for (const auto& [cid, conn] : st.connections)
        if (conn.state == view::connection_state::active)
            ++active[{conn.client, conn.topology_id, conn.intent_id}];

    for (const auto& [key, count] : active) {
        const auto& [client, tid, intent_id] = key;
        const installed_topology* inst = find_installed(st, client, tid);
        if (inst == nullptr) {
            flag(out, "OrphanConnection", tid, "active connection on uninstalled topology");
            continue;
        }
        auto it = inst->realized.per_intent_cap.find(intent_id);
        if (it == inst->realized.per_intent_cap.end()) {
            flag(out, "OrphanConnection", intent_id, "active connection on unknown intent");
            continue;
        }
        if (it->second > 0 && count > it->second)
            flag(out, "CapBreach", intent_id,
                 std::to_string(count) + " active connections exceed cap " +
                     std::to_string(it->second));
    }
    return out;
}

std::vector<violation> audit_event_replay(const hypervisor_state& st) {
    std::vector<violation> out;

    std::set<std::string> topologies, links, connections;
    std::uint64_t prev_seq = 0;
    for (const auto& e : st.events) {
        if (e.seq != prev_seq + 1)
            flag(out, "SequenceGap", std::to_string(e.seq),
                 "expected seq " + std::to_string(prev_seq + 1));
        prev_seq = e.seq;

        std::set<std::string>* target = nullptr;
        if (e.object_type == "topology") target = &topologies;
        else if (e.object_type == "virtual-link") target = &links;
        else if (e.object_type == "connection") target = &connections;
        if (target == nullptr) {
            flag(out, "UnknownObjectType", e.object_id, "event names type " + e.object_type);
            continue;
        }
        switch (e.kind) {
            case view::event_kind::object_created:
                if (!target->insert(e.object_id).second)
                    flag(out, "DoubleCreate", e.object_id, "created twice without delete");
                break;
            case view::event_kind::object_deleted:
                if (target->erase(e.object_id) == 0)
                    flag(out, "DeleteWithoutCreate", e.object_id, "deleted but never created");
                break;
            case view::event_kind::value_changed:
                if (!target->count(e.object_id))
                    flag(out, "ChangeWithoutCreate", e.object_id, "changed but not live");
                break;
        }
    }
    if (st.events.size() > 0 && st.events.back().seq != st.event_seq)
        flag(out, "HighWaterMismatch", std::to_string(st.event_seq),
             "event_seq does not match the last event");

    std::set<std::string> want_topologies, want_links, want_connections;
    for (const auto& [client, ts] : st.installed) {
        for (const auto& [tid, inst] : ts) {
            want_topologies.insert(client.str() + "/" + tid);
            for (const auto& vl : inst.realized.links) want_links.insert(client.str() + "/" + vl.id);
        }
    }
    for (const auto& [cid, conn] : st.connections)
        if (conn.state == view::connection_state::active) want_connections.insert(cid);

    if (topologies != want_topologies)
        flag(out, "InventoryMismatch", "topologies",
             "event replay yields a different topology inventory");
    if (links != want_links)
        flag(out, "InventoryMismatch", "virtual-links",
             "event replay yields a different link inventory");
    if (connections != want_connections)
        flag(out, "InventoryMismatch", "connections",
             "event replay yields a different connection inventory");
    return out;
}

std::vector<violation> audit_state(const hypervisor_state& st,
                                   const std::vector<spectrum::transceiver_profile>& profiles) {
    std::vector<violation> out;
    for (auto&& part :
         {audit_spectrum_invariants(st), audit_continuity(st), audit_disjointness(st),
          audit_reach(st, profiles), audit_caps(st), audit_event_replay(st)})
        out.insert(out.end(), part.begin(), part.end());
    return out;
}

}  // namespace lumen::audit
