// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/phys_topology.hpp"

#include <algorithm>

#include "lumen/errors.hpp"

namespace lumen::topo {

std::string_view node_kind_name(node_kind kind) {
    return kind == node_kind::roadm ? "roadm" : "terminal";
}

namespace {

const nlohmann::json& require_field(const nlohmann::json& obj, const char* key,
                                    const std::string& where) {
    if (!obj.is_object() || !obj.contains(key))
        throw error(errc::malformed_document, where + ": missing field \"" + key + "\"");
    return obj.at(key);
}

std::string require_string(const nlohmann::json& obj, const char* key, const std::string& where) {
    const auto& v = require_field(obj, key, where);
    if (!v.is_string())
        throw error(errc::malformed_document, where + ": field \"" + key + "\" must be a string");
    std::string s = v.get<std::string>();
    if (!well_formed_id(s))
        throw error(errc::malformed_document, where + ": ill-formed identifier in \"" + key + "\"");
    return s;
}

}  // namespace

physical_topology parse_physical_topology(std::string_view document, const parse_options& options) {
    nlohmann::json doc = nlohmann::json::parse(document, nullptr, false);
    if (doc.is_discarded())
        throw error(errc::malformed_document, "physical topology file is not valid JSON");
    return topology_from_json(doc, options);
}

physical_topology topology_from_json(const nlohmann::json& doc, const parse_options& options) {
    if (!doc.is_object())
        throw error(errc::malformed_document, "physical topology document must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key != "nodes" && key != "links" && key != "endpoints")
            throw error(errc::malformed_document, "unknown top-level key \"" + key + "\"");
    }

    physical_topology t;

    for (const auto& jn : doc.value("nodes", nlohmann::json::array())) {
        std::string id = require_string(jn, "id", "node");
        std::string where = "node " + id;
        std::string kind = require_string(jn, "kind", where);
        phys_node n;
        n.id = node_id{id};
        if (kind == "roadm") {
            n.kind = node_kind::roadm;
        } else if (kind == "terminal") {
            n.kind = node_kind::terminal;
        } else {
            throw error(errc::malformed_document, where + ": kind must be roadm or terminal");
        }

        const auto& tps = require_field(jn, "tps", where);
        if (!tps.is_array())
            throw error(errc::malformed_document, where + ": tps must be an array");
        for (const auto& jt : tps) {
            if (!jt.is_string() || !well_formed_id(jt.get<std::string>()))
                throw error(errc::malformed_document, where + ": ill-formed tp id");
            tp_id tp{jt.get<std::string>()};
            if (std::find(n.tps.begin(), n.tps.end(), tp) != n.tps.end())
                throw error(errc::duplicate_id, where + ": duplicate tp " + tp.str());
            n.tps.push_back(tp);
        }

        if (jn.contains("connectivity")) {
            const auto& jc = jn.at("connectivity");
            if (!jc.is_array())
                throw error(errc::malformed_document, where + ": connectivity must be an array");
            n.connectivity.allow_all = false;
            for (const auto& jp : jc) {
                if (!jp.is_array() || jp.size() != 2 || !jp[0].is_string() || !jp[1].is_string())
                    throw error(errc::malformed_document,
                                where + ": connectivity entries must be [in, out] pairs");
                tp_id in{jp[0].get<std::string>()}, out{jp[1].get<std::string>()};
                if (in == out)
                    throw error(errc::malformed_document,
                                where + ": connectivity pair (" + in.str() + "," + out.str() +
                                    ") is reflexive");
                // symmetric closure: bidirectional operation
                n.connectivity.allowed.emplace(in, out);
                n.connectivity.allowed.emplace(out, in);
            }
        }

        if (t.nodes.count(n.id))
            throw error(errc::duplicate_id, "duplicate node id " + n.id.str());
        t.nodes.emplace(n.id, std::move(n));
    }

    auto parse_end = [&](const nlohmann::json& je, const std::string& where) {
        if (!je.is_object())
            throw error(errc::malformed_document, where + ": link end must be an object");
        return attachment{node_id{require_string(je, "node", where)},
                          tp_id{require_string(je, "tp", where)}};
    };

    for (const auto& jl : doc.value("links", nlohmann::json::array())) {
        std::string id = require_string(jl, "id", "link");
        std::string where = "link " + id;
        fiber_link l;
        l.id = link_id{id};
        l.a = parse_end(require_field(jl, "a", where), where);
        l.b = parse_end(require_field(jl, "b", where), where);
        const auto& jlen = require_field(jl, "length-km", where);
        if (!jlen.is_number() || jlen.get<double>() < 0)
            throw error(errc::malformed_document, where + ": length-km must be nonnegative");
        l.length_km = jlen.get<double>();
        l.spectrum = spectrum::spectrum_state(options.slots_per_link);
        if (t.links.count(l.id))
            throw error(errc::duplicate_id, "duplicate link id " + id);
        t.links.emplace(l.id, std::move(l));
    }

    for (const auto& je : doc.value("endpoints", nlohmann::json::array())) {
        std::string id = require_string(je, "endpoint-id", "endpoint");
        std::string where = "endpoint " + id;
        attachment at{node_id{require_string(je, "node", where)},
                      tp_id{require_string(je, "tp", where)}};
        endpoint_id eid{id};
        if (t.endpoints.count(eid))
            throw error(errc::duplicate_id, "duplicate endpoint id " + id);
        t.endpoints.emplace(eid, at);
    }

    if (!options.validate) return t;

    // The parser rejects anything the validator would flag.
    auto violations = validate_topology(t);
    if (!violations.empty()) {
        const violation& v = violations.front();
        errc code = errc::malformed_document;
        if (v.rule == "DanglingReference") code = errc::dangling_reference;
        else if (v.rule == "DuplicateId" || v.rule == "TpReuse") code = errc::duplicate_id;
        else if (v.rule == "InvalidAttachment") code = errc::invalid_attachment;
        throw error(code, v.rule + " at " + v.subject + ": " + v.message);
    }
    return t;
}

nlohmann::ordered_json serialize_topology(const physical_topology& t) {
    nlohmann::ordered_json doc;
    doc["nodes"] = nlohmann::ordered_json::array();
    for (const auto& [id, n] : t.nodes) {
        nlohmann::ordered_json jn;
        jn["id"] = id.str();
        jn["kind"] = node_kind_name(n.kind);
        jn["tps"] = nlohmann::ordered_json::array();
        for (const auto& tp : n.tps) jn["tps"].push_back(tp.str());
        if (!n.connectivity.allow_all) {
            jn["connectivity"] = nlohmann::ordered_json::array();
            for (const auto& [in, out] : n.connectivity.allowed)
                jn["connectivity"].push_back({in.str(), out.str()});
        }
        doc["nodes"].push_back(std::move(jn));
    }
    doc["links"] = nlohmann::ordered_json::array();
    for (const auto& [id, l] : t.links) {
        nlohmann::ordered_json jl;
        jl["id"] = id.str();
        jl["a"] = {{"node", l.a.node.str()}, {"tp", l.a.tp.str()}};
        jl["b"] = {{"node", l.b.node.str()}, {"tp", l.b.tp.str()}};
        jl["length-km"] = l.length_km;
        doc["links"].push_back(std::move(jl));
    }
    doc["endpoints"] = nlohmann::ordered_json::array();
    for (const auto& [id, at] : t.endpoints) {
        doc["endpoints"].push_back(
            {{"endpoint-id", id.str()}, {"node", at.node.str()}, {"tp", at.tp.str()}});
    }
    return doc;
}

std::vector<violation> validate_topology(const physical_topology& t) {
    std::vector<violation> out;
    auto flag = [&](std::string rule, std::string subject, std::string message) {
        out.push_back(violation{std::move(rule), std::move(subject), std::move(message)});
    };

    for (const auto& [id, n] : t.nodes) {
        if (!well_formed_id(id.str())) flag("IllFormedId", id.str(), "node id is ill-formed");
        if (id != n.id) flag("KeyMismatch", id.str(), "node stored under a different key");
        std::set<tp_id> tps(n.tps.begin(), n.tps.end());
        if (tps.size() != n.tps.size()) flag("DuplicateId", id.str(), "node has duplicate tp ids");
        for (const auto& tp : n.tps)
            if (!well_formed_id(tp.str())) flag("IllFormedId", id.str(), "tp id is ill-formed");
        if (n.kind == node_kind::terminal && n.tps.empty())
            flag("NoClientTp", id.str(), "terminal node has no client-attachable tp");
        for (const auto& [in, out_tp] : n.connectivity.allowed) {
            if (in == out_tp)
                flag("Irreflexivity", id.str() + "." + in.str(),
                     "connectivity pair (" + in.str() + "," + out_tp.str() + ") is reflexive");
            if (!tps.count(in) || !tps.count(out_tp))
                flag("DanglingReference", id.str(),
                     "connectivity references tp not on this node");
            if (!n.connectivity.allowed.count({out_tp, in}))
                flag("AsymmetricMatrix", id.str(),
                     "connectivity pair (" + in.str() + "," + out_tp.str() +
                         ") lacks its reverse");
        }
    }

    std::map<attachment, link_id> tp_use;
    for (const auto& [id, l] : t.links) {
        if (!well_formed_id(id.str())) flag("IllFormedId", id.str(), "link id is ill-formed");
        if (l.a.node == l.b.node)
            flag("SelfLink", id.str(), "link endpoints are on the same node");
        if (l.length_km < 0) flag("NegativeLength", id.str(), "link length is negative");
        for (const auto& end : {l.a, l.b}) {
            auto nit = t.nodes.find(end.node);
            if (nit == t.nodes.end()) {
                flag("DanglingReference", id.str(), "link references unknown node " + end.node.str());
                continue;
            }
            if (std::find(nit->second.tps.begin(), nit->second.tps.end(), end.tp) ==
                nit->second.tps.end())
                flag("DanglingReference", id.str(),
                     "link references unknown tp " + end.node.str() + "." + end.tp.str());
            auto [it, inserted] = tp_use.emplace(end, id);
            if (!inserted)
                flag("TpReuse", end.node.str() + "." + end.tp.str(),
                     "tp used by links " + it->second.str() + " and " + id.str());
        }
    }

    for (const auto& [id, at] : t.endpoints) {
        if (!well_formed_id(id.str())) flag("IllFormedId", id.str(), "endpoint id is ill-formed");
        auto nit = t.nodes.find(at.node);
        if (nit == t.nodes.end()) {
            flag("DanglingReference", id.str(),
                 "endpoint references unknown node " + at.node.str());
            continue;
        }
        if (std::find(nit->second.tps.begin(), nit->second.tps.end(), at.tp) ==
            nit->second.tps.end()) {
            flag("DanglingReference", id.str(),
                 "endpoint references unknown tp " + at.node.str() + "." + at.tp.str());
            continue;
        }
        if (nit->second.kind != node_kind::terminal)
            flag("InvalidAttachment", id.str(), "endpoint attached to non-terminal node");
    }

    return out;
}

pathcomp::weighted_graph adjacency_view(const physical_topology& t) {
    auto violations = validate_topology(t);
    if (!violations.empty())
        throw error(errc::invalid_topology,
                    "topology invalid: " + violations.front().rule + " at " +
                        violations.front().subject);

    pathcomp::weighted_graph g;
    for (const auto& [id, n] : t.nodes) g.add_vertex(id);
    for (const auto& [id, l] : t.links) g.add_edge(id, l.a.node, l.b.node, l.length_km);

    // Compile TP matrices into allowed link pairs; a TP maps to at most one
    // link, so the translation is direct.
    for (const auto& [nid, n] : t.nodes) {
        if (n.connectivity.allow_all) continue;
        std::map<tp_id, link_id> link_at;
        for (const auto& [lid, l] : t.links) {
            if (l.a.node == nid) link_at.emplace(l.a.tp, lid);
            if (l.b.node == nid) link_at.emplace(l.b.tp, lid);
        }
        std::set<std::pair<link_id, link_id>> pairs;
        for (const auto& [in, out] : n.connectivity.allowed) {
            auto li = link_at.find(in);
            auto lo = link_at.find(out);
            if (li != link_at.end() && lo != link_at.end() && li->second != lo->second)
                pairs.emplace(li->second, lo->second);
        }
        g.restrict_transit(nid, pairs);
    }
    return g;
}

}  // namespace lumen::topo
