// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/intent.hpp"

#include <algorithm>
#include <set>

#include "lumen/errors.hpp"

namespace lumen::intent {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw error(errc::schema_violation, "at " + path + ": " + what, {{"path", path}});
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key)) schema_error(path + "." + key, "unknown key");
    }
}

const json& field(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) schema_error(path + "." + key, "missing field");
    return obj.at(key);
}

std::string id_field(const json& obj, const char* key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_string()) schema_error(path + "." + key, "expected a string");
    std::string s = v.get<std::string>();
    if (!well_formed_id(s)) schema_error(path + "." + key, "ill-formed identifier");
    return s;
}

std::uint64_t uint_field(const json& obj, const char* key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        schema_error(path + "." + key, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

intent_spec intent_from_json(const json& ji, const std::string& path) {
    if (!ji.is_object()) schema_error(path, "intent must be an object");
    reject_unknown_keys(ji,
                        {"intent-id", "endpoints", "dedicated-bandwidth", "flexible-bandwidth",
                         "minimum-paths", "disjoint-paths", "protection",
                         "maximum-active-connections"},
                        path);

    intent_spec spec;
    spec.intent_id = id_field(ji, "intent-id", path);

    const json& eps = field(ji, "endpoints", path);
    if (!eps.is_array() || eps.size() < 2)
        schema_error(path + ".endpoints", "expected an array of at least two endpoint ids");
    std::set<endpoint_id> seen;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        const json& je = eps[i];
        std::string ep_path = path + ".endpoints[" + std::to_string(i) + "]";
        if (!je.is_string() || !well_formed_id(je.get<std::string>()))
            schema_error(ep_path, "expected an endpoint id string");
        endpoint_id ep{je.get<std::string>()};
        if (!seen.insert(ep).second)
            throw error(errc::duplicate_key, "duplicate endpoint " + ep.str() + " at " + ep_path,
                        {{"path", ep_path}});
        spec.endpoints.push_back(ep);
    }

    spec.dedicated_bandwidth_mbps = uint_field(ji, "dedicated-bandwidth", path);
    spec.flexible_bandwidth_mbps = uint_field(ji, "flexible-bandwidth", path);

    std::uint64_t min_paths = uint_field(ji, "minimum-paths", path);
    if (min_paths == 0) schema_error(path + ".minimum-paths", "must be a positive integer");
    spec.minimum_paths = static_cast<std::uint32_t>(min_paths);

    const json& jd = field(ji, "disjoint-paths", path);
    if (!jd.is_string()) schema_error(path + ".disjoint-paths", "expected a string");
    auto mode = pathcomp::disjoint_mode_from_name(jd.get<std::string>());
    if (!mode)
        schema_error(path + ".disjoint-paths", "expected one of \"link\", \"node\", \"none\"");
    spec.disjoint = *mode;

    const json& jp = field(ji, "protection", path);
    if (!jp.is_boolean()) schema_error(path + ".protection", "expected a boolean");
    spec.protection = jp.get<bool>();

    spec.maximum_active_connections =
        static_cast<std::uint32_t>(uint_field(ji, "maximum-active-connections", path));
    return spec;
}

}  // namespace

topology_request request_from_json(const json& doc, const std::string& json_path) {
    if (!doc.is_object()) schema_error(json_path, "topology must be an object");
    reject_unknown_keys(doc, {"topology-id", "intents"}, json_path);

    topology_request r;
    r.topology_id = id_field(doc, "topology-id", json_path);

    const json& intents = field(doc, "intents", json_path);
    if (!intents.is_array() || intents.empty())
        schema_error(json_path + ".intents", "expected a non-empty array");

    std::set<std::string> intent_ids;
    for (std::size_t i = 0; i < intents.size(); ++i) {
        std::string path = json_path + ".intents[" + std::to_string(i) + "]";
        intent_spec spec = intent_from_json(intents[i], path);
        if (!intent_ids.insert(spec.intent_id).second)
            throw error(errc::duplicate_key,
                        "duplicate intent-id \"" + spec.intent_id + "\" at " + path,
                        {{"path", path}});
        r.intents.push_back(std::move(spec));
    }
    return r;
}

topology_request decode_request(std::string_view document) {
    json doc = json::parse(document, nullptr, false);
    if (doc.is_discarded())
        throw error(errc::malformed_document, "topology request is not valid JSON");
    return request_from_json(doc, "$");
}

state_document decode_state(std::string_view document) {
    json doc = json::parse(document, nullptr, false);
    if (doc.is_discarded()) throw error(errc::malformed_document, "document is not valid JSON");
    if (!doc.is_object()) schema_error("$", "document must be an object");
    reject_unknown_keys(doc, {"endpoints", "topologies"}, "$");

    state_document out;

    const json& jep = field(doc, "endpoints", "$");
    if (!jep.is_object()) schema_error("$.endpoints", "expected an object");
    reject_unknown_keys(jep, {"assigned-endpoints"}, "$.endpoints");
    const json& jlist = field(jep, "assigned-endpoints", "$.endpoints");
    if (!jlist.is_array()) schema_error("$.endpoints.assigned-endpoints", "expected an array");
    std::set<endpoint_id> seen;
    for (std::size_t i = 0; i < jlist.size(); ++i) {
        std::string path = "$.endpoints.assigned-endpoints[" + std::to_string(i) + "]";
        if (!jlist[i].is_object()) schema_error(path, "expected an object");
        reject_unknown_keys(jlist[i], {"endpoint-id"}, path);
        endpoint_id ep{id_field(jlist[i], "endpoint-id", path)};
        if (!seen.insert(ep).second)
            throw error(errc::duplicate_key, "duplicate endpoint " + ep.str() + " at " + path);
        out.assigned_endpoints.push_back(ep);
    }

    const json& jtop = field(doc, "topologies", "$");
    if (!jtop.is_object()) schema_error("$.topologies", "expected an object");
    reject_unknown_keys(jtop, {"installed-topologies"}, "$.topologies");
    const json& jinst = field(jtop, "installed-topologies", "$.topologies");
    if (!jinst.is_array()) schema_error("$.topologies.installed-topologies", "expected an array");
    std::set<std::string> topo_ids;
    for (std::size_t i = 0; i < jinst.size(); ++i) {
        std::string path = "$.topologies.installed-topologies[" + std::to_string(i) + "]";
        topology_request r = request_from_json(jinst[i], path);
        if (!topo_ids.insert(r.topology_id).second)
            throw error(errc::duplicate_key,
                        "duplicate topology-id \"" + r.topology_id + "\" at " + path);
        out.topologies.push_back(std::move(r));
    }
    return out;
}

nlohmann::ordered_json request_to_json(const topology_request& r) {
    nlohmann::ordered_json jt;
    jt["topology-id"] = r.topology_id;
    jt["intents"] = nlohmann::ordered_json::array();
    for (const auto& spec : r.intents) {
        nlohmann::ordered_json ji;
        ji["intent-id"] = spec.intent_id;
        ji["endpoints"] = nlohmann::ordered_json::array();
        for (const auto& ep : spec.endpoints) ji["endpoints"].push_back(ep.str());
        ji["dedicated-bandwidth"] = spec.dedicated_bandwidth_mbps;
        ji["flexible-bandwidth"] = spec.flexible_bandwidth_mbps;
        ji["minimum-paths"] = spec.minimum_paths;
        ji["disjoint-paths"] = std::string(pathcomp::disjoint_mode_name(spec.disjoint));
        ji["protection"] = spec.protection;
        ji["maximum-active-connections"] = spec.maximum_active_connections;
        jt["intents"].push_back(std::move(ji));
    }
    return jt;
}

nlohmann::ordered_json endpoints_subtree(const std::vector<endpoint_id>& assigned) {
    nlohmann::ordered_json j;
    j["assigned-endpoints"] = nlohmann::ordered_json::array();
    for (const auto& ep : assigned)
        j["assigned-endpoints"].push_back({{"endpoint-id", ep.str()}});
    return j;
}

nlohmann::ordered_json topologies_subtree(const std::vector<topology_request>& installed) {
    nlohmann::ordered_json j;
    j["installed-topologies"] = nlohmann::ordered_json::array();
    for (const auto& r : installed) j["installed-topologies"].push_back(request_to_json(r));
    return j;
}

std::string encode_state(const endpoint_assignment& assignment,
                         const std::vector<topology_request>& installed) {
    nlohmann::ordered_json doc;
    doc["endpoints"] = endpoints_subtree(assignment.endpoints);
    doc["topologies"] = topologies_subtree(installed);
    return doc.dump(2) + "\n";
}

std::vector<violation> validate_request(const topology_request& r,
                                        const endpoint_assignment& assignment) {
    std::vector<violation> out;
    auto flag = [&](std::string rule, std::string subject, std::string message) {
        out.push_back(violation{std::move(rule), std::move(subject), std::move(message)});
    };

    std::set<endpoint_id> assigned(assignment.endpoints.begin(), assignment.endpoints.end());

    if (!well_formed_id(r.topology_id)) flag("IllFormedId", r.topology_id, "ill-formed topology id");
    if (r.intents.empty()) flag("EmptyTopology", r.topology_id, "topology has no intents");

    std::set<std::string> intent_ids;
    for (const auto& spec : r.intents) {
        const std::string& subj = spec.intent_id;
        if (!well_formed_id(spec.intent_id)) flag("IllFormedId", subj, "ill-formed intent id");
        if (!intent_ids.insert(spec.intent_id).second)
            flag("DuplicateKey", subj, "intent id reused within the topology");

        if (spec.dedicated_bandwidth_mbps + spec.flexible_bandwidth_mbps == 0)
            flag("ZeroBandwidth", subj, "dedicated and flexible bandwidth are both zero");
        if (spec.minimum_paths == 0) flag("InvalidMinimumPaths", subj, "minimum-paths must be >= 1");
        if (spec.endpoints.size() < 2)
            flag("TooFewEndpoints", subj, "an intent needs at least two endpoints");

        std::set<endpoint_id> seen;
        for (const auto& ep : spec.endpoints) {
            if (!seen.insert(ep).second)
                flag("DuplicateEndpoint", subj, "endpoint " + ep.str() + " listed twice");
            if (!assigned.count(ep))
                flag("UnassignedEndpoint", subj,
                     "endpoint " + ep.str() + " is not assigned to client " +
                         assignment.client.str());
        }
    }
    return out;
}

}  // namespace lumen::intent
