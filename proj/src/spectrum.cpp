// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/spectrum.hpp"

#include <algorithm>
#include <cctype>

#include "lumen/errors.hpp"

namespace lumen::spectrum {

std::string_view reservation_class_name(reservation_class cls) {
    return cls == reservation_class::dedicated ? "dedicated" : "shared";
}

reservation_class reservation_class_from_name(std::string_view name) {
    if (name == "dedicated") return reservation_class::dedicated;
    if (name == "shared") return reservation_class::shared;
    throw error(errc::invalid_args, "unknown reservation class: " + std::string(name));
}

spectrum_state::spectrum_state(std::uint32_t slot_count) : cells_(slot_count) {
    if (slot_count == 0) throw error(errc::invalid_args, "slot count must be >= 1");
}

void spectrum_state::check_range(slot_range range) const {
    if (range.count == 0 || range.end() > slot_count())
        throw error(errc::invalid_args, "slot range out of bounds");
}

bool spectrum_state::slot_free(std::uint32_t slot) const {
    return cells_.at(slot).owners.empty();
}

bool spectrum_state::slot_dedicated(std::uint32_t slot) const {
    return cells_.at(slot).dedicated;
}

const std::vector<reservation_id>& spectrum_state::slot_owners(std::uint32_t slot) const {
    return cells_.at(slot).owners;
}

bool spectrum_state::slot_assignable(std::uint32_t slot, reservation_class cls,
                                     const reservation_id& owner) const {
    const cell& c = cells_.at(slot);
    if (c.owners.empty()) return true;
    if (cls == reservation_class::dedicated) return false;
    if (c.dedicated) return false;
    return !std::binary_search(c.owners.begin(), c.owners.end(), owner);
}

bool spectrum_state::range_assignable(slot_range range, reservation_class cls,
                                      const reservation_id& owner) const {
    if (range.count == 0 || range.end() > slot_count()) return false;
    for (std::uint32_t s = range.start; s < range.end(); ++s)
        if (!slot_assignable(s, cls, owner)) return false;
    return true;
}

void spectrum_state::occupy(slot_range range, reservation_class cls, const reservation_id& owner) {
    check_range(range);
    if (!range_assignable(range, cls, owner))
        throw error(errc::conflicting_reservation,
                    "slots [" + std::to_string(range.start) + "," + std::to_string(range.end()) +
                        ") not assignable for " + std::string(reservation_class_name(cls)));
    for (std::uint32_t s = range.start; s < range.end(); ++s) {
        cell& c = cells_[s];
        c.owners.insert(std::lower_bound(c.owners.begin(), c.owners.end(), owner), owner);
        c.dedicated = (cls == reservation_class::dedicated);
    }
}

void spectrum_state::vacate(slot_range range, const reservation_id& owner) {
    check_range(range);
    for (std::uint32_t s = range.start; s < range.end(); ++s) {
        cell& c = cells_[s];
        auto it = std::lower_bound(c.owners.begin(), c.owners.end(), owner);
        if (it == c.owners.end() || *it != owner)
            throw error(errc::unknown_token,
                        "slot " + std::to_string(s) + " carries no reservation for " + owner.str());
        c.owners.erase(it);
        if (c.owners.empty()) c.dedicated = false;
    }
}

std::size_t spectrum_state::occupied_slots() const {
    return static_cast<std::size_t>(
        std::count_if(cells_.begin(), cells_.end(), [](const cell& c) { return !c.owners.empty(); }));
}

std::vector<spectrum_state::run> spectrum_state::runs() const {
    std::vector<run> out;
    for (std::uint32_t s = 0; s < slot_count(); ++s) {
        const cell& c = cells_[s];
        if (!out.empty() && out.back().dedicated == c.dedicated && out.back().owners == c.owners &&
            out.back().start + out.back().count == s) {
            ++out.back().count;
        } else {
            out.push_back(run{s, 1, c.dedicated, c.owners});
        }
    }
    return out;
}

std::vector<transceiver_profile> default_profile_table() {
    return {
        {"profile-16QAM", 50000, 500.0},
        {"profile-QPSK", 25000, 2000.0},
    };
}

void check_profile_table(const std::vector<transceiver_profile>& table) {
    if (table.empty()) throw error(errc::invalid_args, "profile table is empty");
    for (const auto& p : table) {
        if (p.name.empty() || p.slot_capacity_mbps == 0 || p.max_reach_km <= 0)
            throw error(errc::invalid_args, "ill-formed transceiver profile: " + p.name);
    }
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (!(table[i].max_reach_km > table[i - 1].max_reach_km) ||
            !(table[i].slot_capacity_mbps < table[i - 1].slot_capacity_mbps))
            throw error(errc::invalid_args,
                        "profile table must have strictly increasing reach and strictly "
                        "decreasing slot capacity");
    }
}

demand_sizing slots_for_demand(std::uint64_t bitrate_mbps, double path_length_km,
                               const std::vector<transceiver_profile>& table) {
    if (bitrate_mbps == 0) throw error(errc::invalid_args, "bitrate must be positive");
    if (path_length_km < 0) throw error(errc::invalid_args, "path length must be nonnegative");
    check_profile_table(table);

    const transceiver_profile* best = nullptr;
    for (const auto& p : table) {
        if (p.max_reach_km >= path_length_km &&
            (best == nullptr || p.slot_capacity_mbps > best->slot_capacity_mbps))
            best = &p;
    }
    if (best == nullptr)
        throw error(errc::no_feasible_profile,
                    "no transceiver profile reaches " + std::to_string(path_length_km) + " km",
                    {{"path-length-km", path_length_km}});

    std::uint64_t slots = (bitrate_mbps + best->slot_capacity_mbps - 1) / best->slot_capacity_mbps;
    return demand_sizing{static_cast<std::uint32_t>(slots), *best};
}

std::optional<slot_range> first_fit(const std::vector<const spectrum_state*>& path_links,
                                    std::uint32_t count, reservation_class cls,
                                    const reservation_id& owner) {
    if (count == 0) throw error(errc::invalid_args, "slot count must be positive");
    if (path_links.empty()) return slot_range{0, count};

    std::uint32_t slots = path_links.front()->slot_count();
    for (const auto* s : path_links)
        slots = std::min(slots, s->slot_count());
    if (count > slots) return std::nullopt;

    for (std::uint32_t start = 0; start + count <= slots; ++start) {
        slot_range candidate{start, count};
        bool ok = true;
        for (const auto* s : path_links) {
            if (!s->range_assignable(candidate, cls, owner)) {
                ok = false;
                break;
            }
        }
        if (ok) return candidate;
    }
    return std::nullopt;
}

std::uint64_t apply_reservation(reservation_ledger& ledger,
                                const std::vector<std::pair<link_id, spectrum_state*>>& path_links,
                                slot_range range, reservation_class cls,
                                const reservation_id& owner) {
    for (const auto& [lid, state] : path_links) {
        if (!state->range_assignable(range, cls, owner))
            throw error(errc::conflicting_reservation,
                        "range not assignable on link " + lid.str(),
                        {{"link", lid.str()}, {"start", range.start}, {"count", range.count}});
    }
    for (const auto& [lid, state] : path_links)
        state->occupy(range, cls, owner);

    reservation_record rec;
    rec.range = range;
    rec.cls = cls;
    rec.owner = owner;
    for (const auto& [lid, state] : path_links)
        rec.links.push_back(lid);

    std::uint64_t token = ledger.next_token++;
    ledger.records.emplace(token, std::move(rec));
    return token;
}

void release_reservation(reservation_ledger& ledger, const spectrum_resolver& resolve,
                         std::uint64_t token) {
    auto it = ledger.records.find(token);
    if (it == ledger.records.end()) {
        if (ledger.released.count(token))
            throw error(errc::double_release, "token " + std::to_string(token) + " already released");
        throw error(errc::unknown_token, "unknown reservation token " + std::to_string(token));
    }
    const reservation_record& rec = it->second;
    for (const auto& lid : rec.links)
        resolve(lid).vacate(rec.range, rec.owner);
    ledger.released.insert(token);
    ledger.records.erase(it);
}

}  // namespace lumen::spectrum
