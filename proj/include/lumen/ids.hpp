// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace lumen {

// Opaque identifier with a compile-time namespace tag. Identifiers are
// case-sensitive exact strings, non-empty, at most 128 bytes, no control
// characters.
template <class Tag>
struct tagged_id {
    std::string value;

    tagged_id() = default;
    explicit tagged_id(std::string v) : value(std::move(v)) {}
    explicit tagged_id(std::string_view v) : value(v) {}
    explicit tagged_id(const char* v) : value(v) {}

    auto operator<=>(const tagged_id&) const = default;

    const std::string& str() const { return value; }
    bool empty() const { return value.empty(); }
};

using node_id = tagged_id<struct node_id_tag>;
using tp_id = tagged_id<struct tp_id_tag>;
using link_id = tagged_id<struct link_id_tag>;
using endpoint_id = tagged_id<struct endpoint_id_tag>;
using client_id = tagged_id<struct client_id_tag>;
using reservation_id = tagged_id<struct reservation_id_tag>;

// Non-empty, <= 128 bytes, no control characters.
bool well_formed_id(std::string_view v);

// A named rule breach. Validators return these as data instead of throwing.
struct violation {
    std::string rule;     // e.g. "Irreflexivity", "TpReuse"
    std::string subject;  // offending entity id
    std::string message;

    auto operator<=>(const violation&) const = default;
};

}  // namespace lumen
