// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace lumen {

enum class errc {
    malformed_document,
    dangling_reference,
    duplicate_id,
    invalid_attachment,
    invalid_topology,
    unknown_node,
    invalid_args,
    no_feasible_profile,
    conflicting_reservation,
    unknown_token,
    double_release,
    schema_violation,
    duplicate_key,
    already_installed,
    infeasible_paths,
    insufficient_spectrum,
    active_connections_exist,
    cap_exceeded,
    unknown_link,
    unknown_connection,
    already_deleted,
    unknown_topology,
    missing_client,
    bind_failure,
    corrupt_snapshot,
};

std::string_view errc_name(errc code);

class error : public std::runtime_error {
public:
    error(errc code, std::string message, nlohmann::json details = nlohmann::json::object())
        : std::runtime_error(std::move(message)), code_(code), details_(std::move(details)) {}

    errc code() const { return code_; }
    const nlohmann::json& details() const { return details_; }

private:
    errc code_;
    nlohmann::json details_;
};

}  // namespace lumen
