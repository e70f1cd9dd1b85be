// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/errors.hpp"

namespace lumen {

std::string_view errc_name(errc code) {
    switch (code) {
        case errc::malformed_document: return "MalformedDocument";
        case errc::dangling_reference: return "DanglingReference";
        case errc::duplicate_id: return "DuplicateId";
        case errc::invalid_attachment: return "InvalidAttachment";
        case errc::invalid_topology: return "InvalidTopology";
        case errc::unknown_node: return "UnknownNode";
        case errc::invalid_args: return "InvalidArgs";
        case errc::no_feasible_profile: return "NoFeasibleProfile";
        case errc::conflicting_reservation: return "ConflictingReservation";
        case errc::unknown_token: return "UnknownToken";
        case errc::double_release: return "DoubleRelease";
        case errc::schema_violation: return "SchemaViolation";
        case errc::duplicate_key: return "DuplicateKey";
        case errc::already_installed: return "AlreadyInstalled";
        case errc::infeasible_paths: return "InfeasiblePaths";
        case errc::insufficient_spectrum: return "InsufficientSpectrum";
        case errc::active_connections_exist: return "ActiveConnectionsExist";
        case errc::cap_exceeded: return "CapExceeded";
        case errc::unknown_link: return "UnknownLink";
        case errc::unknown_connection: return "UnknownConnection";
        case errc::already_deleted: return "AlreadyDeleted";
        case errc::unknown_topology: return "UnknownTopology";
        case errc::missing_client: return "MissingClient";
        case errc::bind_failure: return "BindFailure";
        case errc::corrupt_snapshot: return "CorruptSnapshot";
    }
    return "Error";
}

}  // namespace lumen
