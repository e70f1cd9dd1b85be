// Copyright 2026 The Lumen Authors
// SPDX-License-Identifier: Apache-2.0

#include "lumen/ids.hpp"

namespace lumen {

bool well_formed_id(std::string_view v) {
    if (v.empty() || v.size() > 128) return false;
    for (unsigned char c : v)
        if (c < 0x20 || c == 0x7f) return false;
    return true;
}

}  // namespace lumen
