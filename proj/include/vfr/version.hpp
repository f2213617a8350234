// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the vfr authors
#pragma once

namespace vfr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vfr
