/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <string>
#include <vector>

namespace orbitcap::cli
{

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitEnvironment = 4;

/// Entry point shared by the `orbitcap` binary and the tests. `args`
/// excludes the program name.
int run(const std::vector<std::string>& args);

} // namespace orbitcap::cli
