// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace moebal::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kValidationError = 2 };

/// Entry point behind the `moebal` binary. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace moebal::cli
