// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "moebal/workload.hpp"

namespace moebal {

// JSON Lines, one record per line, LF terminated:
//   {"iter":0,"layer":0,"counts":[[...],[...]]}
// counts is row-major D x E. Records are ordered by iteration then layer;
// iterations start at 0 and every iteration carries the same layers.

std::vector<TraceRecord> read_trace(std::istream& in);
std::vector<TraceRecord> read_trace(const std::filesystem::path& path);

void write_trace(const std::vector<TraceRecord>& records, std::ostream& out);
void write_trace(const std::vector<TraceRecord>& records, const std::filesystem::path& path);

}  // namespace moebal
