// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include "moebal/trace_io.hpp"

#include <fstream>
#include <optional>
#include <string>

#include "json.hpp"

namespace moebal {
namespace {

using nlohmann::json;

Error parse_error(std::size_t line, const std::string& what) {
  return Error(ErrorCode::kParse, what, line);
}

TraceRecord parse_record(const std::string& text, std::size_t line) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(line, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw parse_error(line, "record is not a JSON object");
  for (const char* key : {"iter", "layer", "counts"}) {
    if (!doc.contains(key)) throw parse_error(line, std::string("missing field '") + key + "'");
  }
  if (!doc["iter"].is_number_integer() || !doc["layer"].is_number_integer()) {
    throw parse_error(line, "'iter' and 'layer' must be integers");
  }
  const auto& rows = doc["counts"];
  if (!rows.is_array() || rows.empty()) throw parse_error(line, "'counts' must be a non-empty array");

  std::vector<std::vector<Count>> matrix;
  for (const auto& row : rows) {
    if (!row.is_array() || row.empty()) throw parse_error(line, "'counts' rows must be non-empty arrays");
    auto& out = matrix.emplace_back();
    for (const auto& v : row) {
      if (!v.is_number_integer() || v.get<Count>() < 0) {
        throw parse_error(line, "'counts' entries must be non-negative integers");
      }
      out.push_back(v.get<Count>());
    }
    if (out.size() != matrix.front().size()) throw parse_error(line, "'counts' rows differ in length");
  }
  return {doc["iter"].get<int>(), doc["layer"].get<int>(), LoadMatrix::from_rows(matrix)};
}

}  // namespace

std::vector<TraceRecord> read_trace(std::istream& in) {
  std::vector<TraceRecord> records;
  std::string text;
  std::size_t line = 0;
  std::optional<int> layers_per_iter;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    TraceRecord rec = parse_record(text, line);

    if (records.empty()) {
      if (rec.iteration != 0 || rec.layer != 0) {
        throw parse_error(line, "trace must start at iteration 0, layer 0");
      }
    } else {
      const auto& prev = records.back();
      if (rec.counts.num_devices() != prev.counts.num_devices()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "device count " + std::to_string(rec.counts.num_devices()) + " differs from " +
                        std::to_string(prev.counts.num_devices()),
                    line);
      }
      if (rec.counts.num_experts() != prev.counts.num_experts()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "expert count " + std::to_string(rec.counts.num_experts()) + " differs from " +
                        std::to_string(prev.counts.num_experts()),
                    line);
      }
      if (rec.iteration == prev.iteration) {
        if (rec.layer != prev.layer + 1) throw parse_error(line, "layers must be contiguous from 0");
      } else if (rec.iteration == prev.iteration + 1) {
        if (rec.layer != 0) throw parse_error(line, "each iteration must start at layer 0");
        const int seen = prev.layer + 1;
        if (layers_per_iter && *layers_per_iter != seen) {
          throw parse_error(line - 1, "iteration has a different layer count");
        }
        layers_per_iter = seen;
      } else {
        throw parse_error(line, "iterations must be contiguous");
      }
    }
    records.push_back(std::move(rec));
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "failed reading trace");
  if (!records.empty() && layers_per_iter && records.back().layer + 1 != *layers_per_iter) {
    throw parse_error(line, "last iteration has a different layer count");
  }
  return records;
}

std::vector<TraceRecord> read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open trace " + path.string());
  return read_trace(in);
}

void write_trace(const std::vector<TraceRecord>& records, std::ostream& out) {
  for (const auto& r : records) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int d = 0; d < r.counts.num_devices(); ++d) {
      const auto row = r.counts.row(d);
      rows.push_back(std::vector<Count>(row.begin(), row.end()));
    }
    nlohmann::ordered_json doc;
    doc["iter"] = r.iteration;
    doc["layer"] = r.layer;
    doc["counts"] = std::move(rows);
    out << doc.dump() << '\n';
  }
}

void write_trace(const std::vector<TraceRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  write_trace(records, out);
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

}  // namespace moebal
