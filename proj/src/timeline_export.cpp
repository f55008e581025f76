// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include "moebal/timeline_export.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace moebal {
namespace {

constexpr double kLeft = 90.0;
constexpr double kWidth = 1200.0;
constexpr double kLaneHeight = 40.0;
constexpr double kTop = 30.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string timeline_to_json(const IterationTimeline& timeline) {
  nlohmann::ordered_json ops = nlohmann::ordered_json::array();
  for (const auto& op : timeline.ops()) {
    ops.push_back({{"kind", to_string(op.kind)},
                   {"lane", to_string(op.lane)},
                   {"block", op.block},
                   {"iteration", op.iteration},
                   {"start", op.start},
                   {"duration", op.duration}});
  }
  nlohmann::ordered_json doc;
  doc["iteration"] = timeline.iteration();
  doc["makespan"] = timeline.makespan();
  doc["ops"] = std::move(ops);
  return doc.dump(2) + "\n";
}

std::string timeline_to_svg(const IterationTimeline& timeline) {
  const double span_ms = std::max(timeline.makespan() * 1e3, 1e-9);
  const double scale = kWidth / span_ms;
  const double height = kTop + 2 * kLaneHeight + 40.0;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kLeft + kWidth + 20)
      << "\" height=\"" << fmt(height) << "\">\n"
      << "<style>\n"
      << "text{font:11px sans-serif}\n"
      << ".A2A{fill:#6aa84f}.FEC,.BEC{fill:#3d85c6}.FNEC,.BNEC{fill:#9fc5e8}\n"
      << ".Plan{fill:#8e7cc3}.Trans,.SubTrans1,.SubTrans2{fill:#e69138}\n"
      << ".Agg,.SubAgg1,.SubAgg2{fill:#cc4125}\n"
      << "rect{stroke:#222;stroke-width:0.5}\n"
      << "</style>\n";
  out << "<text x=\"4\" y=\"16\">iteration " << timeline.iteration() << ", makespan "
      << fmt(timeline.makespan() * 1e3) << " ms</text>\n";
  const char* lanes[] = {"compute", "network"};
  for (int i = 0; i < 2; ++i) {
    out << "<text x=\"4\" y=\"" << fmt(kTop + i * kLaneHeight + kLaneHeight / 2 + 4) << "\">"
        << lanes[i] << "</text>\n";
  }
  for (const auto& op : timeline.ops()) {
    const int lane = op.lane == Lane::Compute ? 0 : 1;
    const double x = kLeft + op.start * 1e3 * scale;
    const double w = op.duration * 1e3 * scale;
    const double y = kTop + lane * kLaneHeight + 4;
    out << "<rect class=\"" << to_string(op.kind) << "\" x=\"" << fmt(x) << "\" y=\"" << fmt(y)
        << "\" width=\"" << fmt(w) << "\" height=\"" << fmt(kLaneHeight - 8) << "\"><title>"
        << to_string(op.kind) << " block " << op.block << " iter " << op.iteration << ": "
        << fmt(op.duration * 1e3) << " ms</title></rect>\n";
    if (w > 30.0) {
      out << "<text x=\"" << fmt(x + 2) << "\" y=\"" << fmt(y + kLaneHeight / 2) << "\">"
          << to_string(op.kind) << op.block << "</text>\n";
    }
  }
  const double axis_y = kTop + 2 * kLaneHeight + 14;
  out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(axis_y - 10) << "\" x2=\""
      << fmt(kLeft + kWidth) << "\" y2=\"" << fmt(axis_y - 10) << "\" stroke=\"#222\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double ms = span_ms * tick / 4.0;
    out << "<text x=\"" << fmt(kLeft + ms * scale - 10) << "\" y=\"" << fmt(axis_y + 4) << "\">"
        << fmt(ms) << " ms</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace moebal
