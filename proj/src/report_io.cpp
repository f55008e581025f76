// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include "moebal/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace moebal {
namespace {

using ojson = nlohmann::ordered_json;

std::string num(double v) {
  if (std::isinf(v)) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int decimals) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

ojson rb_json(const BalanceRatio& rb) {
  if (rb.perfectly_balanced) return "perfectly_balanced";
  return rb.value;
}

ojson phases_json(const PhaseTotals& p) {
  return {{"search", p.search}, {"place", p.place}, {"reduce", p.reduce}, {"other", p.other}};
}

}  // namespace

std::string report_to_json(const RunReport& report) {
  ojson doc;
  doc["policy"] = report.policy;
  doc["baseline"] = report.baseline;
  doc["iterations_count"] = report.iterations.size();
  doc["mean_makespan"] = report.mean_makespan();
  doc["mean_baseline_makespan"] = report.mean_baseline_makespan();
  doc["speedup"] = report.speedup();

  const PhaseTotals totals = report.phase_totals();
  const double all = totals.total();
  doc["phase_seconds"] = phases_json(totals);
  doc["phase_percent"] = all > 0.0 ? phases_json({100 * totals.search / all, 100 * totals.place / all,
                                                  100 * totals.reduce / all, 100 * totals.other / all})
                                   : phases_json({});

  ojson iters = ojson::array();
  for (const auto& it : report.iterations) {
    iters.push_back({{"iteration", it.iteration},
                     {"makespan", it.makespan},
                     {"baseline_makespan", it.baseline_makespan},
                     {"rebalanced", it.rebalanced},
                     {"phases", phases_json(it.phases)}});
  }
  doc["iterations"] = std::move(iters);

  ojson layers = ojson::array();
  for (const auto& l : report.layers) {
    const auto& c = l.cost;
    layers.push_back({{"iteration", l.iteration},
                      {"layer", l.layer},
                      {"selected", l.selected},
                      {"excluded", l.excluded},
                      {"cost",
                       {{"a2a", c.a2a_time},
                        {"fec", c.fec_time},
                        {"bec", c.bec_time},
                        {"trans", c.trans_time},
                        {"agg", c.agg_time},
                        {"ptrans", c.ptrans_time},
                        {"pagg", c.pagg_time},
                        {"total_unscheduled", c.total_unscheduled},
                        {"total_scheduled", c.total_scheduled}}},
                      {"plan", l.plan_time},
                      {"sigma_before", l.sigma_before},
                      {"sigma_after", l.sigma_after},
                      {"rb", rb_json(l.rb)}});
  }
  doc["layers"] = std::move(layers);
  return doc.dump(2) + "\n";
}

std::string report_to_csv(const RunReport& report) {
  std::ostringstream out;
  out << "iteration,layer,selected,excluded,a2a,fec,bec,trans,agg,ptrans,pagg,"
         "total_unscheduled,total_scheduled,plan,sigma_before,sigma_after,rb,"
         "iteration_makespan,baseline_makespan\n";
  for (const auto& l : report.layers) {
    const auto& c = l.cost;
    const auto& it = report.iterations.at(static_cast<std::size_t>(l.iteration));
    out << l.iteration << ',' << l.layer << ',' << l.selected << ',' << l.excluded << ','
        << num(c.a2a_time) << ',' << num(c.fec_time) << ',' << num(c.bec_time) << ','
        << num(c.trans_time) << ',' << num(c.agg_time) << ',' << num(c.ptrans_time) << ','
        << num(c.pagg_time) << ',' << num(c.total_unscheduled) << ',' << num(c.total_scheduled) << ','
        << num(l.plan_time) << ',' << num(l.sigma_before) << ',' << num(l.sigma_after) << ','
        << num(l.rb.value) << ',' << num(it.makespan) << ',' << num(it.baseline_makespan) << '\n';
  }
  return out.str();
}

std::vector<ComparisonRow> compare(const std::vector<RunReport>& reports) {
  std::vector<ComparisonRow> rows;
  const double reference = reports.empty() ? 0.0 : reports.front().mean_makespan();
  for (const auto& r : reports) {
    ComparisonRow row;
    row.policy = r.policy;
    row.mean_makespan = r.mean_makespan();
    row.speedup = row.mean_makespan > 0.0 ? reference / row.mean_makespan : 1.0;
    double sum = 0.0;
    int finite = 0;
    for (const auto& l : r.layers) {
      if (l.rb.perfectly_balanced) {
        ++row.perfectly_balanced;
      } else {
        sum += l.rb.value;
        ++finite;
      }
    }
    row.mean_rb = finite > 0 ? sum / finite : 1.0;
    const PhaseTotals t = r.phase_totals();
    const double all = t.total();
    if (all > 0.0) row.phase_share = {t.search / all, t.place / all, t.reduce / all, t.other / all};
    rows.push_back(row);
  }
  return rows;
}

std::string comparison_to_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "policy,mean_makespan,speedup,mean_rb,perfectly_balanced,search_pct,place_pct,reduce_pct,"
         "other_pct\n";
  for (const auto& r : rows) {
    out << r.policy << ',' << num(r.mean_makespan) << ',' << num(r.speedup) << ',' << num(r.mean_rb)
        << ',' << r.perfectly_balanced << ',' << num(100 * r.phase_share.search) << ','
        << num(100 * r.phase_share.place) << ',' << num(100 * r.phase_share.reduce) << ','
        << num(100 * r.phase_share.other) << '\n';
  }
  return out.str();
}

std::string comparison_to_text(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-14s %14s %8s %8s %6s %8s %8s %8s %8s\n", "policy",
                "makespan(ms)", "speedup", "mean_rb", "perfect", "search%", "place%", "reduce%",
                "other%");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-14s %14s %8s %8s %6d %8s %8s %8s %8s\n", r.policy.c_str(),
                  fixed(r.mean_makespan * 1e3, 3).c_str(), fixed(r.speedup, 3).c_str(),
                  fixed(r.mean_rb, 3).c_str(), r.perfectly_balanced,
                  fixed(100 * r.phase_share.search, 1).c_str(), fixed(100 * r.phase_share.place, 1).c_str(),
                  fixed(100 * r.phase_share.reduce, 1).c_str(), fixed(100 * r.phase_share.other, 1).c_str());
    out << line;
  }
  return out.str();
}

}  // namespace moebal
