#include "majsim/report_io.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

namespace majsim {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;  // 64 bytes always suffice for a double
  return std::string(buf, ptr);
}

std::string run_record_json(const RunRecord& rec, bool timed_out) {
  ordered_json doc;
  doc["initial"] = rec.initial.to_string();
  doc["final"] = rec.final_state.to_string();
  doc["steps"] = rec.steps_to_absorption;
  doc["flips"] = rec.flips;
  doc["consensus"] = rec.consensus;
  doc["z_initial"] = rec.z_initial;
  doc["z_final"] = rec.z_final;
  doc["timed_out"] = timed_out;
  if (!rec.z_trace.empty()) doc["z_trace"] = rec.z_trace;
  return doc.dump();
}

std::string exact_analysis_json(const ExactAnalysis& a) {
  std::size_t frozen = 0;
  const StateIndex full = static_cast<StateIndex>((1u << a.n) - 1);
  for (StateIndex code : a.absorbing) {
    if (code != 0 && code != full) ++frozen;
  }
  ordered_json doc;
  doc["n"] = a.n;
  doc["p"] = a.p_initial;
  doc["p_consensus"] = a.p_consensus;
  doc["n_absorbing"] = a.absorbing.size();
  doc["n_frozen_nonconsensus"] = frozen;
  if (a.n <= 12) doc["h"] = a.h;
  return doc.dump();
}

std::string estimate_report_json(const EstimateReport& r) {
  ordered_json doc;
  doc["trials"] = r.trials;
  doc["consensus_count"] = r.consensus_count;
  doc["consensus_frequency"] = r.consensus_frequency;
  doc["wilson_low"] = r.wilson_low;
  doc["wilson_high"] = r.wilson_high;
  doc["mean_absorption_steps"] = r.mean_absorption_steps;
  doc["mean_flips"] = r.mean_flips;
  doc["timeouts"] = r.timeouts;
  return doc.dump();
}

std::string bound_table_csv_header() {
  return "graph_id,n,m,p,bound,exact_or_estimate,method,satisfied,"
         "wilson_low,wilson_high,mean_absorption_steps,mean_flips";
}

std::string bound_report_csv_row(const BoundReport& r) {
  std::ostringstream row;
  row << r.graph_id << ',' << r.n << ',' << r.m << ',' << format_double(r.p)
      << ',' << format_double(r.bound) << ','
      << format_double(r.exact_or_estimate) << ',' << r.method << ','
      << (r.satisfied ? "true" : "false") << ",,,,";
  return row.str();
}

std::string sweep_point_csv_row(const SweepPoint& pt) {
  const BoundReport& r = pt.report;
  const EstimateReport& e = pt.estimate;
  std::ostringstream row;
  row << r.graph_id << ',' << r.n << ',' << r.m << ',' << format_double(r.p)
      << ',' << format_double(r.bound) << ','
      << format_double(r.exact_or_estimate) << ',' << r.method << ','
      << (r.satisfied ? "true" : "false") << ',' << format_double(e.wilson_low)
      << ',' << format_double(e.wilson_high) << ','
      << format_double(e.mean_absorption_steps) << ','
      << format_double(e.mean_flips);
  return row.str();
}

std::string sweep_point_json(const SweepPoint& pt) {
  ordered_json doc;
  doc["graph_id"] = pt.report.graph_id;
  doc["n"] = pt.report.n;
  doc["m"] = pt.report.m;
  doc["p"] = pt.report.p;
  doc["bound"] = pt.report.bound;
  doc["vacuous"] = pt.report.vacuous;
  doc["exact_or_estimate"] = pt.report.exact_or_estimate;
  doc["method"] = pt.report.method;
  doc["satisfied"] = pt.report.satisfied;
  doc["wilson_low"] = pt.estimate.wilson_low;
  doc["wilson_high"] = pt.estimate.wilson_high;
  doc["mean_absorption_steps"] = pt.estimate.mean_absorption_steps;
  doc["mean_flips"] = pt.estimate.mean_flips;
  doc["trials"] = pt.estimate.trials;
  doc["consensus_count"] = pt.estimate.consensus_count;
  doc["timeouts"] = pt.estimate.timeouts;
  return doc.dump();
}

}  // namespace majsim
