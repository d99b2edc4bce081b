#pragma once

#include <string>

#include "majsim/dynamics.hpp"
#include "majsim/exact.hpp"
#include "majsim/montecarlo.hpp"
#include "majsim/theory.hpp"

namespace majsim {

/// Shortest round-trip decimal form of v; stable across runs.
std::string format_double(double v);

/// Single-line JSON documents. Key order is fixed so identical inputs
/// serialize to identical bytes.
std::string run_record_json(const RunRecord& rec, bool timed_out = false);
std::string exact_analysis_json(const ExactAnalysis& a);
std::string estimate_report_json(const EstimateReport& r);

/// CSV table of bound rows. Estimate columns are left empty on rows whose
/// method carries no Monte Carlo data.
std::string bound_table_csv_header();
std::string bound_report_csv_row(const BoundReport& r);
std::string sweep_point_csv_row(const SweepPoint& pt);
std::string sweep_point_json(const SweepPoint& pt);

}  // namespace majsim
