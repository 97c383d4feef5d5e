#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "dexseq/app/metrics_log.hpp"

namespace dexseq::app {

// Entry point of the command-line tool. `args` excludes the program name.
// Returns 0 on success, 1 on runtime failures and 2 on usage, config or
// missing-input errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One row per (candidate, stage) pair found in stage-promotion events.
struct ReportRow {
  std::string stage;
  int rank = 0;
  int candidate = 0;
  std::string fingers;
  std::string pose;
  double p_st = 0.0;
  double p_sa = 0.0;
  double p_ar = 0.0;
  std::string status;
};

std::vector<ReportRow> curriculum_rows(const std::vector<MetricsEvent>& events);

// Summary tables rebuilt from metrics events.
std::string render_report(const std::vector<MetricsEvent>& events);

}  // namespace dexseq::app
