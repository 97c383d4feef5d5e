#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include "dexseq/json_fields.hpp"

namespace dexseq::app {

// Event kinds written to the log.
inline constexpr const char* kGeneration = "generation";
inline constexpr const char* kStagePromotion = "stage-promotion";
inline constexpr const char* kEvaluation = "evaluation";
inline constexpr const char* kDataset = "dataset";
inline constexpr const char* kOutcome = "outcome";

struct MetricsEvent {
  std::uint64_t seq = 0;
  std::string run;
  std::string ts;
  std::string kind;
  Json payload;
};

Json to_json(const MetricsEvent& e);
MetricsEvent metrics_event_from_json(const Json& j);

// Line-delimited event log. Each line is flushed as it is written.
class MetricsLog {
 public:
  // Truncates `path`.
  MetricsLog(const std::filesystem::path& path, std::string run);

  void emit(const std::string& kind, Json payload);
  std::uint64_t count() const { return next_seq_; }

 private:
  std::mutex mutex_;
  std::ofstream out_;
  std::string run_;
  std::uint64_t next_seq_ = 0;
};

std::vector<MetricsEvent> read_metrics(const std::filesystem::path& path);

// The same log text with every "ts" value blanked.
std::string normalize_timestamps(const std::string& log_text);

}  // namespace dexseq::app
