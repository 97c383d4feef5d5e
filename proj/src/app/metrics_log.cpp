#include "dexseq/app/metrics_log.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include "dexseq/errors.hpp"

namespace dexseq::app {
namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char date[32];
  std::strftime(date, sizeof(date), "%Y-%m-%dT%H:%M:%S", &tm);
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s.%03dZ", date, static_cast<int>(ms));
  return buf;
}

}  // namespace

Json to_json(const MetricsEvent& e) {
  return Json{{"seq", e.seq}, {"run", e.run}, {"ts", e.ts}, {"kind", e.kind}, {"payload", e.payload}};
}

MetricsEvent metrics_event_from_json(const Json& j) {
  require_known_keys(j, {"seq", "run", "ts", "kind", "payload"}, "event");
  MetricsEvent e;
  try {
    e.seq = j.at("seq").get<std::uint64_t>();
    e.run = j.at("run").get<std::string>();
    e.ts = j.at("ts").get<std::string>();
    e.kind = j.at("kind").get<std::string>();
    e.payload = j.at("payload");
  } catch (const Json::exception& ex) {
    throw SchemaError("event", ex.what());
  }
  return e;
}

MetricsLog::MetricsLog(const std::filesystem::path& path, std::string run)
    : out_(path, std::ios::binary | std::ios::trunc), run_(std::move(run)) {
  if (!out_) throw LookupError("cannot write metrics log " + path.string());
}

void MetricsLog::emit(const std::string& kind, Json payload) {
  std::lock_guard lock(mutex_);
  MetricsEvent e{next_seq_++, run_, utc_now(), kind, std::move(payload)};
  out_ << to_json(e).dump() << '\n';
  out_.flush();
}

std::vector<MetricsEvent> read_metrics(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LookupError("metrics log not found: " + path.string());
  std::vector<MetricsEvent> events;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      events.push_back(metrics_event_from_json(Json::parse(line)));
    } catch (const Json::parse_error& e) {
      throw SchemaError(path.string() + ":" + std::to_string(line_no), e.what());
    }
  }
  return events;
}

std::string normalize_timestamps(const std::string& log_text) {
  std::istringstream in(log_text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j = Json::parse(line);
    j["ts"] = "";
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace dexseq::app
