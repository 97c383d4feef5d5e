#include "dexseq/app/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "dexseq/app/pipeline.hpp"
#include "dexseq/app/run_config.hpp"
#include "dexseq/errors.hpp"
#include "dexseq/random.hpp"
#include "dexseq/trajectory/store.hpp"

namespace dexseq::app {
namespace fs = std::filesystem;
namespace {

using randomization::Stage;

struct Options {
  std::string config = "default";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::string grasp_policy;
  std::string second_policy;
  std::string policy;
  std::string dataset;
  std::optional<std::string> stage;
  std::optional<int> episodes;
  std::optional<int> queries;
  std::vector<std::string> logs;
};

struct Context {
  RunConfig config;
  fs::path out;
  std::ostream& console;
};

struct Checkpoint {
  TaskKind task;
  fingers::FingerConfiguration config;
  optim::Policy policy;
};

void save_json(const fs::path& path, const Json& j) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw LookupError("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

Json load_json(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw LookupError("file not found: " + path.string());
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path.string(), e.what());
  }
}

Json metrics_json(const optim::EvalMetrics& m) {
  return Json{{"p_st", m.p_st}, {"p_sa", m.p_sa}, {"p_ar", m.p_ar}, {"episodes", m.episodes}};
}

std::string fingers_label(const std::vector<int>& fingers) {
  std::string s;
  for (int f : fingers) s += (s.empty() ? "" : ",") + std::to_string(f);
  return s;
}

void save_checkpoint(const fs::path& path, TaskKind task, const fingers::FingerConfiguration& config,
                     const optim::Policy& policy, const optim::EvalMetrics& metrics) {
  save_json(path, Json{{"task", std::string(to_string(task))},
                       {"config", fingers::to_json(config)},
                       {"policy", optim::to_json(policy)},
                       {"metrics", metrics_json(metrics)}});
}

Checkpoint load_checkpoint(const fs::path& path, const RunConfig& config) {
  const Json j = load_json(path);
  const std::string where = path.string();
  require_known_keys(j, {"task", "config", "policy", "metrics"}, where);
  if (!j.contains("task") || !j["task"].is_string()) throw SchemaError(where + ".task", "expected a task name");
  if (!j.contains("config") || !j.contains("policy")) throw SchemaError(where, "checkpoint needs config and policy");
  const TaskKind task = task_kind_from_string(j["task"].get<std::string>());
  return Checkpoint{task, fingers::finger_configuration_from_json(j["config"], where + ".config"),
                    optim::policy_from_json(j["policy"], config.tasks.spec(task))};
}

void emit_curve(MetricsLog& log, const std::vector<optim::CurvePoint>& curve, Json context) {
  for (const auto& p : curve) {
    Json payload = context;
    payload.update(optim::to_json(p));
    log.emit(kGeneration, std::move(payload));
  }
}

fs::path default_path(const Context& ctx, const std::string& given, const char* name) {
  return given.empty() ? ctx.out / name : fs::path(given);
}

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

void print_metrics(std::ostream& os, const std::string& label, const optim::EvalMetrics& m) {
  os << label << ": p_st " << format("%.3f", m.p_st) << "  p_sa " << format("%.3f", m.p_sa) << "  p_ar "
     << format("%.2f", m.p_ar) << "  (" << m.episodes << " episodes)\n";
}

int cmd_train_grasp(Context& ctx, MetricsLog& log) {
  const RunConfig& c = ctx.config;
  const auto configs = c.configurations();
  const auto& fingers = fingers::find_configuration(configs, c.grasp.config_id);
  const PhaseResult r = train_grasp(c, fingers, c.grasp.train.budget, c.seed);
  emit_curve(log, r.train.curve, Json{{"phase", "grasp"}, {"config_id", fingers.id}});
  log.emit(kEvaluation, Json{{"phase", "grasp"},
                             {"task", "grasp"},
                             {"config_id", fingers.id},
                             {"stage", std::string(to_string(c.grasp.train.stage))},
                             {"env_steps", r.train.env_steps},
                             {"metrics", metrics_json(r.eval)}});
  save_checkpoint(ctx.out / "grasp_policy.json", TaskKind::grasp, fingers, r.train.policy, r.eval);
  print_metrics(ctx.console, "grasp (config " + std::to_string(fingers.id) + ")", r.eval);
  ctx.console << "checkpoint: " << (ctx.out / "grasp_policy.json").string() << "\n";
  return 0;
}

int cmd_train_second(Context& ctx, MetricsLog& log, const Options& o) {
  const RunConfig& c = ctx.config;
  const Checkpoint grasp = load_checkpoint(default_path(ctx, o.grasp_policy, "grasp_policy.json"), c);
  if (grasp.task != TaskKind::grasp) throw ConfigError("train-second: --grasp-policy is not a grasp checkpoint");
  const optim::TerminalStateBuffer buffer = grasp_buffer(c, grasp.policy, grasp.config, c.seed);
  const PhaseResult r = train_second(c, buffer, std::nullopt, c.second.train.stage, c.second.train.budget, c.seed,
                                     c.second.train.eval_episodes);
  const std::string task(to_string(c.second.task));
  emit_curve(log, r.train.curve, Json{{"phase", "second"}, {"task", task}, {"config_id", grasp.config.id}});
  log.emit(kEvaluation, Json{{"phase", "second"},
                             {"task", task},
                             {"config_id", grasp.config.id},
                             {"stage", std::string(to_string(c.second.train.stage))},
                             {"buffer", buffer.states.size()},
                             {"env_steps", r.train.env_steps},
                             {"metrics", metrics_json(r.eval)}});
  save_checkpoint(ctx.out / "second_policy.json", c.second.task, grasp.config, r.train.policy, r.eval);
  ctx.console << "terminal states: " << buffer.states.size() << "\n";
  print_metrics(ctx.console, task, r.eval);
  ctx.console << "checkpoint: " << (ctx.out / "second_policy.json").string() << "\n";
  return 0;
}

struct CandidateState {
  std::optional<optim::Policy> grasp;
  std::optional<optim::TerminalStateBuffer> buffer;
  std::optional<optim::Policy> second;
  optim::EvalMetrics grasp_eval;
  std::vector<optim::CurvePoint> grasp_curve;
  std::array<std::vector<optim::CurvePoint>, 3> curves;
};

int cmd_run_curriculum(Context& ctx, MetricsLog& log) {
  const RunConfig& c = ctx.config;
  const auto configs = c.configurations();
  std::vector<curriculum::CandidateRecord> records;
  for (const auto& f : configs) {
    if (!c.curriculum.candidates.empty() &&
        std::find(c.curriculum.candidates.begin(), c.curriculum.candidates.end(), f.id) ==
            c.curriculum.candidates.end()) {
      continue;
    }
    curriculum::CandidateRecord r;
    r.id = f.id;
    r.config = f;
    records.push_back(r);
  }
  std::map<int, std::size_t> slot;
  for (std::size_t i = 0; i < records.size(); ++i) slot[records[i].id] = i;
  std::vector<CandidateState> states(records.size());
  const fs::path dir = ctx.out / "candidates";

  const curriculum::StageTrainer trainer = [&](curriculum::CandidateRecord& rec, Stage stage, long budget) {
    CandidateState& st = states[slot.at(rec.id)];
    const auto s = static_cast<std::size_t>(stage);
    const std::uint64_t seed = derive_seed(c.seed, kCandidateSeed, static_cast<std::uint64_t>(rec.id));
    const fs::path cdir = dir / std::to_string(rec.id);
    fs::create_directories(cdir);
    if (!st.buffer) {
      const PhaseResult g = train_grasp(c, rec.config, c.curriculum.grasp_budget, seed);
      st.grasp = g.train.policy;
      st.grasp_eval = g.eval;
      st.grasp_curve = g.train.curve;
      save_checkpoint(cdir / "grasp_policy.json", TaskKind::grasp, rec.config, *st.grasp, g.eval);
      rec.grasp_policy = (cdir / "grasp_policy.json").string();
      st.buffer = grasp_buffer(c, *st.grasp, rec.config, seed);
    }
    const PhaseResult r = train_second(c, *st.buffer, st.second, stage, budget, derive_seed(seed, s),
                                       c.curriculum.eval_episodes);
    st.second = r.train.policy;
    st.curves[s] = r.train.curve;
    save_checkpoint(cdir / "second_policy.json", c.second.task, rec.config, *st.second, r.eval);
    rec.second_policy = (cdir / "second_policy.json").string();
    return c.curriculum.ranking == RankingSource::evaluation ? r.eval : r.train.best_metrics;
  };

  const curriculum::CurriculumResult result =
      curriculum::run_curriculum(records, c.curriculum.schedule, trainer, c.workers);

  std::map<int, const curriculum::CandidateRecord*> by_id;
  for (const auto& r : result.records) by_id[r.id] = &r;
  for (const auto& summary : result.stages) {
    const auto s = static_cast<std::size_t>(summary.stage);
    const std::string stage(to_string(summary.stage));
    std::vector<int> entered = summary.entered;
    std::sort(entered.begin(), entered.end());
    for (int id : entered) {
      const CandidateState& st = states[slot.at(id)];
      if (summary.stage == Stage::C0 && st.grasp) {
        emit_curve(log, st.grasp_curve, Json{{"phase", "grasp"}, {"candidate", id}});
        log.emit(kEvaluation, Json{{"phase", "grasp"},
                                   {"task", "grasp"},
                                   {"candidate", id},
                                   {"stage", std::string(to_string(c.grasp.train.stage))},
                                   {"metrics", metrics_json(st.grasp_eval)}});
      }
      emit_curve(log, st.curves[s], Json{{"phase", "second"}, {"candidate", id}, {"stage", stage}});
    }
    std::vector<int> order = summary.ranking;
    for (int id : entered) {
      if (std::find(order.begin(), order.end(), id) == order.end()) order.push_back(id);
    }
    const bool last = summary.stage == Stage::C2;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const int id = order[k];
      const curriculum::CandidateRecord& rec = *by_id.at(id);
      const curriculum::StageResult& sr = *rec.result_for(summary.stage);
      const bool ranked = k < summary.ranking.size();
      std::string status;
      if (sr.failed) {
        status = "failed";
      } else if (last) {
        status = id == result.winner ? "winner" : "finished";
      } else {
        status = std::find(summary.survivors.begin(), summary.survivors.end(), id) != summary.survivors.end()
                     ? "promoted"
                     : "eliminated";
      }
      Json payload{{"stage", stage},
                   {"rank", ranked ? static_cast<int>(k) + 1 : 0},
                   {"candidate", id},
                   {"active", rec.config.active},
                   {"pose", std::string(to_string(rec.config.initial_pose))},
                   {"metrics", metrics_json(sr.metrics)},
                   {"status", status}};
      if (sr.failed) payload["error"] = sr.error;
      log.emit(kStagePromotion, std::move(payload));
    }
  }

  const curriculum::BudgetReport budget =
      curriculum::budget_report(c.curriculum.schedule, static_cast<int>(records.size()));
  Json records_json = Json::array();
  for (const auto& r : result.records) {
    Json history = Json::array();
    for (const auto& h : r.history) {
      history.push_back(Json{{"stage", std::string(to_string(h.stage))},
                             {"metrics", metrics_json(h.metrics)},
                             {"failed", h.failed},
                             {"error", h.error}});
    }
    records_json.push_back(Json{{"id", r.id},
                                {"config", fingers::to_json(r.config)},
                                {"alive", r.alive},
                                {"grasp_policy", r.grasp_policy},
                                {"second_policy", r.second_policy},
                                {"history", history}});
  }
  Json stages_json = Json::array();
  for (const auto& s : result.stages) {
    stages_json.push_back(Json{{"stage", std::string(to_string(s.stage))},
                               {"entered", s.entered},
                               {"ranking", s.ranking},
                               {"survivors", s.survivors},
                               {"dispatched_steps", s.dispatched_steps}});
  }
  const std::string winner_path = by_id.at(result.winner)->second_policy;
  save_json(ctx.out / "curriculum.json",
            Json{{"winner", result.winner},
                 {"winner_checkpoint", winner_path},
                 {"dispatched_steps", result.dispatched_steps},
                 {"budget", Json{{"total", budget.total}, {"flat", budget.flat}, {"saving", budget.saving}}},
                 {"records", records_json},
                 {"stages", stages_json}});
  ctx.console << "winner: candidate " << result.winner << " (" << winner_path << ")\n";
  ctx.console << "dispatched steps: " << result.dispatched_steps << " of " << budget.flat << " flat\n";
  return 0;
}

int cmd_evaluate(Context& ctx, MetricsLog& log, const Options& o) {
  const RunConfig& c = ctx.config;
  fs::path policy_path;
  if (!o.policy.empty()) {
    policy_path = o.policy;
  } else {
    policy_path = fs::exists(ctx.out / "second_policy.json") ? ctx.out / "second_policy.json"
                                                              : ctx.out / "grasp_policy.json";
  }
  const Checkpoint cp = load_checkpoint(policy_path, c);
  const bool grasp = cp.task == TaskKind::grasp;
  const PhaseSettings& phase = grasp ? c.grasp.train : c.second.train;
  const Stage stage = o.stage ? randomization::stage_from_string(*o.stage) : phase.stage;
  const int episodes = o.episodes.value_or(phase.eval_episodes);
  const std::uint64_t seed = derive_seed(c.seed, grasp ? kGraspEvalSeed : kSecondEvalSeed);
  optim::EvalMetrics m;
  std::size_t buffer_size = 0;
  if (grasp) {
    m = optim::evaluate_policy(cp.policy, grasp_setup(c, cp.config, stage), episodes, seed, phase.cem.workers);
  } else {
    if (cp.task != c.second.task) throw ConfigError("evaluate: checkpoint task differs from second.task");
    const Checkpoint g = load_checkpoint(default_path(ctx, o.grasp_policy, "grasp_policy.json"), c);
    if (g.task != TaskKind::grasp) throw ConfigError("evaluate: --grasp-policy is not a grasp checkpoint");
    const optim::TerminalStateBuffer buffer = grasp_buffer(c, g.policy, g.config, c.seed);
    buffer_size = buffer.states.size();
    m = optim::evaluate_policy(cp.policy, second_setup(c, buffer, stage), episodes, seed, phase.cem.workers);
  }
  Json payload{{"phase", grasp ? "grasp" : "second"},
               {"task", std::string(to_string(cp.task))},
               {"config_id", cp.config.id},
               {"stage", std::string(to_string(stage))},
               {"metrics", metrics_json(m)}};
  if (!grasp) payload["buffer"] = buffer_size;
  log.emit(kEvaluation, std::move(payload));
  print_metrics(ctx.console, std::string(to_string(cp.task)) + " at " + std::string(to_string(stage)), m);
  return 0;
}

int cmd_collect_dataset(Context& ctx, MetricsLog& log, const Options& o) {
  const RunConfig& c = ctx.config;
  const Checkpoint g = load_checkpoint(default_path(ctx, o.grasp_policy, "grasp_policy.json"), c);
  const Checkpoint s = load_checkpoint(default_path(ctx, o.second_policy, "second_policy.json"), c);
  if (g.task != TaskKind::grasp) throw ConfigError("collect-dataset: --grasp-policy is not a grasp checkpoint");
  if (s.task != c.second.task) throw ConfigError("collect-dataset: second checkpoint task differs from second.task");
  if (!(g.config == s.config)) throw ConfigError("collect-dataset: checkpoints use different finger configurations");
  trajectory::CollectOptions options;
  options.stage = c.dataset.stage;
  options.scope = c.dataset.scope;
  options.max_attempts_per_trajectory = c.dataset.max_attempts_per_trajectory;
  options.workers = c.workers;
  const trajectory::PolicyPair pair{&g.policy, &s.policy};
  const fs::path path = ctx.out / "dataset.jsonl";
  try {
    const trajectory::Dataset d = trajectory::collect_dataset(c.grasp_spec(), c.second_spec(), g.config, pair,
                                                              c.dataset.size, derive_seed(c.seed, kDatasetSeed),
                                                              options);
    trajectory::save_dataset(d, path);
    log.emit(kDataset, Json{{"task", std::string(to_string(c.second.task))},
                            {"requested", c.dataset.size},
                            {"collected", d.trajectories.size()},
                            {"stage", std::string(to_string(c.dataset.stage))},
                            {"scope", std::string(to_string(c.dataset.scope))},
                            {"checksum", trajectory::policy_checksum(pair)},
                            {"path", path.filename().string()}});
    ctx.console << "dataset: " << d.trajectories.size() << " trajectories -> " << path.string() << "\n";
  } catch (const PartialDatasetError& e) {
    log.emit(kDataset, Json{{"task", std::string(to_string(c.second.task))},
                            {"requested", e.requested()},
                            {"collected", e.collected()},
                            {"shortfall", e.shortfall()},
                            {"stage", std::string(to_string(c.dataset.stage))}});
    throw;
  }
  return 0;
}

int cmd_retrieve_exec(Context& ctx, MetricsLog& log, const Options& o) {
  const RunConfig& c = ctx.config;
  const trajectory::Dataset d = trajectory::load_dataset(default_path(ctx, o.dataset, "dataset.jsonl"));
  if (d.trajectories.empty()) throw LookupError("retrieve-exec: dataset is empty");
  const tasks::TaskSpec spec = c.tasks.spec(d.trajectories.front().task);
  const fingers::FingerConfiguration& fingers = d.trajectories.front().config;
  const int queries = o.queries.value_or(c.dataset.queries);
  if (queries < 0) throw ConfigError("retrieve-exec: --queries must be >= 0");
  std::map<std::string, int> counts;
  for (trajectory::Outcome k : {trajectory::Outcome::success_both, trajectory::Outcome::fail_subtask1_only,
                                trajectory::Outcome::fail_subtask2_only, trajectory::Outcome::fail_both}) {
    counts[std::string(to_string(k))] = 0;
  }
  for (int q = 0; q < queries; ++q) {
    Rng rng(derive_seed(c.seed, kQuerySeed, static_cast<std::uint64_t>(q)));
    const auto draw = randomization::sample_scene(spec.ranges, c.dataset.stage, rng, c.dataset.scope);
    const sandbox::Scene scene = trajectory::initial_scene(spec, draw, fingers);
    const Vec3 p = scene.state.object_poses[tasks::kGraspBlock].position;
    const int id = trajectory::retrieve(d, p);
    const trajectory::Trajectory& t = trajectory::find_trajectory(d, id);
    const trajectory::Outcome outcome = trajectory::execute_open_loop(t, spec, scene);
    const std::string label(to_string(outcome));
    ++counts[label];
    log.emit(kOutcome, Json{{"query", q},
                            {"position", detail::field_to_json(p)},
                            {"trajectory", id},
                            {"distance", (t.initial_position - p).norm()},
                            {"class", label}});
  }
  int total = 0;
  for (const auto& [_, n] : counts) total += n;
  if (total != queries) throw StateError("retrieve-exec: outcome classes do not partition the queries");
  save_json(ctx.out / "outcomes.json", Json{{"queries", queries}, {"counts", counts}});
  for (const auto& [label, n] : counts) ctx.console << label << ": " << n << "\n";
  ctx.console << "total: " << total << "\n";
  return 0;
}

int cmd_report(Context& ctx, const Options& o) {
  std::vector<fs::path> logs;
  for (const auto& l : o.logs) logs.emplace_back(l);
  if (logs.empty()) {
    if (!fs::is_directory(ctx.out)) throw LookupError("report: output directory not found: " + ctx.out.string());
    for (const auto& e : fs::directory_iterator(ctx.out)) {
      const std::string name = e.path().filename().string();
      if (name.size() > 14 && name.ends_with(".metrics.jsonl")) logs.push_back(e.path());
    }
    std::sort(logs.begin(), logs.end());
    if (logs.empty()) throw LookupError("report: no metrics logs in " + ctx.out.string());
  }
  std::vector<MetricsEvent> events;
  for (const auto& p : logs) {
    auto e = read_metrics(p);
    events.insert(events.end(), e.begin(), e.end());
  }
  const std::string text = render_report(events);
  std::ofstream(ctx.out / "report.txt", std::ios::binary | std::ios::trunc) << text;
  ctx.console << text;
  return 0;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

}  // namespace

std::vector<ReportRow> curriculum_rows(const std::vector<MetricsEvent>& events) {
  std::vector<ReportRow> rows;
  for (const auto& e : events) {
    if (e.kind != kStagePromotion) continue;
    const Json& p = e.payload;
    ReportRow r;
    r.stage = p.at("stage").get<std::string>();
    r.rank = p.at("rank").get<int>();
    r.candidate = p.at("candidate").get<int>();
    r.fingers = fingers_label(p.at("active").get<std::vector<int>>());
    r.pose = p.at("pose").get<std::string>();
    r.p_st = p.at("metrics").at("p_st").get<double>();
    r.p_sa = p.at("metrics").at("p_sa").get<double>();
    r.p_ar = p.at("metrics").at("p_ar").get<double>();
    r.status = p.at("status").get<std::string>();
    rows.push_back(r);
  }
  return rows;
}

std::string render_report(const std::vector<MetricsEvent>& events) {
  std::ostringstream os;
  const auto rows = curriculum_rows(events);
  if (!rows.empty()) {
    os << "Curriculum\n";
    os << pad("stage", 7) << pad("rank", 6) << pad("id", 5) << pad("fingers", 9) << pad("pose", 12)
       << pad("p_st", 8) << pad("p_sa", 8) << pad("p_ar", 11) << "status\n";
    for (const auto& r : rows) {
      os << pad(r.stage, 7) << pad(r.rank ? std::to_string(r.rank) : "-", 6) << pad(std::to_string(r.candidate), 5)
         << pad(r.fingers, 9) << pad(r.pose, 12) << pad(format("%.3f", r.p_st), 8) << pad(format("%.3f", r.p_sa), 8)
         << pad(format("%.2f", r.p_ar), 11) << r.status << "\n";
    }
    os << "\n";
  }
  bool header = false;
  for (const auto& e : events) {
    if (e.kind != kEvaluation || e.payload.contains("candidate")) continue;
    if (!header) {
      os << "Evaluations\n" << pad("run", 24) << pad("phase", 8) << pad("task", 10) << pad("stage", 7)
         << pad("episodes", 10) << pad("p_st", 8) << pad("p_sa", 8) << "p_ar\n";
      header = true;
    }
    const Json& m = e.payload.at("metrics");
    os << pad(e.run, 24) << pad(e.payload.at("phase").get<std::string>(), 8)
       << pad(e.payload.at("task").get<std::string>(), 10) << pad(e.payload.at("stage").get<std::string>(), 7)
       << pad(std::to_string(m.at("episodes").get<int>()), 10) << pad(format("%.3f", m.at("p_st").get<double>()), 8)
       << pad(format("%.3f", m.at("p_sa").get<double>()), 8) << format("%.2f", m.at("p_ar").get<double>()) << "\n";
  }
  if (header) os << "\n";
  header = false;
  for (const auto& e : events) {
    if (e.kind != kDataset) continue;
    if (!header) {
      os << "Datasets\n" << pad("run", 24) << pad("task", 10) << pad("requested", 11) << "collected\n";
      header = true;
    }
    os << pad(e.run, 24) << pad(e.payload.at("task").get<std::string>(), 10)
       << pad(std::to_string(e.payload.at("requested").get<int>()), 11) << e.payload.at("collected").get<int>()
       << "\n";
  }
  if (header) os << "\n";
  const std::array<const char*, 4> classes{"success-both", "fail-subtask1-only", "fail-subtask2-only", "fail-both"};
  std::vector<std::string> runs;
  std::map<std::string, std::map<std::string, int>> outcome_counts;
  for (const auto& e : events) {
    if (e.kind != kOutcome) continue;
    if (!outcome_counts.contains(e.run)) runs.push_back(e.run);
    ++outcome_counts[e.run][e.payload.at("class").get<std::string>()];
  }
  if (!runs.empty()) {
    os << "Outcomes\n" << pad("run", 24);
    for (const char* k : classes) os << pad(k, 20);
    os << "total\n";
    for (const auto& run : runs) {
      int total = 0;
      os << pad(run, 24);
      for (const char* k : classes) {
        const int n = outcome_counts[run][k];
        total += n;
        os << pad(std::to_string(n), 20);
      }
      os << total << "\n";
    }
    os << "\n";
  }
  return os.str();
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential grasp-conditioned manipulation toolkit", "dexseq"};
  app.require_subcommand(0, 1);
  bool print_defaults = false;
  app.add_flag("--print-defaults", print_defaults, "Print the built-in run config and exit");

  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Run config JSON file, or 'default'");
    sub->add_option("--seed", o.seed, "Run seed (overrides the config)");
    sub->add_option("--out", o.out, "Output directory (overrides the config)");
  };
  CLI::App* train_grasp_cmd = app.add_subcommand("train-grasp", "Train the grasp policy");
  CLI::App* train_second_cmd = app.add_subcommand("train-second", "Train the second-subtask policy");
  CLI::App* curriculum_cmd = app.add_subcommand("run-curriculum", "Curriculum-based grasp selection");
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate a policy checkpoint");
  CLI::App* collect_cmd = app.add_subcommand("collect-dataset", "Collect successful trajectories");
  CLI::App* retrieve_cmd = app.add_subcommand("retrieve-exec", "Retrieve and replay trajectories");
  CLI::App* report_cmd = app.add_subcommand("report", "Summarize metrics logs");
  for (CLI::App* sub : {train_grasp_cmd, train_second_cmd, curriculum_cmd, evaluate_cmd, collect_cmd, retrieve_cmd,
                        report_cmd}) {
    common(sub);
  }
  train_second_cmd->add_option("--grasp-policy", o.grasp_policy, "Grasp checkpoint");
  evaluate_cmd->add_option("--policy", o.policy, "Checkpoint to evaluate");
  evaluate_cmd->add_option("--grasp-policy", o.grasp_policy, "Grasp checkpoint for second-subtask starts");
  evaluate_cmd->add_option("--stage", o.stage, "Curriculum stage (C0, C1, C2)");
  evaluate_cmd->add_option("--episodes", o.episodes, "Evaluation episodes");
  collect_cmd->add_option("--grasp-policy", o.grasp_policy, "Grasp checkpoint");
  collect_cmd->add_option("--second-policy", o.second_policy, "Second-subtask checkpoint");
  retrieve_cmd->add_option("--dataset", o.dataset, "Dataset file");
  retrieve_cmd->add_option("--queries", o.queries, "Number of query scenes");
  report_cmd->add_option("--log", o.logs, "Metrics logs (default: every log in the output directory)");

  std::vector<std::string> argv_storage{"dexseq"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  if (print_defaults) {
    out << to_json(RunConfig{}).dump(2) << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    err << app.help();
    return 2;
  }
  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  try {
    RunConfig config = load_run_config(o.config);
    if (o.seed) config.seed = *o.seed;
    if (o.out) config.out = *o.out;
    config.validate();
    Context ctx{config, fs::path(config.out), out};
    if (name == "report") return cmd_report(ctx, o);

    fs::create_directories(ctx.out);
    save_json(ctx.out / (name + ".config.json"), to_json(config));
    MetricsLog log(ctx.out / (name + ".metrics.jsonl"), name + "-" + std::to_string(config.seed));
    if (name == "train-grasp") return cmd_train_grasp(ctx, log);
    if (name == "train-second") return cmd_train_second(ctx, log, o);
    if (name == "run-curriculum") return cmd_run_curriculum(ctx, log);
    if (name == "evaluate") return cmd_evaluate(ctx, log, o);
    if (name == "collect-dataset") return cmd_collect_dataset(ctx, log, o);
    if (name == "retrieve-exec") return cmd_retrieve_exec(ctx, log, o);
  } catch (const SchemaError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const LookupError& e) {
    err << "missing input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << name << " failed: " << e.what() << "\n";
    return 1;
  }
  err << "unknown command " << name << "\n";
  return 2;
}

}  // namespace dexseq::app
