#include "cli/dispatch.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cli/inspect.h"
#include "json.hpp"
#include "llmstate/bench/suite.h"
#include "llmstate/bench/task.h"
#include "llmstate/llm/cassette.h"
#include "llmstate/llm/live_client.h"
#include "llmstate/planner/planner.h"

namespace llmstate::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string task;
  std::string suite;
  std::string trace;
  std::string mode = "full";
  std::string backend = "replay";
  std::string cassette;
  std::string out;
  std::string format = "text";
  std::string model;
  int parallel = 1;
  int trials = 0;
  int plan_horizon = 20;
  int max_llm_calls = 300;
  bool strict = false;
  bool prompts = false;
};

// Thrown for operator mistakes; becomes exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lets several episodes share one live client.
class SharedBackend : public llm::Backend {
 public:
  explicit SharedBackend(llm::Backend& inner) : inner_(inner) {}
  std::string complete(const llm::ChatRequest& request, const llm::CallContext& context) override {
    return inner_.complete(request, context);
  }

 private:
  llm::Backend& inner_;
};

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot write " + path.string());
  file << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot read " + path.string());
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

planner::PlannerConfig make_config(const Options& opts) {
  planner::PlannerConfig config;
  const auto mode = state::state_mode_from_string(opts.mode);
  if (!mode) throw UsageError("unknown mode '" + opts.mode + "'");
  config.state_mode = *mode;
  config.plan_horizon_budget = opts.plan_horizon;
  config.max_llm_calls = opts.max_llm_calls;
  if (!opts.model.empty()) {
    config.model = opts.model;
  } else if (const char* env = std::getenv("LLMSTATE_MODEL"); env != nullptr && *env != '\0') {
    config.model = env;
  }
  return config;
}

fs::path out_dir(const Options& opts) { return opts.out.empty() ? fs::path("out") : fs::path(opts.out); }

llm::Cassette load_cassette_or_fail(const fs::path& path) {
  if (path.empty()) throw UsageError("no cassette given; pass --cassette");
  if (!fs::exists(path)) throw UsageError("cassette not found: " + path.string());
  return llm::Cassette::load(path);
}

std::string episode_summary(const planner::EpisodeResult& result, const std::string& format) {
  if (format == "structured") {
    nlohmann::ordered_json j;
    j["task"] = result.task_id;
    j["mode"] = state::to_string(result.mode);
    j["success"] = result.success;
    j["steps_executed"] = result.steps_executed;
    j["step_cap"] = result.step_cap;
    j["outcome"] = planner::to_string(result.outcome);
    j["llm_calls"] = result.llm_calls;
    if (!result.error.empty()) j["error"] = result.error;
    return j.dump() + "\n";
  }
  std::string line = result.task_id + ": " + (result.success ? "success" : "failure") +
                     ", steps=" + std::to_string(result.steps_executed) +
                     ", outcome=" + std::string(planner::to_string(result.outcome)) +
                     ", mode=" + std::string(state::to_string(result.mode)) + "\n";
  if (!result.error.empty()) line += "error: " + result.error + "\n";
  return line;
}

int cmd_run(const Options& opts, std::ostream& out) {
  if (opts.task.empty()) throw UsageError("--task is required");
  const auto task = bench::load_task_file(opts.task);
  const auto config = make_config(opts);

  std::unique_ptr<llm::LiveBackend> live_backend;
  std::unique_ptr<llm::Backend> backend;
  if (opts.backend == "replay") {
    const fs::path path = opts.cassette.empty() ? task.cassette : fs::path(opts.cassette);
    backend = std::make_unique<llm::CassetteBackend>(load_cassette_or_fail(path));
  } else {
    live_backend = std::make_unique<llm::LiveBackend>(llm::LiveConfig::from_env());
    if (opts.backend == "record") {
      const fs::path path = opts.cassette.empty() ? out_dir(opts) / "cassettes" / (task.id + ".json")
                                                  : fs::path(opts.cassette);
      backend = std::make_unique<llm::CassetteBackend>(llm::CassetteMode::kRecord, llm::Cassette{},
                                                       *live_backend, path);
      out << "recording cassette to " << path.string() << "\n";
    } else {
      backend = std::make_unique<SharedBackend>(*live_backend);
    }
  }

  const auto result = planner::run_episode(task, *backend, config);
  if (!opts.out.empty()) {
    write_text(fs::path(opts.out) / "traces" / (task.id + ".json"), planner::serialize_trace(result));
  }
  out << episode_summary(result, opts.format);
  if (opts.strict && !result.success) return kExitTaskFailed;
  return kExitOk;
}

int cmd_suite(const Options& opts, std::ostream& out) {
  if (opts.suite.empty()) throw UsageError("--suite is required");
  auto suite = bench::load_suite_file(opts.suite);
  if (opts.trials > 0) {
    for (auto& task : suite.tasks) task.trials = opts.trials;
  }

  bench::SuiteOptions options;
  options.suite_name = suite.name;
  options.config = make_config(opts);
  options.parallelism = opts.parallel;
  options.backend_label = opts.backend;
  options.out_dir = opts.out;

  std::unique_ptr<llm::LiveBackend> live_backend;
  std::map<std::string, llm::Cassette> cassettes;
  bench::BackendFactory factory;
  if (opts.backend == "replay") {
    for (const auto& task : suite.tasks) {
      const fs::path path =
          opts.cassette.empty() ? task.cassette : fs::path(opts.cassette) / (task.id + ".json");
      cassettes.emplace(task.id, load_cassette_or_fail(path));
    }
    factory = [&cassettes](const bench::TaskSpec& task, int) -> std::unique_ptr<llm::Backend> {
      return std::make_unique<llm::CassetteBackend>(cassettes.at(task.id));
    };
  } else {
    live_backend = std::make_unique<llm::LiveBackend>(llm::LiveConfig::from_env());
    if (opts.backend == "record") {
      const auto dir = out_dir(opts) / "cassettes";
      factory = [&live_backend, dir](const bench::TaskSpec& task, int trial) -> std::unique_ptr<llm::Backend> {
        return std::make_unique<llm::CassetteBackend>(
            llm::CassetteMode::kRecord, llm::Cassette{}, *live_backend,
            dir / (task.id + ".trial" + std::to_string(trial) + ".json"));
      };
    } else {
      factory = [&live_backend](const bench::TaskSpec&, int) -> std::unique_ptr<llm::Backend> {
        return std::make_unique<SharedBackend>(*live_backend);
      };
    }
  }

  const auto report = bench::run_suite(suite.tasks, factory, options);
  out << (opts.format == "structured" ? bench::render_report_json(report)
                                      : bench::render_report_text(report));
  if (opts.strict) {
    const bool all = std::all_of(report.tasks.begin(), report.tasks.end(), [](const auto& t) {
      return t.metrics.successes == t.metrics.trials;
    });
    if (!all) return kExitTaskFailed;
  }
  return kExitOk;
}

int cmd_inspect(const Options& opts, std::ostream& out) {
  if (opts.trace.empty()) throw UsageError("a trace file is required");
  if (!fs::exists(opts.trace)) throw UsageError("trace not found: " + opts.trace);
  const auto trace = planner::parse_trace(read_text(opts.trace));
  if (opts.format == "structured") {
    out << planner::serialize_trace(trace);
  } else {
    out << format_trace(trace, opts.prompts);
  }
  return kExitOk;
}

void add_common(CLI::App& cmd, Options& opts) {
  cmd.add_option("--mode", opts.mode, "State mode")
      ->check(CLI::IsMember({"full", "no_summary", "no_objects", "no_states"}));
  cmd.add_option("--out", opts.out, "Output directory for traces, reports and cassettes");
  cmd.add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  cmd.add_option("--model", opts.model, "Model name (default: $LLMSTATE_MODEL or gpt-4-0613)");
  cmd.add_option("--plan-horizon", opts.plan_horizon, "Step budget shown to the policy")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--max-llm-calls", opts.max_llm_calls, "LLM call budget per episode")
      ->check(CLI::PositiveNumber);
  cmd.add_flag("--strict", opts.strict, "Exit 1 when a task fails");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-loop LLM task planner with an object-attribute state", "llmstate"};
  app.require_subcommand(1, 1);
  Options opts;

  auto* run = app.add_subcommand("run", "Run one task");
  run->add_option("--task", opts.task, "Task file (the .json suffix may be omitted)")->required();
  run->add_option("--backend", opts.backend, "LLM backend")
      ->check(CLI::IsMember({"live", "replay", "record"}));
  run->add_option("--cassette", opts.cassette, "Cassette file (default: the task's own)");
  add_common(*run, opts);

  auto* suite = app.add_subcommand("suite", "Run every task of a suite");
  suite->add_option("--suite", opts.suite, "Suite manifest")->required();
  suite->add_option("--backend", opts.backend, "LLM backend")
      ->check(CLI::IsMember({"live", "replay", "record"}));
  suite->add_option("--cassette", opts.cassette, "Directory of <task>.json cassettes");
  suite->add_option("--parallel", opts.parallel, "Episodes run concurrently")->check(CLI::PositiveNumber);
  suite->add_option("--trials", opts.trials, "Override trials per task")->check(CLI::PositiveNumber);
  add_common(*suite, opts);

  auto* record = app.add_subcommand("record", "Run one task live and record a cassette");
  record->add_option("--task", opts.task, "Task file")->required();
  record->add_option("--cassette", opts.cassette, "Cassette to write (default: <out>/cassettes/<task>.json)");
  add_common(*record, opts);

  auto* replay = app.add_subcommand("replay", "Run one task from a cassette, without network");
  replay->add_option("--task", opts.task, "Task file")->required();
  replay->add_option("--cassette", opts.cassette, "Cassette file (default: the task's own)");
  add_common(*replay, opts);

  auto* inspect = app.add_subcommand("inspect", "Pretty-print a trace file");
  inspect->add_option("trace", opts.trace, "Trace file")->required();
  inspect->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));
  inspect->add_flag("--prompts", opts.prompts, "Include full prompt text");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(opts, out);
    if (*suite) return cmd_suite(opts, out);
    if (*record) {
      opts.backend = "record";
      return cmd_run(opts, out);
    }
    if (*replay) {
      opts.backend = "replay";
      return cmd_run(opts, out);
    }
    if (*inspect) return cmd_inspect(opts, out);
  } catch (const std::exception& e) {
    // Usage mistakes, unreadable task/world/cassette files, missing
    // credentials. Episode-level LLM failures never reach here.
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace llmstate::cli
