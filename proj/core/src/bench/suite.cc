#include "llmstate/bench/suite.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"

namespace llmstate::bench {
namespace {

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

planner::EpisodeResult run_one(const TaskSpec& task, int trial, const BackendFactory& backends,
                               const planner::PlannerConfig& config) {
  try {
    auto backend = backends(task, trial);
    if (!backend) throw std::runtime_error("backend factory returned null");
    return planner::run_episode(task, *backend, config);
  } catch (const std::exception& e) {
    planner::EpisodeResult failed;
    failed.task_id = task.id;
    failed.mode = config.state_mode;
    failed.step_cap = task.step_cap;
    failed.outcome = planner::Outcome::kBackendError;
    failed.error = e.what();
    return failed;
  }
}

std::optional<DifficultySummary> summarize(const std::vector<TaskReport>& tasks, Difficulty d) {
  DifficultySummary s;
  for (const auto& t : tasks) {
    if (t.difficulty != d) continue;
    ++s.tasks;
    s.mean_success_rate += t.metrics.success_rate;
    s.mean_average_steps += t.metrics.average_steps;
  }
  if (s.tasks == 0) return std::nullopt;
  s.mean_success_rate /= s.tasks;
  s.mean_average_steps /= s.tasks;
  return s;
}

}  // namespace

SuiteReport run_suite(const std::vector<TaskSpec>& tasks, const BackendFactory& backends,
                      const SuiteOptions& options) {
  options.config.validate();
  struct Job {
    std::size_t task;
    int trial;
  };
  std::vector<Job> jobs;
  std::vector<std::vector<planner::EpisodeResult>> results(tasks.size());
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    results[t].resize(static_cast<std::size_t>(tasks[t].trials));
    for (int k = 0; k < tasks[t].trials; ++k) jobs.push_back({t, k});
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr write_error;
  auto worker = [&] {
    for (auto i = next++; i < jobs.size(); i = next++) {
      const auto& job = jobs[i];
      const auto& task = tasks[job.task];
      auto result = run_one(task, job.trial, backends, options.config);
      if (!options.out_dir.empty()) {
        try {
          write_file(options.out_dir / "traces" /
                         (task.id + ".trial" + std::to_string(job.trial) + ".json"),
                     planner::serialize_trace(result));
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!write_error) write_error = std::current_exception();
        }
      }
      // Keep only what the report needs.
      result.trace.clear();
      results[job.task][static_cast<std::size_t>(job.trial)] = std::move(result);
    }
  };
  const int workers = std::clamp(options.parallelism, 1, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (write_error) std::rethrow_exception(write_error);

  SuiteReport report;
  report.suite = options.suite_name;
  report.mode = options.config.state_mode;
  report.backend = options.backend_label;
  report.model = options.config.model;
  report.plan_horizon_budget = options.config.plan_horizon_budget;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    TaskReport tr;
    tr.id = tasks[t].id;
    tr.instruction = tasks[t].instruction;
    tr.difficulty = tasks[t].difficulty;
    tr.step_cap = tasks[t].step_cap;
    tr.metrics = compute_metrics(results[t], tasks[t].step_cap);
    for (std::size_t k = 0; k < results[t].size(); ++k) {
      const auto& r = results[t][k];
      tr.episodes.push_back({static_cast<int>(k), r.success, r.steps_executed, r.outcome, r.error});
    }
    report.tasks.push_back(std::move(tr));
  }
  report.simple = summarize(report.tasks, Difficulty::kSimple);
  report.hard = summarize(report.tasks, Difficulty::kHard);

  if (!options.out_dir.empty()) {
    write_file(options.out_dir / "report.txt", render_report_text(report));
    write_file(options.out_dir / "report.json", render_report_json(report));
  }
  return report;
}

std::string render_report_text(const SuiteReport& report) {
  std::string out;
  out += "suite: " + report.suite + "\n";
  out += "mode: " + std::string(state::to_string(report.mode)) + "\n";
  out += "backend: " + report.backend + "\n";
  out += "model: " + report.model + "\n";
  out += "plan horizon: " + std::to_string(report.plan_horizon_budget) + "\n\n";

  std::size_t width = 4;
  for (const auto& t : report.tasks) width = std::max(width, t.id.size());
  auto pad = [](std::string s, std::size_t n) {
    if (s.size() < n) s.append(n - s.size(), ' ');
    return s;
  };
  out += pad("task", width) + "  " + pad("level", 6) + "  " + pad("cap", 4) + "  " + pad("SR", 6) +
         "  AS\n";
  for (const auto& t : report.tasks) {
    out += pad(t.id, width) + "  " + pad(std::string(to_string(t.difficulty)), 6) + "  " +
           pad(std::to_string(t.step_cap), 4) + "  " +
           pad(std::to_string(t.metrics.successes) + "/" + std::to_string(t.metrics.trials), 6) +
           "  " + fixed(t.metrics.average_steps, 1) + "\n";
  }
  out += "\n";
  for (const auto& [label, summary] : {std::pair{"simple", report.simple}, std::pair{"hard", report.hard}}) {
    if (!summary) continue;
    out += std::string(label) + ": tasks=" + std::to_string(summary->tasks) +
           " SR=" + fixed(summary->mean_success_rate * 100.0, 2) + "%" +
           " AS=" + fixed(summary->mean_average_steps, 2) + "\n";
  }
  return out;
}

std::string render_report_json(const SuiteReport& report) {
  nlohmann::ordered_json doc;
  doc["format"] = "llmstate-report";
  doc["version"] = 1;
  doc["suite"] = report.suite;
  doc["mode"] = state::to_string(report.mode);
  doc["backend"] = report.backend;
  doc["model"] = report.model;
  doc["plan_horizon_budget"] = report.plan_horizon_budget;
  doc["tasks"] = nlohmann::ordered_json::array();
  for (const auto& t : report.tasks) {
    nlohmann::ordered_json jt;
    jt["id"] = t.id;
    jt["instruction"] = t.instruction;
    jt["difficulty"] = to_string(t.difficulty);
    jt["step_cap"] = t.step_cap;
    jt["trials"] = t.metrics.trials;
    jt["successes"] = t.metrics.successes;
    jt["success_rate"] = t.metrics.success_rate;
    jt["average_steps"] = t.metrics.average_steps;
    jt["episodes"] = nlohmann::ordered_json::array();
    for (const auto& e : t.episodes) {
      nlohmann::ordered_json je;
      je["trial"] = e.trial;
      je["success"] = e.success;
      je["steps_executed"] = e.steps_executed;
      je["outcome"] = planner::to_string(e.outcome);
      if (!e.error.empty()) je["error"] = e.error;
      jt["episodes"].push_back(std::move(je));
    }
    doc["tasks"].push_back(std::move(jt));
  }
  for (const auto& [label, summary] : {std::pair{"simple", report.simple}, std::pair{"hard", report.hard}}) {
    if (!summary) continue;
    doc[label] = {{"tasks", summary->tasks},
                  {"mean_success_rate", summary->mean_success_rate},
                  {"mean_average_steps", summary->mean_average_steps}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace llmstate::bench
