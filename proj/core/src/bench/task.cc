#include "llmstate/bench/task.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "llmstate/errors.h"

namespace llmstate::bench {
namespace {

using Json = nlohmann::json;

[[noreturn]] void task_error(const std::string& what) { throw SchemaError("task: " + what); }

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(std::string("cannot open ") + what + ": " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& rel) {
  std::filesystem::path p(rel);
  if (p.is_relative()) p = base / p;
  return p.lexically_normal();
}

int positive_int(const Json& doc, const char* key, int fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    task_error(std::string("'") + key + "' must be a positive integer");
  }
  return v.get<int>();
}

}  // namespace

std::string_view to_string(Difficulty difficulty) {
  return difficulty == Difficulty::kSimple ? "simple" : "hard";
}

TaskSpec parse_task(std::string_view document, const std::filesystem::path& base_dir) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const Json::parse_error& e) {
    task_error(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) task_error("expected an object");
  for (const char* key : {"id", "instruction", "world"}) {
    if (!doc.contains(key) || !doc.at(key).is_string() || doc.at(key).get<std::string>().empty()) {
      task_error(std::string("missing string field '") + key + "'");
    }
  }
  if (!doc.contains("goal")) task_error("missing 'goal'");

  TaskSpec task;
  task.id = doc.at("id").get<std::string>();
  task.instruction = doc.at("instruction").get<std::string>();
  task.world_file = resolve(base_dir, doc.at("world").get<std::string>());
  task.goal = sim::parse_goal(doc.at("goal").dump());
  task.step_cap = positive_int(doc, "step_cap", 30);
  task.trials = positive_int(doc, "trials", 5);
  const auto difficulty = doc.value("difficulty", std::string("simple"));
  if (difficulty == "simple") {
    task.difficulty = Difficulty::kSimple;
  } else if (difficulty == "hard") {
    task.difficulty = Difficulty::kHard;
  } else {
    task_error("difficulty must be 'simple' or 'hard'");
  }
  if (task.difficulty == Difficulty::kSimple && task.step_cap > 30) {
    task_error("simple task '" + task.id + "' has step_cap above 30");
  }
  if (doc.contains("cassette")) {
    if (!doc.at("cassette").is_string()) task_error("'cassette' must be a string");
    task.cassette = resolve(base_dir, doc.at("cassette").get<std::string>());
  }
  return task;
}

std::filesystem::path resolve_task_path(const std::filesystem::path& path) {
  if (std::filesystem::exists(path) || path.extension() == ".json") return path;
  auto with_ext = path;
  with_ext += ".json";
  return with_ext;
}

TaskSpec load_task_file(const std::filesystem::path& path) {
  const auto resolved = std::filesystem::absolute(resolve_task_path(path));
  try {
    return parse_task(read_file(resolved, "task file"), resolved.parent_path());
  } catch (const SchemaError& e) {
    throw SchemaError(resolved.string() + ": " + e.what());
  }
}

Suite load_suite_file(const std::filesystem::path& path) {
  const auto resolved = std::filesystem::absolute(path);
  Json doc;
  try {
    doc = Json::parse(read_file(resolved, "suite file"));
  } catch (const Json::parse_error& e) {
    throw SchemaError(resolved.string() + ": not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("tasks") || !doc.at("tasks").is_array()) {
    throw SchemaError(resolved.string() + ": expected {\"tasks\": [...]}");
  }
  Suite suite;
  suite.name = doc.value("name", resolved.stem().string());
  for (const auto& entry : doc.at("tasks")) {
    if (!entry.is_string()) throw SchemaError(resolved.string() + ": task entries must be paths");
    suite.tasks.push_back(load_task_file(resolve(resolved.parent_path(), entry.get<std::string>())));
  }
  return suite;
}

}  // namespace llmstate::bench
