#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "llmstate/bench/task.h"
#include "llmstate/dsl/parser.h"
#include "llmstate/llm/cassette.h"
#include "llmstate/llm/digest.h"
#include "llmstate/planner/planner.h"
#include "llmstate/prompts/prompts.h"
#include "llmstate/sim/simulator.h"
#include "llmstate/sim/world_io.h"

namespace {

const std::string kData = LLMSTATE_DATA_DIR;

std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void BM_ParsePlan(benchmark::State& state) {
  const auto text = read(kData + "/dsl_corpus/listing_policy_response.txt");
  for (auto _ : state) benchmark::DoNotOptimize(llmstate::dsl::parse_plan(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParsePlan);

void BM_ParseDirectives(benchmark::State& state) {
  const auto text = read(kData + "/dsl_corpus/listing_estimator_response.txt");
  for (auto _ : state) benchmark::DoNotOptimize(llmstate::dsl::parse_directives(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseDirectives);

void BM_Observe(benchmark::State& state) {
  const auto world = llmstate::sim::load_world_file(kData + "/worlds/lights_scenario.json");
  for (auto _ : state) benchmark::DoNotOptimize(llmstate::sim::observe(world));
}
BENCHMARK(BM_Observe);

void BM_ExecuteMove(benchmark::State& state) {
  auto world = llmstate::sim::load_world_file(kData + "/worlds/house1.json");
  const llmstate::dsl::PrimitiveAction a{llmstate::dsl::ActionKind::kMove, {"desk1"}};
  const llmstate::dsl::PrimitiveAction b{llmstate::dsl::ActionKind::kMove, {"bathroomcounter1"}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(llmstate::sim::execute_action(world, a));
    benchmark::DoNotOptimize(llmstate::sim::execute_action(world, b));
  }
}
BENCHMARK(BM_ExecuteMove);

void BM_PolicyPrompt(benchmark::State& state) {
  const auto world = llmstate::sim::load_world_file(kData + "/worlds/lights_scenario.json");
  const auto observation = llmstate::sim::observe(world);
  std::vector<llmstate::dsl::ActionRecord> history(
      static_cast<std::size_t>(state.range(0)),
      {{llmstate::dsl::ActionKind::kMove, {"lightswitch1"}}, true});
  for (auto _ : state) {
    benchmark::DoNotOptimize(llmstate::prompts::build_policy_prompt(
        "switch off all the lights in the house", history, observation, "lightswitch1: off\n", 20,
        llmstate::state::StateMode::kFull));
  }
}
BENCHMARK(BM_PolicyPrompt)->Arg(0)->Arg(16)->Arg(128);

void BM_Digest(benchmark::State& state) {
  const auto text = read(kData + "/prompts/fixtures/policy_prompt.txt");
  const auto request = llmstate::llm::make_request("", text, "gpt-4-0613", 0.0, 1024);
  for (auto _ : state) benchmark::DoNotOptimize(llmstate::llm::canonical_digest(request));
}
BENCHMARK(BM_Digest);

void BM_ReplayEpisode(benchmark::State& state) {
  const auto task = llmstate::bench::load_task_file(kData + "/tasks/switch_off_all_lights.json");
  const auto cassette = llmstate::llm::Cassette::load(task.cassette);
  for (auto _ : state) {
    llmstate::llm::CassetteBackend backend(cassette);
    benchmark::DoNotOptimize(llmstate::planner::run_episode(task, backend, {}));
  }
}
BENCHMARK(BM_ReplayEpisode)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
