#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "llmstate/dsl/parser.h"
#include "llmstate/state/llm_state.h"
#include "support/test_util.h"

namespace llmstate::state {
namespace {

using dsl::AddRelatedObjects;
using dsl::Directive;
using dsl::UpdateReasoning;
using dsl::UpdateState;
using llmstate::testing::data_dir;
using llmstate::testing::Gen;
using llmstate::testing::read_file;

const std::string kSummary =
    "The robot moved to lightswitch1 and successfully switched it off. Then it moved to bedroom1. It "
    "tried to switch off lightswitch1 again but failed because it's not in the same location with "
    "lightswitch1.";

LlmState listing_state() {
  LlmState s;
  s.register_key_objects(std::vector<std::string>{"lightswitch1", "bedroom1", "lightswitch2"});
  const auto parsed = dsl::parse_directives(read_file(data_dir() / "dsl_corpus/listing_estimator_response.txt"));
  s.apply_estimation(parsed.directives);
  return s;
}

std::string fixture_state_block() {
  const auto text = read_file(data_dir() / "prompts/fixtures/policy_prompt.txt");
  const std::string begin = "******** current state start ********\n";
  const std::string end = "\n******** current state end ********";
  const auto from = text.find(begin) + begin.size();
  return text.substr(from, text.find(end) - from);
}

TEST(RegisterKeyObjects, AppendsWithEmptyAttributes) {
  LlmState s;
  s.register_key_objects(std::vector<std::string>{"lightswitch1", "lightswitch2"});
  EXPECT_EQ(s.key_objects(), (std::vector<std::string>{"lightswitch1", "lightswitch2"}));
  ASSERT_NE(s.attributes("lightswitch1"), nullptr);
  EXPECT_TRUE(s.attributes("lightswitch1")->empty());
  EXPECT_EQ(s.attributes("lamp1"), nullptr);
}

TEST(RegisterKeyObjects, ReAddIsIdempotent) {
  LlmState s;
  s.apply_estimation(std::vector<Directive>{UpdateState{"lightswitch1", {"off"}}});
  const auto before = s;
  s.register_key_objects(std::vector<std::string>{"lightswitch1"});
  EXPECT_EQ(s, before);
}

TEST(RegisterKeyObjects, EmptyInputIsNoOp) {
  LlmState s;
  s.register_key_objects(std::vector<std::string>{});
  EXPECT_TRUE(s.empty());
}

TEST(ApplyEstimation, UpdateStateSplitsAttributes) {
  LlmState s;
  s.apply_estimation(std::vector<Directive>{UpdateState{"apple", dsl::split_attributes("on_table | in_hand")}});
  EXPECT_EQ(*s.attributes("apple"), (std::vector<std::string>{"on_table", "in_hand"}));
  EXPECT_EQ(s.key_objects(), std::vector<std::string>{"apple"});
}

TEST(ApplyEstimation, ReasoningIsStoredVerbatim) {
  LlmState s;
  s.apply_estimation(std::vector<Directive>{UpdateReasoning{kSummary}});
  EXPECT_EQ(s.summary(), kSummary);
  s.apply_estimation(std::vector<Directive>{UpdateReasoning{"replaced"}});
  EXPECT_EQ(s.summary(), "replaced");
}

TEST(ApplyEstimation, LaterUpdateWins) {
  LlmState s;
  s.apply_estimation(std::vector<Directive>{UpdateState{"lightswitch1", {"on"}}, UpdateState{"lightswitch1", {"off"}}});
  EXPECT_EQ(*s.attributes("lightswitch1"), std::vector<std::string>{"off"});
}

TEST(ApplyEstimation, ListingResponseGivesExpectedEntries) {
  const auto s = listing_state();
  EXPECT_EQ(*s.attributes("lightswitch1"), std::vector<std::string>{"off"});
  EXPECT_EQ(*s.attributes("bedroom1"), std::vector<std::string>{"robot_inside"});
  EXPECT_TRUE(s.attributes("lightswitch2")->empty());
  EXPECT_NE(s.summary().find("switched it off"), std::string::npos);
}

TEST(RenderState, FullModeMatchesListingBlock) {
  EXPECT_EQ(render_state(listing_state(), StateMode::kFull), fixture_state_block());
}

TEST(RenderState, NoObjectsModeIsOnlyTheReasoning) {
  EXPECT_EQ(render_state(listing_state(), StateMode::kNoObjects), "Reasoning: " + kSummary);
}

TEST(RenderState, NoSummaryModeIsOnlyTheObjects) {
  EXPECT_EQ(render_state(listing_state(), StateMode::kNoSummary),
            "lightswitch1: off\nbedroom1: robot_inside\nlightswitch2: []\n");
}

TEST(RenderState, EmptyStateRendersEmpty) {
  for (auto mode : {StateMode::kFull, StateMode::kNoSummary, StateMode::kNoObjects, StateMode::kNoStates}) {
    EXPECT_EQ(render_state(LlmState{}, mode), "");
  }
  EXPECT_EQ(render_state(listing_state(), StateMode::kNoStates), "");
}

TEST(StateMode, NamesRoundTrip) {
  for (auto mode : {StateMode::kFull, StateMode::kNoSummary, StateMode::kNoObjects, StateMode::kNoStates}) {
    EXPECT_EQ(state_mode_from_string(to_string(mode)), mode);
  }
  EXPECT_FALSE(state_mode_from_string("partial").has_value());
}

// Generators for directive sequences.

std::vector<std::string> random_attributes(Gen& gen) {
  static const std::vector<std::string> pool = {"on", "off", "open", "closed", "in_hand", "hot", "cold",
                                                "on_table", "in_kitchen1", "robot_inside"};
  std::vector<std::string> out;
  const int n = gen.range(0, 3);
  for (int i = 0; i < n; ++i) out.push_back(gen.pick(pool));
  return out;
}

std::vector<Directive> random_directives(Gen& gen, const std::vector<std::string>& names) {
  std::vector<Directive> out;
  const int n = gen.range(0, 8);
  for (int i = 0; i < n; ++i) {
    switch (gen.range(0, 2)) {
      case 0: out.push_back(AddRelatedObjects{gen.pick(names)}); break;
      case 1: out.push_back(UpdateState{gen.pick(names), random_attributes(gen)}); break;
      default: out.push_back(UpdateReasoning{gen.token("abc .'", 0, 30)}); break;
    }
  }
  return out;
}

// Independent fold: what the state should hold after a directive list.
struct ReferenceState {
  std::vector<std::string> keys;
  std::map<std::string, std::vector<std::string>> attrs;
  std::string summary;

  void add(const std::string& name) {
    if (std::find(keys.begin(), keys.end(), name) == keys.end()) {
      keys.push_back(name);
      attrs[name] = {};
    }
  }
  void apply(const Directive& d) {
    if (const auto* a = std::get_if<AddRelatedObjects>(&d)) {
      add(a->name);
    } else if (const auto* u = std::get_if<UpdateState>(&d)) {
      add(u->name);
      attrs[u->name] = u->attributes;
    } else {
      summary = std::get<UpdateReasoning>(d).text;
    }
  }
};

TEST(StateProperty, FoldMatchesReferenceAndKeysOnlyGrow) {
  const std::vector<std::string> names = {"apple1", "knife1", "fridge1", "kitchen1", "lightswitch1", "mug2"};
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Gen gen(seed);
    LlmState s;
    ReferenceState ref;
    std::vector<std::string> previous;
    const int rounds = gen.range(1, 6);
    for (int r = 0; r < rounds; ++r) {
      if (gen.coin()) {
        std::vector<std::string> batch;
        for (int i = gen.range(0, 3); i > 0; --i) batch.push_back(gen.pick(names));
        s.register_key_objects(batch);
        for (const auto& b : batch) ref.add(b);
      }
      const auto directives = random_directives(gen, names);
      s.apply_estimation(directives);
      for (const auto& d : directives) ref.apply(d);

      ASSERT_GE(s.key_objects().size(), previous.size());
      ASSERT_TRUE(std::equal(previous.begin(), previous.end(), s.key_objects().begin()));
      previous = s.key_objects();
    }
    ASSERT_EQ(s.key_objects(), ref.keys) << "seed " << seed;
    for (const auto& k : ref.keys) ASSERT_EQ(*s.attributes(k), ref.attrs[k]);
    ASSERT_EQ(s.summary(), ref.summary);
  }
}

TEST(StateProperty, RenderLineStructureAndModeAlgebra) {
  const std::vector<std::string> names = {"apple1", "knife1", "fridge1", "kitchen1"};
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Gen gen(seed);
    LlmState s;
    s.apply_estimation(random_directives(gen, names));
    const auto full = render_state(s, StateMode::kFull);
    const auto no_summary = render_state(s, StateMode::kNoSummary);

    // One line per key object, in insertion order.
    std::istringstream lines(no_summary);
    std::string line;
    std::size_t i = 0;
    while (std::getline(lines, line)) {
      ASSERT_LT(i, s.key_objects().size());
      ASSERT_EQ(line.rfind(s.key_objects()[i] + ": ", 0), 0u) << line;
      ++i;
    }
    ASSERT_EQ(i, s.key_objects().size());

    ASSERT_EQ(full.rfind(no_summary, 0), 0u);
    if (s.summary().empty()) {
      ASSERT_EQ(full, no_summary);
    }
    ASSERT_EQ(render_state(s, StateMode::kNoStates), "");

    // The trace form reads back to the same state.
    ASSERT_EQ(parse_state_text(full), s) << full;
  }
}

}  // namespace
}  // namespace llmstate::state
