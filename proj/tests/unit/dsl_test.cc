#include <gtest/gtest.h>

#include <filesystem>

#include "json.hpp"
#include "llmstate/dsl/parser.h"
#include "support/test_util.h"

namespace llmstate::dsl {
namespace {

using llmstate::testing::data_dir;
using llmstate::testing::Gen;
using llmstate::testing::read_file;

std::vector<std::string> canonical(const std::vector<Directive>& directives) {
  std::vector<std::string> out;
  for (const auto& d : directives) out.push_back(to_string(d));
  return out;
}

std::vector<std::string> canonical(const std::vector<PrimitiveAction>& plan) {
  std::vector<std::string> out;
  for (const auto& a : plan) out.push_back(to_string(a));
  return out;
}

TEST(DslCorpus, EveryCaseParsesToItsExpectation) {
  int cases = 0;
  for (const auto& entry : std::filesystem::directory_iterator(data_dir() / "dsl_corpus")) {
    const auto name = entry.path().filename().string();
    if (!name.ends_with(".expected.json")) continue;
    const auto meta = nlohmann::json::parse(read_file(entry.path()));
    const auto input = read_file(data_dir() / "dsl_corpus" / meta.at("input").get<std::string>());
    const auto expected = meta.at("expected").get<std::vector<std::string>>();
    const auto skipped = meta.at("skipped_lines").get<std::size_t>();
    if (meta.at("parser") == "plan") {
      const auto parsed = parse_plan(input);
      EXPECT_EQ(canonical(parsed.actions), expected) << name;
      EXPECT_EQ(parsed.skipped_lines, skipped) << name;
    } else {
      const auto parsed = parse_directives(input);
      EXPECT_EQ(canonical(parsed.directives), expected) << name;
      EXPECT_EQ(parsed.skipped_lines, skipped) << name;
    }
    ++cases;
  }
  EXPECT_GE(cases, 8);
}

TEST(ParseDirectives, ListingAttentionResponse) {
  const auto parsed = parse_directives("add_related_objects(\"lightswitch1\")\nadd_related_objects(\"lightswitch2\")\n");
  EXPECT_EQ(parsed.directives, (std::vector<Directive>{AddRelatedObjects{"lightswitch1"},
                                                       AddRelatedObjects{"lightswitch2"}}));
}

TEST(ParseDirectives, ApostropheInsideReasoningIsKept) {
  const auto parsed = parse_directives(
      "update_reasoning(\"It tried again but failed because it's not in the same location with lightswitch1.\")");
  ASSERT_EQ(parsed.directives.size(), 1u);
  EXPECT_EQ(std::get<UpdateReasoning>(parsed.directives[0]).text,
            "It tried again but failed because it's not in the same location with lightswitch1.");
}

TEST(ParseDirectives, WrongArityAndProseAreSkipped) {
  const auto parsed = parse_directives("hello world\nupdate_state(apple)");
  EXPECT_TRUE(parsed.directives.empty());
  EXPECT_EQ(parsed.skipped_lines, 2u);
}

TEST(ParseDirectives, AliasesAndQuoting) {
  const auto parsed = parse_directives(
      "add_attribute('milk1', 'in_microwave1 | hot')\n"
      "  generate_summary('done') ;\n"
      "update_state( \"fridge1\" , \"open\" )\n"
      "update_state(\"x1\", \"\")\n"
      "add_related_objects(\"\")\n"
      "update_state(\"a1\", \"b\", \"c\")\n");
  EXPECT_EQ(parsed.directives,
            (std::vector<Directive>{UpdateState{"milk1", {"in_microwave1", "hot"}}, UpdateReasoning{"done"},
                                    UpdateState{"fridge1", {"open"}}, UpdateState{"x1", {}}}));
  EXPECT_EQ(parsed.skipped_lines, 2u);
}

TEST(ParsePlan, ListingPlanPrefix) {
  const auto parsed = parse_plan("1. move(lightswitch2)\n2. switchoff(lightswitch2)");
  EXPECT_EQ(parsed.actions, (std::vector<PrimitiveAction>{{ActionKind::kMove, {"lightswitch2"}},
                                                          {ActionKind::kSwitchOff, {"lightswitch2"}}}));
}

TEST(ParsePlan, TrailingParentheticalIsIgnored) {
  EXPECT_EQ(parse_plan("4. move(lightswitch3) (assuming there is a lightswitch3 in the kitchen)").actions,
            (std::vector<PrimitiveAction>{{ActionKind::kMove, {"lightswitch3"}}}));
  EXPECT_EQ(parse_plan("6. placein(cup1, cupboard1) (example only)").actions,
            (std::vector<PrimitiveAction>{{ActionKind::kPlaceIn, {"cup1", "cupboard1"}}}));
}

TEST(ParsePlan, UnknownKindIsDiscarded) {
  const auto parsed = parse_plan("1. jump(sofa1)");
  EXPECT_TRUE(parsed.actions.empty());
  EXPECT_EQ(parsed.skipped_lines, 1u);
}

TEST(ParsePlan, Variants) {
  const auto parsed = parse_plan(
      "Here is the plan.\n"
      "Low-level Action Plan:\n"
      "1) pickup('cup1')\n"
      "2. wait()\n"
      "3. wait(now)\n"
      "4. placeon(cup1)\n"
      "5. open(fridge1) # then look inside\n"
      "move(fridge1)\n"
      "  12.   close ( fridge1 )  \n");
  EXPECT_EQ(canonical(parsed.actions),
            (std::vector<std::string>{"pickup(cup1)", "wait()", "open(fridge1)", "close(fridge1)"}));
  EXPECT_EQ(parsed.skipped_lines, 4u);
}

TEST(RenderActionRecord, Formats) {
  EXPECT_EQ(render_action_record({{ActionKind::kMove, {"lightswitch1"}}, true}), "['move', 'lightswitch1'](Success)");
  EXPECT_EQ(render_action_record({{ActionKind::kPlaceIn, {"cutleryknife2", "kitchencabinet1"}}, false}),
            "['placein', 'cutleryknife2', 'kitchencabinet1'](Fail)");
  EXPECT_EQ(render_action_record({{ActionKind::kWait, {}}, true}), "['wait'](Success)");
}

TEST(RenderHistory, MatchesReferenceHistoryLine) {
  const std::vector<ActionRecord> history = {
      {{ActionKind::kMove, {"kitchen1"}}, true},          {{ActionKind::kMove, {"kitchentable1"}}, true},
      {{ActionKind::kPickup, {"item1"}}, false},          {{ActionKind::kMove, {"kitchentable1"}}, true},
      {{ActionKind::kPickup, {"cutleryknife2"}}, true},   {{ActionKind::kMove, {"kitchencabinet1"}}, true},
      {{ActionKind::kPlaceIn, {"cutleryknife2", "kitchencabinet1"}}, false},
  };
  EXPECT_EQ(render_history(history) + "\n", read_file(data_dir() / "dsl_corpus/summary_example_history.txt"));
  EXPECT_EQ(render_history({}), "[]");
}

TEST(PrimitiveAction, MakeChecksArity) {
  EXPECT_THROW(PrimitiveAction::make(ActionKind::kPlaceIn, {"a1"}), std::invalid_argument);
  EXPECT_NO_THROW(PrimitiveAction::make(ActionKind::kWait, {}));
  for (auto kind : kAllActionKinds) EXPECT_EQ(action_kind_from_string(to_string(kind)), kind);
}

// Fuzz: arbitrary bytes never break either parser.
TEST(DslFuzz, TenThousandRandomInputsNeverFail) {
  Gen gen(20240611);
  const std::vector<std::string> fragments = {
      "add_related_objects(", "update_state(", "update_reasoning(", "generate_summary(", "add_attribute(",
      "1. ", "12) ", "move(", "placein(", "wait()", "\"", "'", ",", ")", "(", "\\", "\n", " | ", "#",
      "Low-level Action Plan:\n"};
  for (int i = 0; i < 10000; ++i) {
    std::string input;
    if (i % 2 == 0) {
      input = gen.bytes(200);
    } else {
      for (int k = gen.range(0, 25); k > 0; --k) input += gen.coin(0.7) ? gen.pick(fragments) : gen.bytes(6);
    }
    ASSERT_NO_THROW({
      const auto d = parse_directives(input);
      const auto p = parse_plan(input);
      for (const auto& a : p.actions) ASSERT_EQ(a.args.size(), arity(a.kind));
      (void)d;
    }) << "input #" << i;
  }
}

PrimitiveAction random_action(Gen& gen) {
  const auto kind = kAllActionKinds[static_cast<std::size_t>(gen.range(0, 8))];
  std::vector<std::string> args;
  for (std::size_t i = 0; i < arity(kind); ++i) {
    args.push_back(gen.token("abcdefghijklmnopqrstuvwxyz", 1, 10) + std::to_string(gen.range(1, 9)));
  }
  return {kind, args};
}

TEST(DslProperty, RenderedPlansRoundTrip) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Gen gen(seed);
    std::vector<PrimitiveAction> plan;
    for (int i = gen.range(0, 25); i > 0; --i) plan.push_back(random_action(gen));
    const auto parsed = parse_plan(render_plan(plan));
    ASSERT_EQ(parsed.actions, plan);
    ASSERT_EQ(parsed.skipped_lines, 0u);
  }
}

TEST(DslProperty, ParsingIsLineLocalUnderConcatenation) {
  const std::vector<std::string> lines = {
      "1. move(fridge1)", "2. open(fridge1) (maybe)", "add_related_objects(\"milk1\")",
      "update_state(\"milk1\", \"cold | in_fridge1\")", "update_reasoning(\"it's cold\")", "nonsense",
      "3. fly(kitchen1)", "", "Low-level Action Plan:", "4. placein(milk1, microwave1)"};
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Gen gen(seed);
    auto text_of = [&] {
      std::string t;
      for (int i = gen.range(0, 6); i > 0; --i) t += gen.pick(lines) + "\n";
      return t;
    };
    const auto a = text_of();
    const auto b = text_of();
    const auto pa = parse_plan(a), pb = parse_plan(b), pab = parse_plan(a + b);
    auto joined = pa.actions;
    joined.insert(joined.end(), pb.actions.begin(), pb.actions.end());
    ASSERT_EQ(pab.actions, joined);
    ASSERT_EQ(pab.skipped_lines, pa.skipped_lines + pb.skipped_lines);

    const auto da = parse_directives(a), db = parse_directives(b), dab = parse_directives(a + b);
    auto djoined = da.directives;
    djoined.insert(djoined.end(), db.directives.begin(), db.directives.end());
    ASSERT_EQ(dab.directives, djoined);
  }
}

TEST(DslProperty, CanonicalDirectiveFormReparses) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Gen gen(seed);
    std::vector<Directive> directives;
    for (int i = gen.range(1, 6); i > 0; --i) {
      switch (gen.range(0, 2)) {
        case 0: directives.push_back(AddRelatedObjects{gen.token(llmstate::testing::kIdAlphabet, 1, 12)}); break;
        case 1: {
          std::vector<std::string> attrs;
          for (int k = gen.range(0, 3); k > 0; --k) attrs.push_back(gen.token("abcdefgh_", 1, 8));
          directives.push_back(UpdateState{gen.token(llmstate::testing::kIdAlphabet, 1, 12), attrs});
          break;
        }
        default: directives.push_back(UpdateReasoning{gen.token("abc XYZ.,'\"", 0, 40)});
      }
    }
    std::string text;
    for (const auto& d : directives) text += to_string(d) + "\n";
    ASSERT_EQ(parse_directives(text).directives, directives) << text;
  }
}

}  // namespace
}  // namespace llmstate::dsl
