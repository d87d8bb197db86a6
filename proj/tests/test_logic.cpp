#include <catch_amalgamated.hpp>

#include <set>

#include "corpus.hpp"
#include "mia/logic.hpp"

using namespace mia;

namespace {

Model tiny_model() {
  // W = {w}, R = S = {(w,w,w)}, v(p0) = {w}
  return Model(corpus::single_reflexive_frame(), {1});
}

/// Random core-primitive formula trees for round-trip properties.
const Formula* random_formula(std::mt19937_64& rng, int depth) {
  int pick = depth == 0 ? static_cast<int>(rng() % 2)
                        : static_cast<int>(rng() % 6);
  switch (pick) {
    case 0:
      return f_top();
    case 1:
      return f_var(static_cast<int>(rng() % 3));
    case 2:
      return f_not(random_formula(rng, depth - 1));
    case 3:
      return f_and(random_formula(rng, depth - 1),
                   random_formula(rng, depth - 1));
    case 4:
      return f_dia(random_formula(rng, depth - 1),
                   random_formula(rng, depth - 1));
    default:
      return f_wbox(random_formula(rng, depth - 1),
                    random_formula(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("parsing the grammar") {
  CHECK(parse_formula("dia(p0, p1)") == f_dia(f_var(0), f_var(1)));
  CHECK(parse_formula("diaU(p0, T)") ==
        f_or(f_dia(f_var(0), f_top()), f_not(f_wbox(f_var(0), f_top()))));
  CHECK(parse_formula("~wbox(F, p0)") ==
        f_not(f_wbox(f_not(f_top()), f_var(0))));
  CHECK(parse_formula("box(p0, p1)") ==
        f_not(f_dia(f_not(f_var(0)), f_not(f_var(1)))));
  CHECK(parse_formula("wdia(p0, p1)") ==
        f_not(f_wbox(f_not(f_var(0)), f_not(f_var(1)))));
  CHECK(parse_formula("boxU(p0, p1)") == f_boxU(f_var(0), f_var(1)));
  CHECK(parse_formula(" p12 ") == f_var(12));
}

TEST_CASE("precedence and associativity") {
  // ~ binds tighter than &, & than |, | than ->, -> than <->
  CHECK(parse_formula("~p0 & p1") == f_and(f_not(f_var(0)), f_var(1)));
  CHECK(parse_formula("p0 | p1 & p2") ==
        f_or(f_var(0), f_and(f_var(1), f_var(2))));
  CHECK(parse_formula("p0 -> p1 -> p2") ==
        f_imp(f_var(0), f_imp(f_var(1), f_var(2))));
  CHECK(parse_formula("p0 & p1 -> p2") ==
        f_imp(f_and(f_var(0), f_var(1)), f_var(2)));
  CHECK(parse_formula("p0 <-> p1 -> p2") ==
        f_iff(f_var(0), f_imp(f_var(1), f_var(2))));
  CHECK(parse_formula("(p0 | p1) & p2") ==
        f_and(f_or(f_var(0), f_var(1)), f_var(2)));
}

TEST_CASE("syntax errors carry a position") {
  for (const char* bad : {"", "dia(p0)", "p0 &", "qux", "dia(p0, p1",
                          "p0 p1", "~", "pX"}) {
    try {
      parse_formula(bad);
      FAIL("expected a syntax error for: " << bad);
    } catch (const UsageError& e) {
      CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
  }
}

TEST_CASE("render and parse round trips") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 300; ++rep) {
    const Formula* f = random_formula(rng, 4);
    CHECK(parse_formula(render(f)) == f);
  }
  // render-of-parse normalizes derived connectives away
  CHECK(render(parse_formula("box(p0,p1)")) == "~dia(~p0, ~p1)");
  CHECK(render(parse_formula("F")) == "~T");
}

TEST_CASE("evaluation on the one-world model") {
  Model M = tiny_model();
  CHECK(eval_formula(M, parse_formula("dia(p0, p0)")) == 1u);
  CHECK(eval_formula(M, parse_formula("wbox(F, p0)")) == 1u);  // vacuous
  CHECK(eval_formula(M, parse_formula("~p0")) == 0u);
  CHECK_THROWS_AS(eval_formula(M, parse_formula("p7")), UsageError);
}

TEST_CASE("diaU is a global existential on wMIA models") {
  std::mt19937_64 rng(32);
  const Formula* dU = parse_formula("diaU(p0, T)");
  const Formula* dU2 = parse_formula("diaU(p0, p1)");
  for (int rep = 0; rep < 60; ++rep) {
    Model M = corpus::random_wmia_model(3, 2, rng);
    std::uint64_t ext = eval_formula(M, dU);
    CHECK(ext == (M.valuation[0] ? M.universe() : 0));
    // the two-argument form needs both extensions nonempty
    std::uint64_t ext2 = eval_formula(M, dU2);
    CHECK(ext2 ==
          ((M.valuation[0] && M.valuation[1]) ? M.universe() : 0));
  }
}

TEST_CASE("boxU is a global universal on wMIA models") {
  std::mt19937_64 rng(33);
  const Formula* bU = parse_formula("boxU(p0, F)");
  const Formula* bU2 = parse_formula("boxU(p0, p1)");
  for (int rep = 0; rep < 60; ++rep) {
    Model M = corpus::random_wmia_model(3, 2, rng);
    CHECK(eval_formula(M, bU) ==
          (M.valuation[0] == M.universe() ? M.universe() : 0));
    bool either_total = M.valuation[0] == M.universe() ||
                        M.valuation[1] == M.universe();
    CHECK(eval_formula(M, bU2) == (either_total ? M.universe() : 0));
  }
}

TEST_CASE("duality of the modal operators") {
  std::mt19937_64 rng(34);
  for (int rep = 0; rep < 30; ++rep) {
    Model M = corpus::random_wmia_model(3, 2, rng);
    std::uint64_t box = eval_formula(M, parse_formula("box(p0, p1)"));
    std::uint64_t dia_n = eval_formula(M, parse_formula("dia(~p0, ~p1)"));
    CHECK(box == (M.universe() & ~dia_n));
    std::uint64_t wdia = eval_formula(M, parse_formula("wdia(p0, p1)"));
    std::uint64_t wbox_n = eval_formula(M, parse_formula("wbox(~p0, ~p1)"));
    CHECK(wdia == (M.universe() & ~wbox_n));
  }
}

TEST_CASE("validity in frames") {
  std::mt19937_64 rng(35);
  const Formula* m1 = parse_formula("~dia(F, p0)");
  const Formula* tu = parse_formula("p0 -> diaU(p0, T)");
  for (int rep = 0; rep < 20; ++rep) {
    TernaryFrame F = corpus::random_wmia_frame(1 + rep % 2, rng);
    CHECK(valid_in_frame(F, m1, 1).valid);
    CHECK(valid_in_frame(F, tu, 1).valid);
  }
}

TEST_CASE("TU fails on a non-wMIA frame (bypass)") {
  // W = {w}, R = empty, S = {(w,w,w)}
  TernaryFrame F = TernaryFrame::make({"w"}, {}, {{0, 0, 0}});
  const Formula* tu = parse_formula("p0 -> diaU(p0, T)");
  CHECK_THROWS_AS(valid_in_frame(F, tu, 1), UsageError);
  ValidityResult r = valid_in_frame(F, tu, 1, kDefaultBudget, false);
  REQUIRE_FALSE(r.valid);
  CHECK(r.valuation == std::vector<std::uint64_t>{1});  // v(p0) = {w}
  CHECK(r.world == 0);
  // M1 needs no frame condition at all
  const Formula* m1 = parse_formula("~dia(F, p0)");
  CHECK(valid_in_frame(F, m1, 1, kDefaultBudget, false).valid);
}

TEST_CASE("validity refuses oversized valuation spaces") {
  TernaryFrame F = corpus::worked_frame();
  CHECK_THROWS_AS(valid_in_frame(F, parse_formula("p0"), 3, /*budget=*/16),
                  ResourceError);
}

TEST_CASE("formula pools are deterministic") {
  auto p0 = formula_pool(1, 0);
  CHECK(p0.size() == 4);  // T, F, p0, ~p0
  auto p1 = formula_pool(2, 1);
  CHECK(p1.size() == 150);  // 6 literals + 4 * 36 modal combinations
  auto again = formula_pool(2, 1);
  CHECK(p1 == again);
  std::set<const Formula*> uniq(p1.begin(), p1.end());
  CHECK(uniq.size() == p1.size());
  CHECK_THROWS_AS(formula_pool(2, 2, /*budget=*/1000), ResourceError);
}

TEST_CASE("axiom instances") {
  auto m3 = axiom_instances("M3", 1, 0);
  bool found = false;
  for (const Formula* f : m3)
    if (f == f_wbox(f_bot(), f_var(0))) found = true;
  CHECK(found);
  CHECK(m3.size() == 2 * formula_pool(1, 0).size());

  auto cu = axiom_instances("CU", 2, 0);
  const Formula* want =
      f_imp(f_and(f_diaU(f_var(0), f_top()), f_diaU(f_var(1), f_top())),
            f_diaU(f_var(0), f_var(1)));
  CHECK(std::find(cu.begin(), cu.end(), want) != cu.end());

  auto su = axiom_instances("SU", 1, 0);
  const Formula* refl = f_imp(f_diaU(f_var(0), f_var(0)),
                              f_diaU(f_var(0), f_var(0)));
  CHECK(std::find(su.begin(), su.end(), refl) != su.end());

  CHECK_THROWS_AS(axiom_instances("M9", 1, 0), UsageError);
}

TEST_CASE("soundness report on single frames") {
  SoundnessReport ok = soundness_report(corpus::single_reflexive_frame(), 1, 2);
  CHECK(ok.all_valid);
  CHECK(ok.instances_covered > 0);

  TernaryFrame bad = TernaryFrame::make({"w"}, {}, {{0, 0, 0}});
  CHECK_THROWS_AS(soundness_report(bad, 1, 2), UsageError);
  SoundnessReport rep = soundness_report(bad, 1, 2, kDefaultBudget, false);
  REQUIRE_FALSE(rep.all_valid);
  bool cu_or_tu = false;
  for (const auto& f : rep.failures)
    if (f.schema == "CU" || f.schema == "TU") cu_or_tu = true;
  CHECK(cu_or_tu);
}

TEST_CASE("quotient soundness agrees with literal instance enumeration") {
  // small pool: depth 0, two variables; frames of one and two worlds,
  // including non-wMIA ones (bypass)
  std::vector<TernaryFrame> frames;
  for (std::uint64_t r = 0; r < 2; ++r)
    for (std::uint64_t s = 0; s < 2; ++s)
      frames.push_back(frame_from_index(1, r, s));
  std::mt19937_64 rng(36);
  for (int rep = 0; rep < 6; ++rep)
    frames.push_back(frame_from_index(2, rng() & 0xff, rng() & 0xff));

  for (const TernaryFrame& F : frames) {
    SoundnessReport fast = soundness_report(F, 0, 2, kDefaultBudget, false);
    std::set<std::string> failing_fast;
    for (const auto& f : fast.failures) failing_fast.insert(f.schema);

    std::set<std::string> failing_slow;
    for (const SchemaInfo& s : axiom_schemas()) {
      bool all = true;
      for (const Formula* inst : axiom_instances(s.id, 2, 0))
        if (!valid_in_frame(F, inst, 2, kDefaultBudget, false).valid)
          all = false;
      if (!all) failing_slow.insert(s.id);
    }
    REQUIRE(failing_fast == failing_slow);
  }
}

TEST_CASE("soundness failures re-evaluate as counterexamples") {
  TernaryFrame bad = TernaryFrame::make({"w"}, {}, {{0, 0, 0}});
  SoundnessReport rep = soundness_report(bad, 0, 1, kDefaultBudget, false);
  REQUIRE_FALSE(rep.all_valid);
  for (const auto& f : rep.failures) {
    Model M(bad, f.valuation, false);
    const Formula* inst = parse_formula(f.instance);
    std::uint64_t ext = eval_formula(M, inst);
    CHECK(((ext >> f.world) & 1) == 0);
  }
}

TEST_CASE("underline model construction") {
  Model M = tiny_model();
  Model U = underline_model(M);
  CHECK(U.frame.world_count() == 2);
  CHECK(U.frame.special);
  CHECK(U.valuation[0] == 0b11u);  // {w, w'}
  CHECK(eval_formula(U, parse_formula("dia(p0, p0)")) == 0b11u);

  Model empty(corpus::single_reflexive_frame(), {0});
  CHECK(underline_model(empty).valuation[0] == 0u);
}

TEST_CASE("underline valuation is the union of the two copies") {
  // the induction invariant behind the equivalence theorem
  std::mt19937_64 rng(37);
  auto pool = formula_pool(2, 2);
  for (int rep = 0; rep < 5; ++rep) {
    Model M = corpus::random_wmia_model(2, 2, rng);
    Model U = underline_model(M);
    int n = M.frame.world_count();
    EvalCache cm(M), cu(U);
    for (const Formula* f : pool) {
      std::uint64_t v = cm.eval(f);
      REQUIRE(cu.eval(f) == (v | (v << n)));
    }
  }
}

TEST_CASE("modal equivalence") {
  Model M = tiny_model();
  auto pool = formula_pool(1, 1);
  CHECK(modal_equiv(M, M, pool).equivalent);
  CHECK(modal_equiv(M, underline_model(M), pool).equivalent);

  Model flipped(corpus::single_reflexive_frame(), {0});
  EquivReport r = modal_equiv(M, flipped, pool);
  REQUIRE_FALSE(r.equivalent);
  CHECK(r.witness != nullptr);
}
