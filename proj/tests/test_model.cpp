#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "lmst/corpus.hpp"
#include "lmst/model.hpp"
#include "oracles.hpp"

using namespace lmst;

namespace {

Formula norm(const std::string& text) { return normalize(parse(text)); }

std::string root() {
  const char* r = std::getenv("LMST_ROOT");
  return r ? r : ".";
}

Model swap2() { return Model::canonical(2, Variant::NoEmpty, LabelSpec::swap_atoms()); }
Model id2() { return Model::canonical(2, Variant::NoEmpty); }

}  // namespace

TEST_CASE("canonical model construction") {
  CHECK(id2().domain() == std::vector<Mask>{1, 2, 3});
  CHECK(Model::canonical(3, Variant::WithEmpty).domain().size() == 8);
  CHECK(Model::canonical(1, Variant::WithEmpty).domain() == std::vector<Mask>{0, 1});

  // axiom 8 rules out the one-element model
  CHECK_THROWS_AS(Model::canonical(1, Variant::NoEmpty), semantic_error);
  CHECK_THROWS_AS(Model::canonical(0, Variant::WithEmpty), semantic_error);

  // labels must be injective and stay inside the domain
  CHECK_THROWS_AS(Model::canonical(2, Variant::NoEmpty,
                                   LabelSpec::from_table({{1, 3}, {2, 3}, {3, 1}})),
                  semantic_error);
  CHECK_THROWS_AS(Model::canonical(2, Variant::NoEmpty,
                                   LabelSpec::from_table({{1, 0}, {2, 2}, {3, 3}})),
                  semantic_error);
  CHECK_THROWS_AS(Model::canonical(2, Variant::NoEmpty, LabelSpec::from_table({{1, 1}})),
                  semantic_error);

  Model s = swap2();
  CHECK(s.label(1) == 2);
  CHECK(s.label(2) == 1);
  CHECK(s.label(3) == 3);
}

TEST_CASE("model json round-trip and validation") {
  Model m = swap2();
  Model back = Model::from_json(m.to_json());
  CHECK(back.domain() == m.domain());
  for (Mask d : m.domain()) CHECK(back.label(d) == m.label(d));

  json bad = m.to_json();
  bad["label"][0][1] = 1;  // now 1 and 2 share the label 1
  CHECK_THROWS_AS(Model::from_json(bad), semantic_error);
  CHECK_THROWS_AS(Model::from_json(json{{"k", 2}}), parse_error);
  CHECK_THROWS_AS(Model::from_json(json{{"k", 2}, {"variant", "nope"}, {"label", json::array()}}),
                  semantic_error);
}

TEST_CASE("eval: axioms as formulas") {
  Model m = id2();
  CHECK(eval(m, norm("all x. (single(x) -> x in x)"), {}));
  CHECK(eval(m, norm("ex x. ex y. ~(x = y)"), {}));
  CHECK(eval(m, norm("all x. ex w. w in x"), {}));
  CHECK(eval(m, norm("all x. all y. ((all w. (w in x <-> w in y)) -> x = y)"), {}));
  // members are singletons
  CHECK(eval(m, norm("all x. all y. (x in y -> single(x))"), {}));

  Model we = Model::canonical(2, Variant::WithEmpty);
  CHECK_FALSE(eval(we, norm("all x. ex w. w in x"), {}));  // the empty set has no members

  CHECK(eval(m, parse("x in y"), {{"x", 1}, {"y", 3}}));
  CHECK_FALSE(eval(m, parse("x in y"), {{"x", 3}, {"y", 3}}));  // not a singleton
  CHECK(eval(swap2(), parse("L x = y"), {{"x", 1}, {"y", 2}}));
}

TEST_CASE("eval: error paths") {
  Model m = id2();
  CHECK_THROWS_AS(eval(m, parse("x in y"), {{"x", 1}}), semantic_error);
  CHECK_THROWS_AS(eval(m, parse("x sub y"), {{"x", 1}, {"y", 1}}), semantic_error);
  CHECK_THROWS_AS(eval(m, parse("x = x"), {{"x", 0}}), semantic_error);  // 0 not in no-empty domain
}

TEST_CASE("eval respects alpha-equivalence") {
  Model m = swap2();
  std::vector<std::pair<std::string, std::string>> pairs = {
      {"all x. x in y", "all u. u in y"},
      {"ex u. (u in z & all v. (v in z -> v = u))", "ex a. (a in z & all b. (b in z -> b = a))"},
  };
  for (const auto& [a, b] : pairs) {
    Formula fa = parse(a), fb = parse(b);
    REQUIRE(alpha_eq(fa, fb));
    for (const Valuation& v : oracle::all_valuations(m, free_vars(fa)))
      CHECK(eval(m, fa, v) == eval(m, fb, v));
  }
}

TEST_CASE("ext: spec values") {
  // identity labels make L z sub z hold everywhere: no qualifiers
  CHECK_FALSE(ext(id2(), norm("~(L z sub z)"), "z").has_value());
  // swap-atoms: {a} and {b} qualify; the union of their labels is {a,b}
  auto x = ext(swap2(), norm("~(L z sub z)"), "z");
  REQUIRE(x.has_value());
  CHECK(*x == 3);
  // with-empty, identity: every element satisfies z = z, labels cover everything
  Model we = Model::canonical(2, Variant::WithEmpty);
  auto full = ext(we, parse("z = z"), "z");
  REQUIRE(full.has_value());
  CHECK(*full == we.full_mask());
  // never-satisfied formula: absent without the empty set, empty with it
  CHECK_FALSE(ext(id2(), parse("~(z = z)"), "z").has_value());
  auto empty = ext(we, parse("~(z = z)"), "z");
  REQUIRE(empty.has_value());
  CHECK(*empty == 0);
  // parameters must be bound
  CHECK_THROWS_AS(ext(id2(), parse("z = p"), "z"), semantic_error);
  CHECK(ext(id2(), parse("z = p"), "z", {{"p", 3}}).has_value());
}

TEST_CASE("ext monotonicity: pointwise implication gives mask inclusion") {
  std::vector<std::string> preds = {"single(z)", "z in z", "~(z in z)", "L z sub z",
                                    "~(L z sub z)", "z in L z", "ex w. w in L z"};
  for (const Model& m : oracle::all_label_models(2, Variant::NoEmpty)) {
    for (const std::string& pa : preds)
      for (const std::string& pb : preds) {
        Formula a = norm(pa), b = norm(pb);
        bool implies = true;
        for (Mask d : m.domain())
          if (eval(m, a, {{"z", d}}) && !eval(m, b, {{"z", d}})) {
            implies = false;
            break;
          }
        if (!implies) continue;
        auto ea = ext(m, a, "z"), eb = ext(m, b, "z");
        if (!ea) continue;  // absent is contained in anything
        REQUIRE(eb.has_value());
        CHECK((*ea & *eb) == *ea);
      }
  }
}

TEST_CASE("check_axioms: canonical models satisfy the axioms") {
  for (int k : {2, 3})
    for (Variant v : {Variant::NoEmpty, Variant::WithEmpty}) {
      AxiomReport rep = check_axioms(Model::canonical(k, v));
      CHECK(rep.all_hold());
      CHECK(rep.axioms.at("1").holds);
      CHECK(rep.axioms.at("2").applicable == (v == Variant::NoEmpty));
      CHECK(rep.axioms.at("3").holds);
      CHECK(rep.axioms.at("4").holds);
      CHECK(rep.axioms.at("6").holds);
      CHECK(rep.axioms.at("8").holds);
    }
  // two elements are enough for axiom 8
  CHECK(check_axioms(Model::canonical(1, Variant::WithEmpty)).axioms.at("8").holds);
}

TEST_CASE("check_axioms: a non-injective label is caught with a witness") {
  // bypass validation: both 1 and 2 get label 3
  Model broken = Model::unchecked(2, Variant::NoEmpty, {0, 3, 3, 1});
  AxiomReport rep = check_axioms(broken);
  CHECK_FALSE(rep.axioms.at("6").holds);
  CHECK(rep.axioms.at("6").witness["label"] == 3);
  CHECK_FALSE(rep.all_hold());
  // a one-element domain fails axiom 8
  Model tiny = Model::unchecked(1, Variant::NoEmpty, {0, 1});
  CHECK_FALSE(check_axioms(tiny).axioms.at("8").holds);
}

TEST_CASE("scheme 5: sets of satisfying singletons exist") {
  auto corpus = corpus_formulas(load_corpus_file(root() + "/corpora/scheme5.lmst"));
  REQUIRE(corpus.size() == 20);
  for (int k : {2, 3})
    for (Variant v : {Variant::NoEmpty, Variant::WithEmpty}) {
      AxiomReport rep = check_axioms(Model::canonical(k, v, LabelSpec::swap_atoms()), corpus);
      REQUIRE(rep.scheme5.size() == 20);
      for (const Scheme5Entry& e : rep.scheme5) CHECK(e.holds);
    }
  // the no-empty antecedent: a formula no singleton satisfies is vacuous
  AxiomReport rep = check_axioms(id2(), {parse("~(z = z)")});
  REQUIRE(rep.scheme5.size() == 1);
  CHECK(rep.scheme5[0].holds);
  CHECK(rep.scheme5[0].vacuous);
}

TEST_CASE("scheme 7: equivalent predicates share extensions without violation") {
  Model m = id2();
  Scheme7Report both_true = check_scheme7(m, {parse("z = z"), parse("ex w. w in z")});
  CHECK(both_true.violations.empty());
  CHECK(both_true.out_of_scheme.empty());
  CHECK(both_true.checked_pairs == 3);

  // a single formula pairs only with itself
  Scheme7Report solo = check_scheme7(m, {parse("~(L z sub z)")});
  CHECK(solo.violations.empty());
  CHECK(solo.checked_pairs == 1);
}

TEST_CASE("scheme 7: parameterized and multi-cyclic formulas are out of scheme") {
  Model m = swap2();
  std::vector<Formula> corpus = {
      parse("z = z"),
      parse("(~(L z sub z)) | (z = X)"),          // carries the parameter X
      parse("(z in z) & (ex u. ex u1. (u in u1 & u1 in u))"),  // separate cyclic parts
      parse("ex w. w in w"),                      // no free variable
  };
  Scheme7Report rep = check_scheme7(m, corpus);
  CHECK(rep.violations.empty());
  REQUIRE(rep.out_of_scheme.size() == 3);
  CHECK(rep.out_of_scheme[0].index == 1);
  CHECK(rep.out_of_scheme[0].reason.find("parameter") != std::string::npos);
  CHECK(rep.out_of_scheme[1].index == 2);
  CHECK(rep.out_of_scheme[1].reason == "multi-cyclic");
  CHECK(rep.out_of_scheme[2].index == 3);
}

TEST_CASE("scheme 7: the confusion is real for some non-multi-cyclic pairs") {
  // With identity labels at k = 2, the non-singletons and the singletons
  // have the same extension {a,b} while the predicates disagree.
  Scheme7Report rep = check_scheme7(id2(), {parse("~(z in z)"), parse("single(z)")});
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].extension == 3);
  CHECK(rep.out_of_scheme.empty());

  // the bundled corpus stays clean across every labeling
  auto corpus = corpus_formulas(load_corpus_file(root() + "/corpora/scheme7.lmst"));
  REQUIRE(corpus.size() == 10);
  for (const Model& m : oracle::all_label_models(2, Variant::NoEmpty)) {
    Scheme7Report r = check_scheme7(m, corpus);
    CHECK(r.violations.empty());
    CHECK(r.out_of_scheme.empty());
  }
}

TEST_CASE("russell analysis: the label of X is a subset of X") {
  RussellReport swap = russell_analysis(swap2(), RussellRelation::Subset);
  CHECK(swap.exists);
  CHECK(swap.set_x == 3);
  CHECK(swap.label_x == 3);
  CHECK(swap.label_subset);
  CHECK_FALSE(swap.x_qualifies);
  CHECK(swap.qualifiers == std::vector<Mask>{1, 2});
  REQUIRE(swap.cover.size() == 2);  // both elements of label(X) covered by qualifiers

  RussellReport id = russell_analysis(id2(), RussellRelation::Subset);
  CHECK_FALSE(id.exists);

  // membership variant and strict variant keep the invariant
  for (const Model& m : oracle::all_label_models(2, Variant::NoEmpty)) {
    for (RussellRelation rel : {RussellRelation::Subset, RussellRelation::Membership})
      for (bool strict : {false, true}) {
        RussellReport r = russell_analysis(m, rel, strict);
        if (r.exists) CHECK(r.label_subset);
      }
  }
}

TEST_CASE("confusion demo: X equals X* and the predicates still differ") {
  ConfusionReport c = confusion_demo(swap2());
  REQUIRE(c.applicable);
  CHECK(c.set_x == 3);
  CHECK(c.set_xstar == 3);
  CHECK(c.equal);
  CHECK_FALSE(c.phi_at_x);       // L X sub X holds, so the defining predicate fails at X
  CHECK(c.phistar_at_x);         // the disjunct z = X rescues it
  CHECK(c.disagree_at_x);
  CHECK(c.ok());

  CHECK_FALSE(confusion_demo(id2()).applicable);

  // strict mode: when label(X) = X the predicates agree at X, and the
  // demo honestly reports the failure
  ConfusionReport strict = confusion_demo(swap2(), true);
  REQUIRE(strict.applicable);
  CHECK(strict.equal);
  CHECK(strict.phi_at_x);  // ~(L X psub X) is true since L X = X
  CHECK_FALSE(strict.disagree_at_x);
  CHECK_FALSE(strict.ok());
}

TEST_CASE("confusion invariant over every k=2 labeling") {
  for (const Model& m : oracle::all_label_models(2, Variant::NoEmpty)) {
    ConfusionReport c = confusion_demo(m);
    RussellReport r = russell_analysis(m, RussellRelation::Subset);
    CHECK(c.applicable == r.exists);
    if (c.applicable) CHECK(c.ok());
  }
}

TEST_CASE("single(x) coincides with x in x in canonical models") {
  for (int k : {1, 2, 3}) {
    if (k == 1) {
      Model m = Model::canonical(1, Variant::WithEmpty);
      for (Mask d : m.domain())
        CHECK(eval(m, norm("single(z)"), {{"z", d}}) == eval(m, parse("z in z"), {{"z", d}}));
      continue;
    }
    for (Variant v : {Variant::NoEmpty, Variant::WithEmpty}) {
      Model m = Model::canonical(k, v, k >= 2 ? LabelSpec::swap_atoms() : LabelSpec::identity());
      for (Mask d : m.domain())
        CHECK(eval(m, norm("single(z)"), {{"z", d}}) == eval(m, parse("z in z"), {{"z", d}}));
    }
  }
}

TEST_CASE("search_labels: lexicographic enumeration") {
  // first labeling with a nonvacuous Russell set: identity is skipped,
  // the next permutation (1,3,2) already qualifies
  SearchGoal russell{SearchGoal::Kind::RussellNonvacuous, {}, {}};
  SearchOptions one;
  auto hits = search_labels(2, Variant::NoEmpty, russell, one);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].label(1) == 1);
  CHECK(hits[0].label(2) == 3);
  CHECK(hits[0].label(3) == 2);

  // every labeling except identity qualifies at k = 2
  SearchOptions many;
  many.limit = 10;
  CHECK(search_labels(2, Variant::NoEmpty, russell, many).size() == 5);

  // the clean corpus admits no violation in any labeling
  SearchGoal clean{SearchGoal::Kind::Scheme7Violation,
                   corpus_formulas(load_corpus_file(root() + "/corpora/scheme7.lmst")),
                   {}};
  CHECK(search_labels(2, Variant::NoEmpty, clean, many).empty());

  // the colliding pair finds its violation immediately, at identity
  SearchGoal collide{SearchGoal::Kind::Scheme7Violation,
                     {parse("~(z in z)"), parse("single(z)")},
                     {}};
  auto found = search_labels(2, Variant::NoEmpty, collide, one);
  REQUIRE(found.size() == 1);
  CHECK(found[0].label(1) == 1);
  CHECK(found[0].label(2) == 2);
  CHECK(found[0].label(3) == 3);

  // custom goal: first labeling without fixed points is (2,3,1)
  SearchGoal fixfree{SearchGoal::Kind::Custom, {}, parse("all x. ~(L x = x)")};
  auto nofix = search_labels(2, Variant::NoEmpty, fixfree, one);
  REQUIRE(nofix.size() == 1);
  CHECK(nofix[0].label(1) == 2);
  CHECK(nofix[0].label(2) == 3);
  CHECK(nofix[0].label(3) == 1);
}

TEST_CASE("search_labels: infeasible enumeration and deterministic sampling") {
  SearchGoal russell{SearchGoal::Kind::RussellNonvacuous, {}, {}};
  CHECK_THROWS_AS(search_labels(4, Variant::NoEmpty, russell, {}), semantic_error);

  SearchOptions sampled;
  sampled.limit = 3;
  sampled.sample = 50;
  sampled.seed = 42;
  auto a = search_labels(4, Variant::NoEmpty, russell, sampled);
  auto b = search_labels(4, Variant::NoEmpty, russell, sampled);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (Mask d : a[i].domain()) CHECK(a[i].label(d) == b[i].label(d));
}

TEST_CASE("axiom report json") {
  auto corpus = corpus_formulas(load_corpus_file(root() + "/corpora/scheme7.lmst"));
  json j = to_json(check_axioms(swap2(), corpus));
  CHECK(j["all_hold"] == true);
  CHECK(j["axioms"]["1"]["holds"] == true);
  CHECK(j["axioms"]["2"]["applicable"] == true);
  CHECK(j["scheme5"].size() == 10);
  CHECK(j["scheme7"]["violations"].empty());
  json r = to_json(russell_analysis(swap2(), RussellRelation::Subset));
  CHECK(r["X"] == 3);
  CHECK(r["label_subset_of_X"] == true);
  json c = to_json(confusion_demo(swap2()));
  CHECK(c["equal"] == true);
  CHECK(c["predicates_disagree_at_X"] == true);
}
