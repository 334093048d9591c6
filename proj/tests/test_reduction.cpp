#include <doctest.h>

#include "lamcr/bounds.hpp"
#include "lamcr/caps.hpp"
#include "lamcr/gen.hpp"
#include "lamcr/reduction.hpp"
#include "lamcr/syntax.hpp"

using namespace lamcr;

namespace {
TermPtr T(const std::string& s) { return parse_term(s); }
Position P(const std::string& s) { return Position::from_string(s); }
}

TEST_CASE("contract performs one beta step at a position") {
  const Step s = contract(T("(\\x. x) y"), Position{});
  CHECK(alpha_eq(s.target, T("y")));

  const Step inner = contract(T("(\\x. x) ((\\y. y) z)"), P("Arg"));
  CHECK(alpha_eq(inner.target, T("(\\x. x) z")));

  CHECK_THROWS_AS(contract(T("x y"), Position{}), InvalidPositionError);
  CHECK_THROWS_AS(contract(T("(\\x. x) y"), P("Arg")), InvalidPositionError);
}

TEST_CASE("takahashi_star contracts every redex simultaneously") {
  CHECK(alpha_eq(takahashi_star(T("x")), T("x")));
  CHECK(alpha_eq(takahashi_star(T("(\\x. x x) ((\\y. y) z)")), T("z z")));
  // Omega is a fixed point of *
  const TermPtr omega = T("(\\x. x x) (\\x. x x)");
  CHECK(alpha_eq(takahashi_star(omega), omega));
  // no redex: identity
  CHECK(alpha_eq(takahashi_star(T("\\x. x (y x)")), T("\\x. x (y x)")));
  // nested: ((\x.x) z) under an abstraction
  CHECK(alpha_eq(takahashi_star(T("\\w. (\\x. x) z")), T("\\w. z")));
}

TEST_CASE("star_iter composes translations") {
  const TermPtr m = T("(\\x. x x) ((\\y. y) z)");
  CHECK(alpha_eq(star_iter(m, 0), m));
  CHECK(alpha_eq(star_iter(m, 1), takahashi_star(m)));
  CHECK(alpha_eq(star_iter(m, 2), takahashi_star(takahashi_star(m))));
}

TEST_CASE("translation size bound: |M*| <= 2^(|M|-1), randomized") {
  Rng rng(21);
  GenConfig cfg;
  cfg.max_size = 25;
  for (int i = 0; i < 300; ++i) {
    const TermPtr m = random_term(rng, cfg);
    const TermPtr s = takahashi_star(m);
    CHECK(BigInt(s->size()) <= (BigInt(1) << (m->size() - 1)));
  }
}

TEST_CASE("residuals: vanish, stay, move, duplicate") {
  // contracted redex vanishes
  const TermPtr m1 = T("(\\x. x) y");
  RedexSet marks;
  marks.insert(Position{});
  CHECK(residuals(MarkedTerm{m1, marks}, Position{}).empty());

  // disjoint marks stay put
  const TermPtr m2 = T("((\\x. x) y) ((\\z. z) w)");
  RedexSet both = redexes(m2);
  CHECK(both.count() == 2);
  const RedexSet after = residuals(MarkedTerm{m2, both}, P("Fun"));
  CHECK(after.count() == 1);
  CHECK(after.contains(P("Arg")));

  // a mark inside the argument is duplicated to every substituted copy
  const TermPtr m3 = T("(\\x. x x) ((\\y. y) z)");
  RedexSet argmark;
  argmark.insert(P("Arg"));
  const RedexSet dup = residuals(MarkedTerm{m3, argmark}, Position{});
  CHECK(dup.count() == 2);
  CHECK(dup.contains(P("Fun")));
  CHECK(dup.contains(P("Arg")));

  // a mark inside the body lands where the body lands
  const TermPtr m4 = T("(\\x. (\\y. y) x) z");
  RedexSet bodymark;
  bodymark.insert(P("Fun.Body"));
  const RedexSet moved = residuals(MarkedTerm{m4, bodymark}, Position{});
  CHECK(moved.count() == 1);
  CHECK(moved.contains(Position{}));

  // a mark with a discarded argument disappears (no copies)
  const TermPtr m5 = T("(\\x. y) ((\\z. z) w)");
  RedexSet dropped;
  dropped.insert(P("Arg"));
  CHECK(residuals(MarkedTerm{m5, dropped}, Position{}).empty());
}

TEST_CASE("minimal complete development reaches M* when all redexes are marked") {
  Rng rng(22);
  GenConfig cfg;
  for (int i = 0; i < 200; ++i) {
    const TermPtr m = random_term(rng, cfg);
    const RedexSet marks = redexes(m);
    const ReductionPath p = minimal_complete_development(MarkedTerm{m, marks});
    CHECK(p.length() <= marks.count());
    CHECK(alpha_eq(p.endpoint(), takahashi_star(m)));
    CHECK(replays(p));
  }
}

TEST_CASE("gross_knuth_path: length bound and endpoint") {
  Rng rng(23);
  GenConfig cfg;
  cfg.max_size = 30;
  for (int i = 0; i < 200; ++i) {
    const TermPtr m = random_term(rng, cfg);
    const ReductionPath p = gross_knuth_path(m);
    CHECK(alpha_eq(p.endpoint(), takahashi_star(m)));
    if (m->size() >= 4) CHECK(p.length() <= m->size() / 2 - 1);
  }
}

TEST_CASE("cofinal_step: any one-step reduct reaches M*") {
  Rng rng(24);
  GenConfig cfg;
  int done = 0;
  while (done < 150) {
    const TermPtr m = random_term(rng, cfg);
    const RedexSet rs = redexes(m);
    if (rs.empty()) continue;
    for (const Position& r : rs) {
      const Step s = contract(m, r);
      const ReductionPath back = cofinal_step(s);
      CHECK(alpha_eq(back.source, s.target));
      CHECK(alpha_eq(back.endpoint(), takahashi_star(m)));
      CHECK(replays(back));
      if (s.target->size() >= 4) CHECK(back.length() <= s.target->size() / 2 - 1);
    }
    ++done;
  }
}

TEST_CASE("star_subst_path commutes translation with substitution") {
  Rng rng(25);
  GenConfig cfg;
  cfg.max_size = 10;
  for (int i = 0; i < 150; ++i) {
    const TermPtr m = random_term(rng, cfg);
    const TermPtr n = random_term(rng, cfg);
    const std::string x = "p";
    const ReductionPath p = star_subst_path(m, x, n);
    CHECK(alpha_eq(p.source, substitute(takahashi_star(m), x, takahashi_star(n))));
    CHECK(alpha_eq(p.endpoint(), takahashi_star(substitute(m, x, n))));
    CHECK(replays(p));
  }
}

TEST_CASE("subst_path: exact composite length") {
  Rng rng(26);
  GenConfig cfg;
  cfg.max_size = 8;
  int done = 0;
  while (done < 100) {
    const TermPtr m1 = random_term(rng, cfg);
    const TermPtr m2 = random_term(rng, cfg);
    const ReductionPath p1 = random_path(rng, m1, 3, cfg);
    const ReductionPath p2 = random_path(rng, m2, 3, cfg);
    const std::string x = "q";
    const ReductionPath c = subst_path(p1, x, p2);
    CHECK(c.length() == p1.length() + free_occurrences(m1, x) * p2.length());
    CHECK(alpha_eq(c.source, substitute(m1, x, m2)));
    CHECK(alpha_eq(c.endpoint(), substitute(p1.endpoint(), x, p2.endpoint())));
    CHECK(replays(c));
    ++done;
  }
}

TEST_CASE("mono_lift: M -> N gives M* ->> N* with length <= |M*| - 1") {
  Rng rng(27);
  GenConfig cfg;
  int done = 0;
  while (done < 150) {
    const TermPtr m = random_term(rng, cfg);
    const RedexSet rs = redexes(m);
    if (rs.empty()) continue;
    for (const Position& r : rs) {
      const Step s = contract(m, r);
      const ReductionPath lifted = mono_lift(s);
      CHECK(alpha_eq(lifted.source, takahashi_star(m)));
      CHECK(alpha_eq(lifted.endpoint(), takahashi_star(s.target)));
      CHECK(replays(lifted));
      CHECK(lifted.length() <= takahashi_star(m)->size() - 1);
    }
    ++done;
  }
}

TEST_CASE("mono_lift_path and cofinal_path iterate the constructions") {
  Rng rng(28);
  GenConfig cfg;
  cfg.max_size = 8;
  for (int i = 0; i < 60; ++i) {
    const TermPtr m = random_term(rng, cfg);
    const ReductionPath walk = random_path(rng, m, 3, cfg);

    const ReductionPath lifted = mono_lift_path(walk, 2);
    CHECK(alpha_eq(lifted.source, star_iter(m, 2)));
    CHECK(alpha_eq(lifted.endpoint(), star_iter(walk.endpoint(), 2)));
    CHECK(replays(lifted));

    const ReductionPath back = cofinal_path(walk);
    CHECK(alpha_eq(back.source, walk.endpoint()));
    CHECK(alpha_eq(back.endpoint(), star_iter(m, walk.length())));
    CHECK(replays(back));
  }
}

TEST_CASE("star_iter_path strings Gross-Knuth macro steps together") {
  const TermPtr m = T("(\\x. x x) ((\\y. y) z)");
  const ReductionPath p = star_iter_path(m, 0, 2);
  CHECK(alpha_eq(p.source, m));
  CHECK(alpha_eq(p.endpoint(), star_iter(m, 2)));
  CHECK(replays(p));
  const ReductionPath mid = star_iter_path(m, 1, 2);
  CHECK(alpha_eq(mid.source, star_iter(m, 1)));
  CHECK(alpha_eq(mid.endpoint(), star_iter(m, 2)));
}

TEST_CASE("new redexes: creation is detected, developments create nothing") {
  // (\x. x z)(\y. y) -> (\y. y) z creates the target's root redex.
  const Step s = contract(T("(\\x. x z) (\\y. y)"), Position{});
  const RedexSet created = new_redexes(s);
  CHECK(created.count() == 1);
  CHECK(created.contains(Position{}));

  // Copying an argument redex only produces residuals, nothing new.
  const Step dup = contract(T("(\\x. x x) ((\\y. y) z)"), Position{});
  CHECK(new_redexes(dup).empty());

  Rng rng(29);
  GenConfig cfg;
  for (int i = 0; i < 100; ++i) {
    const TermPtr m = random_term(rng, cfg);
    CHECK(count_new_redex_contractions(gross_knuth_path(m)) == 0);
  }
}

TEST_CASE("replays rejects corrupted paths") {
  ReductionPath p(T("(\\x. x) y"));
  p.append(contract(p.source, Position{}));
  CHECK(replays(p));
  ReductionPath bad = p;
  bad.steps[0].target = T("z");
  CHECK_FALSE(replays(bad));
  bad = p;
  bad.steps[0].redex = P("Fun");
  CHECK_FALSE(replays(bad));
}
