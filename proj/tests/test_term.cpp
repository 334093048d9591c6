#include <doctest.h>

#include "lamcr/caps.hpp"
#include "lamcr/gen.hpp"
#include "lamcr/syntax.hpp"
#include "lamcr/term.hpp"

using namespace lamcr;

namespace {
TermPtr T(const std::string& s) { return parse_term(s); }
}

TEST_CASE("term size follows the three clauses") {
  CHECK(T("x")->size() == 1);
  CHECK(T("\\x. x")->size() == 2);
  CHECK(T("x y")->size() == 3);
  CHECK(T("\\f x. f (f x)")->size() == 7);          // Church c_2
  CHECK(T("(\\x. x x) (\\x. x x)")->size() == 9);   // Omega
}

TEST_CASE("free occurrence counting ignores bound uses") {
  CHECK(free_occurrences(T("x (\\x. x) x"), "x") == 2);
  CHECK(free_occurrences(T("\\y. y"), "y") == 0);
  CHECK(free_occurrences(T("z"), "x") == 0);
}

TEST_CASE("alpha equality is renaming-insensitive") {
  CHECK(alpha_eq(T("\\x. x"), T("\\y. y")));
  CHECK(alpha_eq(T("\\x. x y"), T("\\z. z y")));
  CHECK_FALSE(alpha_eq(T("\\x. x y"), T("\\x. x z")));
  CHECK_FALSE(alpha_eq(T("\\x. x"), T("\\x y. x")));
  // equivalence relation spot-check: symmetry + transitivity on a triple
  const TermPtr a = T("\\x. x x"), b = T("\\y. y y"), c = T("\\w. w w");
  CHECK(alpha_eq(a, b));
  CHECK(alpha_eq(b, c));
  CHECK(alpha_eq(a, c));
}

TEST_CASE("substitution avoids capture") {
  // (\y. x)[x := y] must not capture the substituted y.
  const TermPtr r = substitute(T("\\y. x"), "x", T("y"));
  CHECK(alpha_eq(r, T("\\w. y")));
  CHECK_FALSE(alpha_eq(r, T("\\y. y")));
  CHECK(alpha_eq(substitute(T("x x"), "x", T("\\z. z")), T("(\\z. z) (\\z. z)")));
  CHECK(alpha_eq(substitute(T("z"), "x", T("y")), T("z")));
}

TEST_CASE("substitution size identity, randomized") {
  Rng rng(11);
  GenConfig cfg;
  cfg.max_size = 30;
  for (int i = 0; i < 500; ++i) {
    const TermPtr m = random_term(rng, cfg);
    const TermPtr n = random_term(rng, cfg);
    const std::string x = cfg.free_pool[i % cfg.free_pool.size()];
    const TermPtr s = substitute(m, x, n);
    CHECK(s->size() == m->size() + free_occurrences(m, x) * (n->size() - 1));
  }
}

TEST_CASE("positions: navigation, replacement, ordering") {
  const TermPtr t = T("(\\x. x) (y z)");
  CHECK(alpha_eq(subterm_at(t, Position::from_string("Fun")), T("\\x. x")));
  CHECK(alpha_eq(subterm_at(t, Position::from_string("Arg.Fun")), T("y")));
  CHECK_THROWS_AS(subterm_at(t, Position::from_string("Body")), InvalidPositionError);
  CHECK(valid_position(t, Position::from_string("Fun.Body")));
  CHECK_FALSE(valid_position(t, Position::from_string("Fun.Fun")));

  const TermPtr r = replace_at(t, Position::from_string("Arg"), T("w"));
  CHECK(alpha_eq(r, T("(\\x. x) w")));

  CHECK(Position{}.to_string() == "root");
  const Position p = Position::from_string("Fun.Body");
  CHECK(p.to_string() == "Fun.Body");
  CHECK(Position::from_string("root") == Position{});
  CHECK(Position{} < p);                       // prefix orders first
  CHECK(Position::from_string("Fun") < Position::from_string("Arg"));
  CHECK(Position::from_string("Arg") < Position::from_string("Body"));
}

TEST_CASE("subterm_relation distinguishes the four cases") {
  const Position root;
  const Position fun = Position::from_string("Fun");
  const Position funbody = Position::from_string("Fun.Body");
  const Position arg = Position::from_string("Arg");
  CHECK(subterm_relation(fun, fun) == SubtermRel::Equal);
  CHECK(subterm_relation(funbody, fun) == SubtermRel::FirstInsideSecond);
  CHECK(subterm_relation(root, arg) == SubtermRel::SecondInsideFirst);
  CHECK(subterm_relation(fun, arg) == SubtermRel::Disjoint);
}

TEST_CASE("redex enumeration") {
  CHECK(redexes(T("x")).empty());
  CHECK(redexes(T("\\x. x")).empty());

  const RedexSet omega = redexes(T("(\\x. x x) (\\x. x x)"));
  CHECK(omega.count() == 1);
  CHECK(omega.contains(Position{}));

  const RedexSet two = redexes(T("(\\x. x) ((\\y. y) z)"));
  CHECK(two.count() == 2);
  CHECK(two.contains(Position{}));
  CHECK(two.contains(Position::from_string("Arg")));
}

TEST_CASE("redex count bound, randomized") {
  Rng rng(12);
  GenConfig cfg;
  cfg.max_size = 40;
  for (int i = 0; i < 500; ++i) {
    const TermPtr m = random_term(rng, cfg);
    if (m->size() >= 4) {
      CHECK(redexes(m).count() <= m->size() / 2 - 1);
    } else {
      CHECK(redexes(m).count() <= 1);
    }
  }
}

TEST_CASE("open/close round-trips a binder body") {
  const TermPtr lam = T("\\x. x (y x)");
  const std::string u = fresh_name();
  const TermPtr opened = open_body(lam, u);
  CHECK(free_occurrences(opened, u) == 2);
  CHECK(alpha_eq(close_over(opened, u, "x"), lam));
}
