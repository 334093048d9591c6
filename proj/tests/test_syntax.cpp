#include <doctest.h>

#include "lamcr/caps.hpp"
#include "lamcr/gen.hpp"
#include "lamcr/syntax.hpp"

using namespace lamcr;

namespace {
TermPtr T(const std::string& s) { return parse_term(s); }
}

TEST_CASE("parser: grammar basics") {
  CHECK(alpha_eq(T("\\x. x"), Term::lam("x", Term::bound_var(0))));
  CHECK(alpha_eq(T("λx. x"), T("\\x. x")));
  CHECK(alpha_eq(T("\\f x. f (f x)"), T("\\f. \\x. f (f x)")));  // multi-binder sugar
  CHECK(alpha_eq(T("a b c"), Term::app(Term::app(T("a"), T("b")), T("c"))));
  CHECK_FALSE(alpha_eq(T("a b c"), T("a (b c)")));
  CHECK(T("(\\x. x x) (\\x. x x)")->is_redex());
  // body extends maximally right
  CHECK(alpha_eq(T("\\x. x y"), Term::lam("x", Term::app(Term::bound_var(0), T("y")))));
  // identifiers with digits, underscore, prime
  CHECK(T("foo_1'")->name() == "foo_1'");
  // free variables are legal
  CHECK(T("x")->tag() == Term::Tag::FreeVar);
}

TEST_CASE("parser: errors carry positions") {
  CHECK_THROWS_AS(T("(x"), ParseError);
  CHECK_THROWS_AS(T("\\. x"), ParseError);
  CHECK_THROWS_AS(T("x )"), ParseError);
  CHECK_THROWS_AS(T(""), ParseError);
  CHECK_THROWS_AS(T("x ?"), ParseError);
  try {
    parse_term("x\n y )");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("printer: minimal parentheses") {
  CHECK(print_term(T("\\x. x")) == "\\x. x");
  CHECK(print_term(T("a b c")) == "a b c");
  CHECK(print_term(T("a (b c)")) == "a (b c)");
  CHECK(print_term(T("(\\x. x) y")) == "(\\x. x) y");
  CHECK(print_term(T("\\f x. f (f x)")) == "\\f x. f (f x)");
  // shadowed binders are renamed apart
  const TermPtr shadow = T("\\x. \\x. x");
  CHECK(alpha_eq(parse_term(print_term(shadow)), shadow));
  // a binder hint colliding with a free variable is renamed
  const TermPtr collide = Term::lam("y", Term::app(Term::bound_var(0), T("y")));
  CHECK(alpha_eq(parse_term(print_term(collide)), collide));
}

TEST_CASE("round-trip on a random corpus") {
  Rng rng(41);
  GenConfig cfg;
  cfg.max_size = 25;
  for (int i = 0; i < 300; ++i) {
    const TermPtr t = random_term(rng, cfg);
    CHECK(alpha_eq(parse_term(print_term(t)), t));
  }
}

TEST_CASE("chain documents") {
  const EqualityChain right = parse_chain("(\\x. x) y\n->\ny");
  CHECK(right.length() == 1);
  CHECK(right.links[0].arrow == Arrow::Right);
  validate_chain(right);

  const EqualityChain left = parse_chain("y\n<-\n(\\x. x) y\n");
  CHECK(left.links[0].arrow == Arrow::Left);
  validate_chain(left);

  CHECK_THROWS_AS(parse_chain("x\n->\ny"), ChainError);        // link-invalid
  CHECK_THROWS_AS(parse_chain("x\n=>\ny"), ParseError);        // bad arrow
  CHECK_THROWS_AS(parse_chain("x\n->"), ParseError);           // dangling arrow
  CHECK(parse_chain("\\x. x y").length() == 0);                // one line, zero links

  // CRLF tolerated
  const EqualityChain crlf = parse_chain("(\\x. x) y\r\n->\r\ny\r\n");
  CHECK(crlf.length() == 1);

  // witness inference picks the lexicographically least matching redex
  const EqualityChain dup = parse_chain("(\\x. y) ((\\z. z) w)\n->\n(\\x. y) w");
  CHECK(dup.links[0].witness == Position::from_string("Arg"));

  // emit round-trips terms and arrows
  Rng rng(42);
  GenConfig cfg;
  const EqualityChain c = random_chain(rng, 4, cfg);
  const EqualityChain back = parse_chain(emit_chain(c));
  REQUIRE(back.terms.size() == c.terms.size());
  for (std::size_t i = 0; i < c.terms.size(); ++i) CHECK(alpha_eq(back.terms[i], c.terms[i]));
  for (std::size_t i = 0; i < c.links.size(); ++i) CHECK(back.links[i].arrow == c.links[i].arrow);
}

TEST_CASE("certificates: text and structured emission") {
  const EqualityChain c = parse_chain("(\\x. x) y\n->\ny");
  auto [a, b] = join_main(c);

  const std::string text = emit_certificate_text(b);
  CHECK(text.find("-[root]->") != std::string::npos);
  CHECK(text.find(b.descriptor) != std::string::npos);

  // structured round-trip reproduces the paths verbatim and still replays
  const nlohmann::json doc = certificate_json(b);
  CHECK(doc.at("descriptor") == b.descriptor);
  CHECK(doc.at("lengths").at("left") == b.left_path.length());
  const JoinCertificate back = parse_certificate_json(doc);
  CHECK(alpha_eq(back.reduct, b.reduct));
  CHECK(back.left_path.length() == b.left_path.length());
  CHECK(certificate_valid(back, c.terms.front(), c.terms.back()));
  CHECK(certificate_json(back).dump() == doc.dump());  // byte-stable

  // empty-path certificate survives the round trip via the reduct
  const nlohmann::json doc0 = certificate_json(a);
  const JoinCertificate back0 = parse_certificate_json(doc0);
  CHECK(certificate_valid(back0, c.terms.front(), c.terms.back()));

  const std::vector<BoundCheck> checks = {{"left <= cr-eq", "1", "2", true}};
  CHECK(emit_certificate_text(b, checks).find("[ok]") != std::string::npos);
  CHECK(certificate_json(b, checks).at("bound_checks").size() == 1);
}
