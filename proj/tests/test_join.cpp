#include <doctest.h>

#include "lamcr/caps.hpp"
#include "lamcr/gen.hpp"
#include "lamcr/join.hpp"
#include "lamcr/syntax.hpp"

using namespace lamcr;

namespace {
TermPtr T(const std::string& s) { return parse_term(s); }

std::vector<Arrow> arrows_of(const EqualityChain& c) {
  std::vector<Arrow> out;
  for (const ChainLink& l : c.links) out.push_back(l.arrow);
  return out;
}
}

TEST_CASE("chain arrow counts") {
  const EqualityChain c = parse_chain(
      "(\\x. x) ((\\y. y) ((\\z. z) ((\\w. w) a)))\n->\n"
      "(\\y. y) ((\\z. z) ((\\w. w) a))\n->\n"
      "(\\z. z) ((\\w. w) a)\n->\n"
      "(\\w. w) a\n->\na");
  const ArrowCounts full = chain_arrow_counts(c, 0, 4);
  CHECK(full.left == 0);
  CHECK(full.right == 4);
  const ArrowCounts empty = chain_arrow_counts(c, 2, 2);
  CHECK(empty.left == 0);
  CHECK(empty.right == 0);
  CHECK_THROWS_AS(chain_arrow_counts(c, 3, 2), std::out_of_range);
  CHECK_THROWS_AS(chain_arrow_counts(c, 0, 9), std::out_of_range);
}

TEST_CASE("chain reverse / append / from_path") {
  Rng rng(31);
  GenConfig cfg;
  const EqualityChain c = random_chain(rng, 5, cfg);
  validate_chain(c);

  const EqualityChain rr = chain_reverse(chain_reverse(c));
  REQUIRE(rr.terms.size() == c.terms.size());
  for (std::size_t i = 0; i < c.terms.size(); ++i) CHECK(alpha_eq(rr.terms[i], c.terms[i]));
  for (std::size_t i = 0; i < c.links.size(); ++i) {
    CHECK(rr.links[i].arrow == c.links[i].arrow);
    CHECK(rr.links[i].witness == c.links[i].witness);
  }

  EqualityChain unit;
  unit.terms.push_back(c.terms.back());
  const EqualityChain same = chain_append(c, unit);
  CHECK(same.terms.size() == c.terms.size());
  CHECK(same.links.size() == c.links.size());
  CHECK_THROWS_AS(chain_append(c, parse_chain("some_other_term")), ChainError);

  const ReductionPath p = random_path(rng, random_term(rng, cfg), 4, cfg);
  const EqualityChain fwd = chain_from_path(p);
  validate_chain(fwd);
  const ArrowCounts n = chain_arrow_counts(fwd, 0, fwd.length());
  CHECK(n.left == 0);
  CHECK(n.right == p.length());
  const EqualityChain bwd = chain_reverse(fwd);
  validate_chain(bwd);
  CHECK(chain_arrow_counts(bwd, 0, bwd.length()).right == 0);
}

TEST_CASE("join_main: trivial and single-link chains") {
  EqualityChain trivial;
  trivial.terms.push_back(T("\\x. x y"));
  const auto [c0, ck] = join_main(trivial);
  CHECK(c0.left_path.length() == 0);
  CHECK(c0.right_path.length() == 0);
  CHECK(alpha_eq(c0.reduct, trivial.terms[0]));
  CHECK(alpha_eq(ck.reduct, trivial.terms[0]));

  // M_0 <- M_1: the lemma's <0, M_0^{0*}, 1> shape
  const EqualityChain left1 = parse_chain("y\n<-\n(\\x. x) y");
  const auto [a, b] = join_main(left1);
  CHECK(a.descriptor == "M_0^{0*}");
  CHECK(alpha_eq(a.reduct, T("y")));
  CHECK(a.left_path.length() == 0);
  CHECK(a.right_path.length() == 1);
  CHECK(certificate_valid(a, T("y"), T("(\\x. x) y")));
  CHECK(certificate_valid(b, T("y"), T("(\\x. x) y")));
}

TEST_CASE("join_main: random chains land on the star iterates") {
  Rng rng(32);
  GenConfig cfg;
  cfg.max_size = 10;
  int done = 0;
  while (done < 40) {
    const EqualityChain c = random_chain(rng, 5, cfg);
    const ArrowCounts n = chain_arrow_counts(c, 0, c.length());
    std::pair<JoinCertificate, JoinCertificate> certs;
    try {
      certs = join_main(c);
    } catch (const ResourceCapError&) {
      continue;
    }
    CHECK(alpha_eq(certs.first.reduct, star_iter(c.terms.front(), n.right)));
    CHECK(alpha_eq(certs.second.reduct, star_iter(c.terms.back(), n.left)));
    CHECK(certificate_valid(certs.first, c.terms.front(), c.terms.back()));
    CHECK(certificate_valid(certs.second, c.terms.front(), c.terms.back()));
    ++done;
  }
}

TEST_CASE("join_refined: valley chains need no stars") {
  // M_0 -> M_1 -> M_2 <- M_3 <- M_4 around two disjoint redexes
  const TermPtr m = T("((\\x. x) a) ((\\y. y) b)");
  ReductionPath p1(m);
  p1.append(contract(m, Position::from_string("Fun")));
  p1.append(contract(p1.endpoint(), Position::from_string("Arg")));
  ReductionPath p2(m);
  p2.append(contract(m, Position::from_string("Arg")));
  p2.append(contract(p2.endpoint(), Position::from_string("Fun")));
  const EqualityChain c = chain_append(chain_from_path(p1), chain_reverse(chain_from_path(p2)));
  REQUIRE(c.length() == 4);

  const JoinCertificate cert = join_refined(c);
  CHECK(cert.descriptor == "M_2^{0*}");
  CHECK(alpha_eq(cert.reduct, T("a b")));
  CHECK(cert.left_path.length() == 2);
  CHECK(cert.right_path.length() == 2);
  CHECK(certificate_valid(cert, m, m));
}

TEST_CASE("join_refined: a leading left arrow costs one star") {
  // M_0 <- M_1 -> M_2 -> M_3 (pattern <-,->,->: r = 2, m_l = 1)
  const TermPtr m1 = T("((\\x. x) a) ((\\y. y) ((\\z. z) b))");
  const TermPtr m0 = contract(m1, Position::from_string("Fun")).target;
  const TermPtr m2 = contract(m1, Position::from_string("Arg.Arg")).target;
  const TermPtr m3 = contract(m2, Position::from_string("Arg")).target;
  const EqualityChain c = parse_chain(print_term(m0) + "\n<-\n" + print_term(m1) + "\n->\n" +
                                      print_term(m2) + "\n->\n" + print_term(m3));
  const JoinCertificate cert = join_refined(c);
  CHECK(cert.descriptor == "M_2^{1*}");
  CHECK(alpha_eq(cert.reduct, takahashi_star(m2)));
  CHECK(certificate_valid(cert, m0, m3));
}

TEST_CASE("join_all: families agree with the main lemma and the refinement") {
  Rng rng(33);
  GenConfig cfg;
  cfg.max_size = 9;
  int done = 0;
  while (done < 15) {
    const EqualityChain c = random_chain(rng, 4, cfg);
    JoinAllResult all;
    std::pair<JoinCertificate, JoinCertificate> main_certs;
    JoinCertificate refined;
    try {
      all = join_all(c);
      main_certs = join_main(c);
      refined = join_refined(c);
    } catch (const ResourceCapError&) {
      continue;
    }
    const std::size_t k = c.length();
    REQUIRE(all.family.size() == k + 1);
    CHECK(alpha_eq(all.family.front().reduct, main_certs.first.reduct));
    CHECK(alpha_eq(all.family.back().reduct, main_certs.second.reduct));
    CHECK(alpha_eq(all.family[all.r].reduct, refined.reduct));
    for (const JoinCertificate& cert : all.family) {
      CHECK(certificate_valid(cert, c.terms.front(), c.terms.back()));
    }
    REQUIRE(all.to_crossed.size() == k + 1);
    for (std::size_t i = 0; i <= k; ++i) {
      CHECK(alpha_eq(all.to_crossed[i].source, c.terms[i]));
      CHECK(alpha_eq(all.to_crossed[i].endpoint(), refined.reduct));
      CHECK(replays(all.to_crossed[i]));
    }
    ++done;
  }
}

TEST_CASE("join_reduction_peak: the hand-checked diamond") {
  const TermPtr m = T("(\\x. x x) ((\\y. y) z)");
  ReductionPath left(m);
  left.append(contract(m, Position::from_string("Arg")));
  ReductionPath right(m);
  right.append(contract(m, Position{}));

  const auto [first, second] = join_reduction_peak(left, right);
  CHECK(first.descriptor == "Q_1^{1*}");
  CHECK(alpha_eq(first.reduct, T("z z")));
  CHECK(certificate_valid(first, left.endpoint(), right.endpoint()));
  CHECK(second.descriptor == "Q_0^{1*}");
  CHECK(alpha_eq(second.reduct, T("z z")));  // M* for this peak
  CHECK(certificate_valid(second, left.endpoint(), right.endpoint()));
}

TEST_CASE("join_reduction_peak: input validation") {
  ReductionPath a(T("(\\x. x) y"));
  ReductionPath b(T("(\\x. x) z"));
  CHECK_THROWS_AS(join_reduction_peak(a, b), ChainError);

  const TermPtr m = T("(\\x. x) ((\\y. y) z)");
  ReductionPath two(m);
  two.append(contract(m, Position::from_string("Arg")));
  two.append(contract(two.endpoint(), Position{}));
  ReductionPath one(m);
  one.append(contract(m, Position{}));
  CHECK_THROWS_AS(join_reduction_peak(two, one), ChainError);  // n > m
}

TEST_CASE("join_reduction_peak: random peaks replay") {
  Rng rng(34);
  GenConfig cfg;
  cfg.max_size = 10;
  int done = 0;
  while (done < 25) {
    auto [left, right] = random_peak(rng, 2, 3, cfg);
    std::pair<JoinCertificate, JoinCertificate> certs;
    try {
      certs = join_reduction_peak(left, right);
    } catch (const ResourceCapError&) {
      continue;
    }
    const std::size_t n = left.length();
    CHECK(alpha_eq(certs.first.reduct, star_iter(right.endpoint(), n)));
    CHECK(certificate_valid(certs.first, left.endpoint(), right.endpoint()));
    CHECK(certificate_valid(certs.second, left.endpoint(), right.endpoint()));
    ++done;
  }
}

TEST_CASE("join_improved: creation-free peaks need a single star") {
  const TermPtr m = T("((\\x. x) a) ((\\y. y) b)");
  ReductionPath left(m);
  left.append(contract(m, Position::from_string("Fun")));
  ReductionPath right(m);
  right.append(contract(m, Position::from_string("Arg")));

  const ImprovedJoin ij = join_improved(left, right);
  CHECK(ij.a == 0);
  CHECK(ij.b == 0);
  CHECK(ij.first.descriptor == "Q_1^{1*}");
  CHECK(ij.second.descriptor == "P_1^{1*}");
  CHECK(certificate_valid(ij.first, left.endpoint(), right.endpoint()));
  CHECK(certificate_valid(ij.second, left.endpoint(), right.endpoint()));
}

TEST_CASE("join_improved: a created redex costs one more star") {
  // (\x. x z)(\y. y) -> (\y. y) z -> z contracts a created redex (a = 1).
  const TermPtr m = T("(\\x. x z) (\\y. y)");
  ReductionPath left(m);
  left.append(contract(m, Position{}));
  left.append(contract(left.endpoint(), Position{}));
  CHECK(count_new_redex_contractions(left) == 1);

  ReductionPath right = left;
  const ImprovedJoin ij = join_improved(left, right);
  CHECK(ij.a == 1);
  CHECK(ij.first.descriptor == "Q_2^{2*}");
  CHECK(alpha_eq(ij.first.reduct, T("z")));
  CHECK(certificate_valid(ij.first, T("z"), T("z")));
}

TEST_CASE("join_improved: random peaks, a <= n-1") {
  Rng rng(35);
  GenConfig cfg;
  cfg.max_size = 10;
  int done = 0;
  while (done < 25) {
    auto [left, right] = random_peak(rng, 3, 3, cfg);
    if (left.length() == 0) continue;
    ImprovedJoin ij;
    try {
      ij = join_improved(left, right);
    } catch (const ResourceCapError&) {
      continue;
    }
    CHECK(ij.a <= left.length() - 1);
    CHECK(ij.b + 1 <= std::max<std::size_t>(right.length(), 1));
    CHECK(certificate_valid(ij.first, left.endpoint(), right.endpoint()));
    CHECK(certificate_valid(ij.second, left.endpoint(), right.endpoint()));
    ++done;
  }
}

TEST_CASE("enumerate_patterns reproduces the sixteen-pattern classification") {
  const PatternTable t4 = enumerate_patterns(4);
  REQUIRE(t4.rows.size() == 16);
  CHECK(t4.class_sizes == std::vector<std::size_t>{1, 4, 6, 4, 1});

  auto find = [&](const std::string& pat) -> const PatternRow& {
    for (const PatternRow& row : t4.rows) {
      std::string s;
      for (Arrow a : row.arrows) s += (a == Arrow::Right ? 'R' : 'L');
      if (s == pat) return row;
    }
    FAIL(("pattern not found: " + pat));
    return t4.rows.front();
  };
  const PatternRow& valley = find("RRLL");
  CHECK(valley.r == 2);
  CHECK(valley.m_l == 0);
  CHECK(valley.crossed == "M_2^{0*}");

  const PatternRow& lead_left = find("LRRR");
  CHECK(lead_left.r == 3);
  CHECK(lead_left.m_l == 1);
  CHECK(lead_left.crossed == "M_3^{1*}");

  const PatternRow& late_left = find("RRRL");
  CHECK(late_left.m_l == 0);
  CHECK(late_left.crossed == "M_3^{0*}");

  const PatternTable t1 = enumerate_patterns(1);
  CHECK(t1.class_sizes == std::vector<std::size_t>{1, 1});
  CHECK(t1.rows[0].main_first == "M_0^{0*}");
  CHECK(t1.rows[0].main_second == "M_1^{1*}");
  CHECK(t1.rows[1].main_first == "M_0^{1*}");
  CHECK(t1.rows[1].main_second == "M_1^{0*}");

  CHECK_THROWS_AS(enumerate_patterns(13), ResourceCapError);
}

TEST_CASE("certificate_valid rejects corrupted certificates") {
  const EqualityChain c = parse_chain("(\\x. x) y\n->\ny");
  auto [a, b] = join_main(c);
  REQUIRE(certificate_valid(a, c.terms.front(), c.terms.back()));
  JoinCertificate bad = a;
  bad.reduct = T("w");
  CHECK_FALSE(certificate_valid(bad, c.terms.front(), c.terms.back()));
  bad = a;
  if (!bad.right_path.steps.empty()) {
    bad.right_path.steps.front().target = T("w w");
    CHECK_FALSE(certificate_valid(bad, c.terms.front(), c.terms.back()));
  }
}
