#include "lamcr/examples.hpp"

#include <stdexcept>

#include "lamcr/bounds.hpp"
#include "lamcr/caps.hpp"

namespace lamcr {

TermPtr church_numeral(std::size_t n) {
  TermPtr body = Term::bound_var(0);
  for (std::size_t i = 0; i < n; ++i) body = Term::app(Term::bound_var(1), body);
  return Term::lam("f", Term::lam("x", std::move(body)));
}

TermPtr iterated_app(const TermPtr& f, const TermPtr& base, std::size_t n) {
  TermPtr acc = base;
  for (std::size_t i = 0; i < n; ++i) acc = Term::app(f, acc);
  return acc;
}

ReductionPath innermost_normalize(const TermPtr& t, std::size_t fuel, bool* exhausted) {
  ReductionPath p(t);
  Position r;
  bool more = innermost_redex(t, r);
  while (more && p.length() < fuel) {
    p.append(contract(p.endpoint(), r));
    more = innermost_redex(p.endpoint(), r);
  }
  if (exhausted) *exhausted = more;
  return p;
}

BigJoinReport build_big_join(std::size_t n) {
  if (n < 1) throw std::invalid_argument("big-join: n must be >= 1");

  const BoundValue t = iter_exp(1, n);
  if (t.is_overflow() || !t.is_integer()) throw ResourceCapError("big-join: tower overflows");
  const BigInt ti = boost::multiprecision::numerator(t.value());
  if (ti > caps().term_nodes / 2) throw ResourceCapError("big-join: reduct exceeds term cap");

  BigJoinReport rep;
  rep.n = n;
  rep.tower = static_cast<std::size_t>(ti);
  rep.chain_length_bound = 2 * (4 + rep.tower);
  rep.literature_size = 8 * n + 1;

  const TermPtr c1 = church_numeral(1);
  const TermPtr c2 = church_numeral(2);
  TermPtr nn = c2;
  for (std::size_t k = 2; k <= n; ++k) nn = Term::app(nn, c2);
  const TermPtr p = Term::free_var("p");
  const TermPtr q = Term::free_var("q");

  rep.m1 = Term::app(Term::app(c1, p), Term::app(Term::app(nn, p), q));
  rep.m2 = Term::app(Term::app(nn, p), Term::app(Term::app(c1, p), q));
  rep.size_m1 = rep.m1->size();
  rep.size_m2 = rep.m2->size();

  bool exhausted1 = false;
  bool exhausted2 = false;
  // Slack beyond the reported chain-length bound: the innermost route spends a
  // few extra steps per doubling stage, which only matters for tiny towers.
  const std::size_t fuel = rep.chain_length_bound + 64;
  const ReductionPath down1 = innermost_normalize(rep.m1, fuel, &exhausted1);
  const ReductionPath down2 = innermost_normalize(rep.m2, fuel, &exhausted2);
  if (exhausted1 || exhausted2) throw ResourceCapError("big-join: normalization fuel exhausted");

  rep.chain = chain_append(chain_from_path(down1), chain_reverse(chain_from_path(down2)));
  rep.length_within_bound = rep.chain.length() <= rep.chain_length_bound;

  rep.cert = join_refined(rep.chain);
  rep.expected_reduct = iterated_app(p, q, rep.tower + 1);
  rep.reduct_matches = alpha_eq(rep.cert.reduct, rep.expected_reduct);
  return rep;
}

}  // namespace lamcr
