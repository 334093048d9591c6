#include "lamcr/checks.hpp"

#include <algorithm>
#include <stdexcept>

#include "lamcr/caps.hpp"

namespace lamcr {

std::vector<Arrow> chain_arrows(const EqualityChain& c) {
  std::vector<Arrow> out;
  out.reserve(c.links.size());
  for (const ChainLink& l : c.links) out.push_back(l.arrow);
  return out;
}

BoundCheck make_check(std::string name, std::size_t actual, const BoundValue& bound) {
  BoundCheck out;
  out.name = std::move(name);
  out.actual = std::to_string(actual);
  out.bound = bound.to_string();
  out.ok = BoundValue::of(actual) <= bound;
  return out;
}

bool all_ok(const std::vector<BoundCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.ok; });
}

namespace {

std::size_t max_chain_term_size(const EqualityChain& c) {
  std::size_t m = 0;
  for (const TermPtr& t : c.terms) m = std::max(m, t->size());
  return m;
}

}  // namespace

std::vector<BoundCheck> main_join_checks(const EqualityChain& c, const JoinCertificate& for_m0,
                                         const JoinCertificate& for_mk) {
  const BoundValue msize = term_size_chain(c);
  const BoundTriple fwd = cr_eq_bound(chain_arrows(c), c.terms.front()->size(), msize);
  const BoundTriple rev =
      cr_eq_bound(chain_arrows(chain_reverse(c)), c.terms.back()->size(), msize);
  return {
      make_check("|M_0 ->> " + for_m0.descriptor + "|", for_m0.left_path.length(), fwd.left_len),
      make_check("|M_k ->> " + for_m0.descriptor + "|", for_m0.right_path.length(), fwd.right_len),
      make_check("|M_k ->> " + for_mk.descriptor + "|", for_mk.right_path.length(), rev.left_len),
      make_check("|M_0 ->> " + for_mk.descriptor + "|", for_mk.left_path.length(), rev.right_len),
      make_check("max term size", max_chain_term_size(c), msize),
  };
}

std::vector<BoundCheck> refined_join_checks(const EqualityChain& c, const JoinCertificate& cert) {
  const std::size_t k = c.length();
  const std::size_t r = chain_arrow_counts(c, 0, k).right;
  const EqualityChain seg_left = chain_segment(c, 0, r);
  const EqualityChain seg_right = chain_segment(c, r, k);
  const std::size_t crossed_size = c.terms[r]->size();
  const BoundTriple left_bound = cr_eq_bound(chain_arrows(chain_reverse(seg_left)), crossed_size,
                                             term_size_chain(seg_left));
  const BoundTriple right_bound =
      cr_eq_bound(chain_arrows(seg_right), crossed_size, term_size_chain(seg_right));
  return {
      make_check("|M_0 ->> " + cert.descriptor + "|", cert.left_path.length(),
                 left_bound.right_len),
      make_check("|M_k ->> " + cert.descriptor + "|", cert.right_path.length(),
                 right_bound.right_len),
      make_check("max term size", max_chain_term_size(c), term_size_chain(c)),
  };
}

std::vector<BoundCheck> peak_join_checks(const ReductionPath& left, const ReductionPath& right,
                                         const JoinCertificate& first) {
  const std::size_t n = left.length();
  const std::size_t m = right.length();
  if (n == 0) return {};
  const BoundTriple t = cr_red_bound(m, left.source->size(), n);
  return {
      make_check("|Q_" + std::to_string(m) + " ->> " + first.descriptor + "|",
                 first.right_path.length(), t.left_len),
      make_check("|P_" + std::to_string(n) + " ->> " + first.descriptor + "|",
                 first.left_path.length(), t.right_len),
  };
}

JoinCertificate cofinal_valley(const ReductionPath& left, const ReductionPath& right) {
  const std::size_t n = left.length();
  const std::size_t m = right.length();
  if (!alpha_eq(left.source, right.source)) throw ChainError("peak-mismatch: sources differ");
  if (n > m) throw ChainError("order-violation: left path longer than right");

  JoinCertificate cert;
  cert.descriptor = "M^{" + std::to_string(m) + "*}";
  cert.left_path = cofinal_path(left);
  cert.left_path.append(star_iter_path(left.source, n, m));
  cert.right_path = cofinal_path(right);
  cert.reduct = cert.right_path.endpoint();
  if (!alpha_eq(cert.left_path.endpoint(), cert.reduct)) {
    throw std::logic_error("cofinal_valley: paths disagree");
  }
  return cert;
}

std::vector<BoundCheck> valley_join_checks(const ReductionPath& left, const ReductionPath& right,
                                           const JoinCertificate& valley) {
  const std::size_t n = left.length();
  const std::size_t m = right.length();
  if (n == 0) return {};
  const BoundTriple t = v_size_bound(n, left.source->size(), m);
  return {
      make_check("|P_" + std::to_string(n) + " ->> " + valley.descriptor + "|",
                 valley.left_path.length(), t.left_len),
      make_check("|Q_" + std::to_string(m) + " ->> " + valley.descriptor + "|",
                 valley.right_path.length(), t.right_len),
  };
}

}  // namespace lamcr
