#pragma once

#include <cstddef>

#include "lamcr/join.hpp"
#include "lamcr/term.hpp"

namespace lamcr {

// Church numeral c_n = \f x. f^n(x).
TermPtr church_numeral(std::size_t n);

// f applied n times to base, built iteratively so huge spines are safe.
TermPtr iterated_app(const TermPtr& f, const TermPtr& base, std::size_t n);

// Leftmost-innermost normalization under a step budget. Innermost order keeps
// contracted positions shallow even while spines grow deep inside bodies,
// which is what makes the big worked instance below tractable.
ReductionPath innermost_normalize(const TermPtr& t, std::size_t fuel,
                                  bool* exhausted = nullptr);

// The worked instance joining M1 = c_1 p (N_n p q) and M2 = N_n p (c_1 p q),
// where N_1 = c_2 and N_{k+1} = N_k c_2. Both sides normalize to
// p^(T+1)(q) with T = 2_n^1; the valley chain is joined with the refined
// crossed-point construction.
struct BigJoinReport {
  std::size_t n = 0;
  std::size_t tower = 0;  // T = 2_n^1
  TermPtr m1;
  TermPtr m2;
  std::size_t size_m1 = 0;
  std::size_t size_m2 = 0;
  std::size_t literature_size = 0;  // the 8n+1 value quoted for these terms
  EqualityChain chain;
  std::size_t chain_length_bound = 0;  // 2 * (4 + T)
  JoinCertificate cert;
  TermPtr expected_reduct;  // p^(T+1)(q), built directly
  bool reduct_matches = false;
  bool length_within_bound = false;
};

BigJoinReport build_big_join(std::size_t n);

}  // namespace lamcr
