#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lamcr/reduction.hpp"
#include "lamcr/term.hpp"

namespace lamcr {

enum class Arrow : std::uint8_t { Left, Right };

// One link of a beta-equality chain. The witness is a redex position in the
// arrow's source term (terms[i] for Right, terms[i+1] for Left).
struct ChainLink {
  Arrow arrow;
  Position witness;
};

// Terms M_0 .. M_k with k directed, witnessed links.
struct EqualityChain {
  std::vector<TermPtr> terms;
  std::vector<ChainLink> links;

  std::size_t length() const { return links.size(); }

  // Chain-position index of the arrow's source / target term for link i.
  std::size_t link_source(std::size_t i) const {
    return links[i].arrow == Arrow::Right ? i : i + 1;
  }
  std::size_t link_target(std::size_t i) const {
    return links[i].arrow == Arrow::Right ? i + 1 : i;
  }
};

// Throws ChainError unless every link's witness contraction reproduces the
// arrow-target (alpha-equally).
void validate_chain(const EqualityChain& c);

struct ArrowCounts {
  std::size_t left = 0;
  std::size_t right = 0;
};

// Counts arrow tags among links i..j-1 (the segment [M_i, M_j]).
ArrowCounts chain_arrow_counts(const EqualityChain& c, std::size_t i, std::size_t j);

EqualityChain chain_reverse(const EqualityChain& c);
EqualityChain chain_append(const EqualityChain& c1, const EqualityChain& c2);
EqualityChain chain_from_path(const ReductionPath& p);
// The segment [M_i .. M_j] as a chain of its own.
EqualityChain chain_segment(const EqualityChain& c, std::size_t i, std::size_t j);

// A joined pair of paths into a named common reduct.
struct JoinCertificate {
  std::string descriptor;    // e.g. "M_2^{1*}"
  TermPtr reduct;
  ReductionPath left_path;   // from M_0
  ReductionPath right_path;  // from M_k
};

// True iff both paths replay, start alpha-equal to the given endpoints, and
// end alpha-equal to the reduct.
bool certificate_valid(const JoinCertificate& cert, const TermPtr& m0, const TermPtr& mk);

// The constructive path M_0 ->> M_k^{l*} underlying the main lemma, where
// l = #Left over the whole chain.
ReductionPath chain_forward_path(const EqualityChain& c);

// Main lemma: certificates for M_0^{r*} and M_k^{l*}.
std::pair<JoinCertificate, JoinCertificate> join_main(const EqualityChain& c);

// Refined main lemma: the crossed point M_r^{m_l*}, m_l = #Left over [0, r].
JoinCertificate join_refined(const EqualityChain& c);

// Main theorem: the full family of common reducts (one per chain position),
// plus a validated path from every chain term to the crossed point.
struct JoinAllResult {
  std::size_t r = 0;          // crossed-point position
  std::size_t m_l = 0;        // its star count
  std::vector<JoinCertificate> family;    // indexed by chain position
  std::vector<ReductionPath> to_crossed;  // from each M_i to M_r^{m_l*}
};
JoinAllResult join_all(const EqualityChain& c);

// Church-Rosser corollary for a reduction peak P_n <<- M ->> Q_m (1 <= n <= m):
// certificates for Q_m^{n*} and Q_{m-n}^{n*}.
std::pair<JoinCertificate, JoinCertificate> join_reduction_peak(const ReductionPath& left,
                                                                const ReductionPath& right);

// Improved theorem: certificates for Q_m^{(a+1)*} and P_n^{(b+1)*} where a, b
// count the new-redex contractions of the two paths.
struct ImprovedJoin {
  std::size_t a = 0;
  std::size_t b = 0;
  JoinCertificate first;   // reduct Q_m^{(a+1)*}
  JoinCertificate second;  // reduct P_n^{(b+1)*}
};
ImprovedJoin join_improved(const ReductionPath& left, const ReductionPath& right);

// For a path M ->>^n N with a new-redex contractions: path N ->> M^{(a+1)*},
// built by completing maximal developments between new-redex steps.
ReductionPath development_claim_path(const ReductionPath& p);

// Example 1 machinery: symbolic classification of all 2^k arrow patterns.
struct PatternRow {
  std::vector<Arrow> arrows;
  std::size_t r = 0;
  std::size_t l = 0;
  std::size_t m_l = 0;
  std::string main_first;   // M_0^{r*}
  std::string main_second;  // M_k^{l*}
  std::string crossed;      // M_r^{m_l*}
};
struct PatternTable {
  std::size_t k = 0;
  std::vector<PatternRow> rows;             // grouped by r, then lexicographic
  std::vector<std::size_t> class_sizes;     // indexed by r = 0..k
};
PatternTable enumerate_patterns(std::size_t k, std::size_t max_k = 12);

std::string reduct_descriptor(std::size_t term_index, std::size_t stars);
std::string arrows_to_string(const std::vector<Arrow>& arrows);

}  // namespace lamcr
