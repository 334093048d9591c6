#include "lamcr/join.hpp"

#include <algorithm>
#include <stdexcept>

#include "lamcr/caps.hpp"

namespace lamcr {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::logic_error(what);
}

Step link_step(const EqualityChain& c, std::size_t i) {
  return contract(c.terms[c.link_source(i)], c.links[i].witness);
}

}  // namespace

void validate_chain(const EqualityChain& c) {
  if (c.terms.empty()) throw ChainError("chain has no terms");
  if (c.links.size() + 1 != c.terms.size()) {
    throw ChainError("chain has " + std::to_string(c.terms.size()) + " terms but " +
                     std::to_string(c.links.size()) + " links");
  }
  for (std::size_t i = 0; i < c.links.size(); ++i) {
    Step s;
    try {
      s = link_step(c, i);
    } catch (const InvalidPositionError& e) {
      throw ChainError("link " + std::to_string(i) + ": " + e.what());
    }
    if (!alpha_eq(s.target, c.terms[c.link_target(i)])) {
      throw ChainError("link " + std::to_string(i) +
                       ": contracting the witness does not reach the arrow-target");
    }
  }
}

ArrowCounts chain_arrow_counts(const EqualityChain& c, std::size_t i, std::size_t j) {
  if (i > j || j > c.links.size()) {
    throw std::out_of_range("chain_arrow_counts: segment [" + std::to_string(i) + "," +
                            std::to_string(j) + "] out of range");
  }
  ArrowCounts n;
  for (std::size_t t = i; t < j; ++t) {
    (c.links[t].arrow == Arrow::Left ? n.left : n.right)++;
  }
  return n;
}

EqualityChain chain_reverse(const EqualityChain& c) {
  EqualityChain out;
  out.terms.assign(c.terms.rbegin(), c.terms.rend());
  for (auto it = c.links.rbegin(); it != c.links.rend(); ++it) {
    // The arrow-source term is unchanged; only the orientation flips.
    out.links.push_back({it->arrow == Arrow::Right ? Arrow::Left : Arrow::Right, it->witness});
  }
  return out;
}

EqualityChain chain_append(const EqualityChain& c1, const EqualityChain& c2) {
  if (c1.terms.empty() || c2.terms.empty()) throw ChainError("append: empty chain");
  if (!alpha_eq(c1.terms.back(), c2.terms.front())) {
    throw ChainError("append-mismatch: pivot terms differ");
  }
  EqualityChain out = c1;
  out.terms.insert(out.terms.end(), c2.terms.begin() + 1, c2.terms.end());
  out.links.insert(out.links.end(), c2.links.begin(), c2.links.end());
  return out;
}

EqualityChain chain_from_path(const ReductionPath& p) {
  EqualityChain out;
  out.terms.push_back(p.source);
  for (const Step& s : p.steps) {
    out.terms.push_back(s.target);
    out.links.push_back({Arrow::Right, s.redex});
  }
  return out;
}

EqualityChain chain_segment(const EqualityChain& c, std::size_t i, std::size_t j) {
  if (i > j || j > c.links.size()) {
    throw std::out_of_range("chain_segment: segment out of range");
  }
  EqualityChain out;
  out.terms.assign(c.terms.begin() + static_cast<std::ptrdiff_t>(i),
                   c.terms.begin() + static_cast<std::ptrdiff_t>(j + 1));
  out.links.assign(c.links.begin() + static_cast<std::ptrdiff_t>(i),
                   c.links.begin() + static_cast<std::ptrdiff_t>(j));
  return out;
}

bool certificate_valid(const JoinCertificate& cert, const TermPtr& m0, const TermPtr& mk) {
  return alpha_eq(cert.left_path.source, m0) && alpha_eq(cert.right_path.source, mk) &&
         alpha_eq(cert.left_path.endpoint(), cert.reduct) &&
         alpha_eq(cert.right_path.endpoint(), cert.reduct) && replays(cert.left_path) &&
         replays(cert.right_path);
}

std::string reduct_descriptor(std::size_t term_index, std::size_t stars) {
  return "M_" + std::to_string(term_index) + "^{" + std::to_string(stars) + "*}";
}

// The main lemma's induction, run left to right: after consuming links 0..i-1
// the path ends at M_i^{l_i*} where l_i counts the Left links seen so far.
// Right links are lifted step images; Left links contribute a lifted cofinal
// development and raise the star level by one.
ReductionPath chain_forward_path(const EqualityChain& c) {
  ReductionPath out(c.terms.front());
  std::size_t level = 0;
  for (std::size_t i = 0; i < c.links.size(); ++i) {
    const Step s = link_step(c, i);
    if (c.links[i].arrow == Arrow::Right) {
      out.append(mono_lift_path(path_of_step(s), level));
    } else {
      out.append(mono_lift_path(cofinal_step(s), level));
      ++level;
    }
  }
  return out;
}

std::pair<JoinCertificate, JoinCertificate> join_main(const EqualityChain& c) {
  validate_chain(c);
  const std::size_t k = c.length();
  const ArrowCounts n = chain_arrow_counts(c, 0, k);

  JoinCertificate for_m0;  // reduct M_0^{r*}
  for_m0.left_path = star_iter_path(c.terms.front(), 0, n.right);
  for_m0.right_path = chain_forward_path(chain_reverse(c));
  for_m0.reduct = for_m0.left_path.endpoint();
  for_m0.descriptor = reduct_descriptor(0, n.right);
  require(alpha_eq(for_m0.right_path.endpoint(), for_m0.reduct),
          "join_main: reversed chain path misses star_iter(M_0, r)");

  JoinCertificate for_mk;  // reduct M_k^{l*}
  for_mk.left_path = chain_forward_path(c);
  for_mk.right_path = star_iter_path(c.terms.back(), 0, n.left);
  for_mk.reduct = for_mk.right_path.endpoint();
  for_mk.descriptor = reduct_descriptor(k, n.left);
  require(alpha_eq(for_mk.left_path.endpoint(), for_mk.reduct),
          "join_main: chain path misses star_iter(M_k, l)");

  return {std::move(for_m0), std::move(for_mk)};
}

JoinCertificate join_refined(const EqualityChain& c) {
  validate_chain(c);
  const std::size_t k = c.length();
  const ArrowCounts total = chain_arrow_counts(c, 0, k);
  const std::size_t r = total.right;
  const std::size_t m_l = chain_arrow_counts(c, 0, r).left;
  require(m_l <= std::min(total.left, r) || k == 0, "join_refined: m_l exceeds min(l, r)");

  JoinCertificate cert;
  cert.descriptor = reduct_descriptor(r, m_l);
  cert.reduct = star_iter(c.terms[r], m_l);
  cert.left_path = chain_forward_path(chain_segment(c, 0, r));
  // The reversed suffix has exactly m_l Left arrows (#r[r,k] = #l[0,r]), so
  // its forward path also lands on M_r^{m_l*}.
  cert.right_path = chain_forward_path(chain_reverse(chain_segment(c, r, k)));
  require(alpha_eq(cert.left_path.endpoint(), cert.reduct) &&
              alpha_eq(cert.right_path.endpoint(), cert.reduct),
          "join_refined: crossed-point paths disagree");
  return cert;
}

JoinAllResult join_all(const EqualityChain& c) {
  validate_chain(c);
  const std::size_t k = c.length();
  const std::size_t r = chain_arrow_counts(c, 0, k).right;

  JoinAllResult out;
  out.r = r;
  out.m_l = chain_arrow_counts(c, 0, r).left;

  for (std::size_t p = 0; p <= k; ++p) {
    JoinCertificate cert;
    ReductionPath left = chain_forward_path(chain_segment(c, 0, p));
    ReductionPath right = chain_forward_path(chain_reverse(chain_segment(c, p, k)));
    const std::size_t left_stars = chain_arrow_counts(c, 0, p).left;
    const std::size_t right_stars = chain_arrow_counts(c, p, k).right;
    // One side already sits at the family's star level; the other catches up
    // with extra Gross-Knuth steps (p <= r makes left <= right and dually).
    const std::size_t stars = std::max(left_stars, right_stars);
    left.append(star_iter_path(c.terms[p], left_stars, stars));
    right.append(star_iter_path(c.terms[p], right_stars, stars));
    cert.descriptor = reduct_descriptor(p, stars);
    cert.reduct = left.endpoint();
    require(alpha_eq(right.endpoint(), cert.reduct), "join_all: family paths disagree");
    cert.left_path = std::move(left);
    cert.right_path = std::move(right);
    out.family.push_back(std::move(cert));
  }

  for (std::size_t i = 0; i <= k; ++i) {
    ReductionPath path = i <= r ? chain_forward_path(chain_segment(c, i, r))
                                : chain_forward_path(chain_reverse(chain_segment(c, r, i)));
    const std::size_t have = i <= r ? chain_arrow_counts(c, i, r).left
                                    : chain_arrow_counts(c, r, i).right;
    require(have <= out.m_l, "join_all: segment star level exceeds the crossed point's");
    path.append(star_iter_path(c.terms[r], have, out.m_l));
    out.to_crossed.push_back(std::move(path));
  }
  return out;
}

std::pair<JoinCertificate, JoinCertificate> join_reduction_peak(const ReductionPath& left,
                                                                const ReductionPath& right) {
  if (!alpha_eq(left.source, right.source)) {
    throw ChainError("peak-mismatch: the two paths start from different terms");
  }
  const std::size_t n = left.length();
  const std::size_t m = right.length();
  if (n > m) {
    throw ChainError("order-violation: left path longer than right (" + std::to_string(n) +
                     " > " + std::to_string(m) + ")");
  }
  const EqualityChain c = chain_append(chain_reverse(chain_from_path(left)),
                                       chain_from_path(right));

  JoinCertificate first;  // reduct Q_m^{n*}
  first.descriptor = "Q_" + std::to_string(m) + "^{" + std::to_string(n) + "*}";
  first.left_path = chain_forward_path(c);
  first.right_path = star_iter_path(right.endpoint(), 0, n);
  first.reduct = first.right_path.endpoint();
  require(alpha_eq(first.left_path.endpoint(), first.reduct),
          "join_reduction_peak: P_n path misses Q_m^{n*}");

  JoinCertificate second = join_refined(c);  // crossed point is Q_{m-n}^{n*}
  second.descriptor = "Q_" + std::to_string(m - n) + "^{" + std::to_string(n) + "*}";
  return {std::move(first), std::move(second)};
}

ReductionPath development_claim_path(const ReductionPath& p) {
  if (p.steps.empty()) return gross_knuth_path(p.source);

  // Locate the last contraction of a redex that is not residual-descended
  // from Redex(source).
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t last_new = npos;
  RedexSet old = redexes(p.source);
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    if (!old.contains(p.steps[i].redex)) last_new = i;
    old = residuals(MarkedTerm{p.steps[i].source, old}, p.steps[i].redex);
  }

  if (last_new == npos) {
    // The whole path is a development of Redex(source); completing it lands
    // on the Takahashi translation.
    ReductionPath out = minimal_complete_development(MarkedTerm{p.endpoint(), old});
    require(alpha_eq(out.endpoint(), takahashi_star(p.source)),
            "development_claim_path: completed development misses M*");
    return out;
  }

  // The suffix from the last new step is a development of Redex(M_t): the
  // step itself contracts a redex of M_t, and every later step is old
  // relative to the source, hence old relative to M_t as well.
  const TermPtr mt = p.steps[last_new].source;
  RedexSet marks = redexes(mt);
  for (std::size_t i = last_new; i < p.steps.size(); ++i) {
    marks = residuals(MarkedTerm{p.steps[i].source, marks}, p.steps[i].redex);
  }
  ReductionPath out = minimal_complete_development(MarkedTerm{p.endpoint(), marks});
  require(alpha_eq(out.endpoint(), takahashi_star(mt)),
          "development_claim_path: completed suffix misses M_t*");

  ReductionPath prefix(p.source);
  prefix.steps.assign(p.steps.begin(), p.steps.begin() + static_cast<std::ptrdiff_t>(last_new));
  out.append(mono_lift_path(development_claim_path(prefix), 1));
  return out;
}

ImprovedJoin join_improved(const ReductionPath& left, const ReductionPath& right) {
  if (!alpha_eq(left.source, right.source)) {
    throw ChainError("peak-mismatch: the two paths start from different terms");
  }
  ImprovedJoin out;
  out.a = count_new_redex_contractions(left);
  out.b = count_new_redex_contractions(right);

  // P_n ->> M^{(a+1)*} ->> Q_m^{(a+1)*}, met by Q_m's star iterates.
  out.first.descriptor =
      "Q_" + std::to_string(right.length()) + "^{" + std::to_string(out.a + 1) + "*}";
  out.first.left_path = development_claim_path(left);
  out.first.left_path.append(mono_lift_path(right, out.a + 1));
  out.first.right_path = star_iter_path(right.endpoint(), 0, out.a + 1);
  out.first.reduct = out.first.right_path.endpoint();
  require(alpha_eq(out.first.left_path.endpoint(), out.first.reduct),
          "join_improved: P_n path misses Q_m^{(a+1)*}");

  out.second.descriptor =
      "P_" + std::to_string(left.length()) + "^{" + std::to_string(out.b + 1) + "*}";
  out.second.right_path = development_claim_path(right);
  out.second.right_path.append(mono_lift_path(left, out.b + 1));
  out.second.left_path = star_iter_path(left.endpoint(), 0, out.b + 1);
  out.second.reduct = out.second.left_path.endpoint();
  require(alpha_eq(out.second.right_path.endpoint(), out.second.reduct),
          "join_improved: Q_m path misses P_n^{(b+1)*}");
  return out;
}

std::string arrows_to_string(const std::vector<Arrow>& arrows) {
  std::string s;
  for (Arrow a : arrows) s += (a == Arrow::Right ? "→" : "←");
  return s;
}

PatternTable enumerate_patterns(std::size_t k, std::size_t max_k) {
  if (k > max_k) {
    throw ResourceCapError("enumerate_patterns: k = " + std::to_string(k) + " exceeds cap " +
                           std::to_string(max_k));
  }
  PatternTable table;
  table.k = k;
  table.class_sizes.assign(k + 1, 0);

  std::vector<PatternRow> rows;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
    PatternRow row;
    for (std::size_t i = 0; i < k; ++i) {
      // Bit 0 is the first link; set = Right.
      const bool is_right = (bits >> i) & 1;
      row.arrows.push_back(is_right ? Arrow::Right : Arrow::Left);
      if (is_right) ++row.r;
    }
    row.l = k - row.r;
    for (std::size_t i = 0; i < row.r; ++i) {
      if (row.arrows[i] == Arrow::Left) ++row.m_l;
    }
    row.main_first = reduct_descriptor(0, row.r);
    row.main_second = reduct_descriptor(k, row.l);
    row.crossed = reduct_descriptor(row.r, row.m_l);
    ++table.class_sizes[row.r];
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const PatternRow& a, const PatternRow& b) {
    return a.r != b.r ? a.r < b.r : a.arrows < b.arrows;
  });
  table.rows = std::move(rows);
  return table;
}

}  // namespace lamcr
