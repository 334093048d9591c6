#include "lamcr/gen.hpp"

namespace lamcr {

namespace {

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

TermPtr gen_rec(Rng& rng, const GenConfig& cfg, std::size_t budget, std::uint32_t depth) {
  auto var = [&]() -> TermPtr {
    // Bound variables in scope and the free pool are picked uniformly.
    const std::size_t n = depth + cfg.free_pool.size();
    const std::size_t i = pick(rng, n);
    if (i < depth) return Term::bound_var(static_cast<std::uint32_t>(i));
    return Term::free_var(cfg.free_pool[i - depth]);
  };
  if (budget < 3) return var();
  const unsigned total = cfg.weight_abs + cfg.weight_app + cfg.weight_var;
  const unsigned roll = static_cast<unsigned>(pick(rng, total));
  if (roll < cfg.weight_abs) {
    return Term::lam("x", gen_rec(rng, cfg, budget - 1, depth + 1));
  }
  if (roll < cfg.weight_abs + cfg.weight_app) {
    const std::size_t left = 1 + pick(rng, budget - 2);  // 1..budget-2
    return Term::app(gen_rec(rng, cfg, left, depth),
                     gen_rec(rng, cfg, budget - 1 - left, depth));
  }
  return var();
}

}  // namespace

TermPtr random_term(Rng& rng, const GenConfig& cfg) {
  const std::size_t budget = 1 + pick(rng, cfg.max_size);
  return gen_rec(rng, cfg, budget, 0);
}

ReductionPath random_path(Rng& rng, const TermPtr& start, std::size_t max_len,
                          const GenConfig& cfg) {
  ReductionPath p(start);
  for (std::size_t i = 0; i < max_len; ++i) {
    const RedexSet rs = redexes(p.endpoint());
    if (rs.empty()) break;
    const Step s = contract(p.endpoint(), rs.positions[pick(rng, rs.count())]);
    if (s.target->size() > cfg.growth_limit) break;
    p.append(s);
  }
  return p;
}

EqualityChain random_chain(Rng& rng, std::size_t k, const GenConfig& cfg) {
  EqualityChain c;
  c.terms.push_back(random_term(rng, cfg));
  std::vector<Step> undo;  // steps we walked down and can retrace upward
  for (std::size_t i = 0; i < k; ++i) {
    const TermPtr cur = c.terms.back();
    const RedexSet rs = redexes(cur);
    const bool go_up = !undo.empty() && (rs.empty() || pick(rng, 2) == 0);
    if (go_up) {
      const Step s = undo.back();
      undo.pop_back();
      c.terms.push_back(s.source);
      c.links.push_back({Arrow::Left, s.redex});
      continue;
    }
    if (rs.empty()) break;
    const Step s = contract(cur, rs.positions[pick(rng, rs.count())]);
    if (s.target->size() > cfg.growth_limit) break;
    c.terms.push_back(s.target);
    c.links.push_back({Arrow::Right, s.redex});
    undo.push_back(s);
  }
  return c;
}

std::pair<ReductionPath, ReductionPath> random_peak(Rng& rng, std::size_t n, std::size_t m,
                                                    const GenConfig& cfg) {
  TermPtr source = random_term(rng, cfg);
  ReductionPath left = random_path(rng, source, n, cfg);
  ReductionPath right = random_path(rng, source, m, cfg);
  if (left.length() > right.length()) std::swap(left, right);
  return {std::move(left), std::move(right)};
}

}  // namespace lamcr
