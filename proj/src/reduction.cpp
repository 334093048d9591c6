#include "lamcr/reduction.hpp"

#include <algorithm>
#include <stdexcept>

#include "lamcr/caps.hpp"

namespace lamcr {

namespace {

std::size_t count_binder_occurrences(const TermPtr& t, std::uint32_t depth) {
  switch (t->tag()) {
    case Term::Tag::FreeVar: return 0;
    case Term::Tag::BoundVar: return t->index() == depth ? 1 : 0;
    case Term::Tag::Lam: return count_binder_occurrences(t->body(), depth + 1);
    case Term::Tag::App:
      return count_binder_occurrences(t->fun(), depth) +
             count_binder_occurrences(t->arg(), depth);
  }
  return 0;
}

// Size of body[0:=arg] before building it (substitution size identity).
std::size_t contractum_size(const TermPtr& body, const TermPtr& arg) {
  const std::size_t occ = count_binder_occurrences(body, 0);
  return body->size() + occ * (arg->size() - 1);
}

void check_term_cap(std::size_t nodes) {
  if (nodes > caps().term_nodes) {
    throw ResourceCapError("term size cap exceeded (" + std::to_string(nodes) + " nodes)");
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw std::logic_error(what);
}

}  // namespace

// ---------------------------------------------------------------------------
// Paths

void ReductionPath::append(Step s) {
  if (steps.size() + 1 > caps().path_steps) {
    throw ResourceCapError("path length cap exceeded");
  }
  require(alpha_eq(endpoint(), s.source), "ReductionPath::append: step not chained");
  steps.push_back(std::move(s));
}

void ReductionPath::append(const ReductionPath& p) {
  require(alpha_eq(endpoint(), p.source), "ReductionPath::append: path not chained");
  if (steps.size() + p.steps.size() > caps().path_steps) {
    throw ResourceCapError("path length cap exceeded");
  }
  steps.insert(steps.end(), p.steps.begin(), p.steps.end());
}

bool replays(const ReductionPath& p) {
  TermPtr cur = p.source;
  for (const Step& s : p.steps) {
    if (!alpha_eq(cur, s.source)) return false;
    TermPtr sub;
    try {
      sub = subterm_at(s.source, s.redex);
    } catch (const InvalidPositionError&) {
      return false;
    }
    if (!sub->is_redex()) return false;
    const Step redone = contract(s.source, s.redex);
    if (!alpha_eq(redone.target, s.target)) return false;
    cur = s.target;
  }
  return true;
}

ReductionPath path_of_step(const Step& s) {
  ReductionPath p(s.source);
  p.append(s);
  return p;
}

// ---------------------------------------------------------------------------
// Contraction and Takahashi translation

Step contract(const TermPtr& t, const Position& p) {
  const TermPtr sub = subterm_at(t, p);
  if (!sub->is_redex()) {
    throw InvalidPositionError("not a redex position: " + p.to_string());
  }
  const TermPtr body = sub->fun()->body();
  const TermPtr arg = sub->arg();
  check_term_cap(t->size() - sub->size() + contractum_size(body, arg));
  return Step{t, p, replace_at(t, p, instantiate(body, arg))};
}

TermPtr takahashi_star(const TermPtr& t) {
  switch (t->tag()) {
    case Term::Tag::FreeVar:
    case Term::Tag::BoundVar:
      return t;
    case Term::Tag::Lam:
      return Term::lam(t->name(), takahashi_star(t->body()));
    case Term::Tag::App: {
      if (t->is_redex()) {
        const TermPtr body = takahashi_star(t->fun()->body());
        const TermPtr arg = takahashi_star(t->arg());
        check_term_cap(contractum_size(body, arg));
        return instantiate(body, arg);
      }
      TermPtr f = takahashi_star(t->fun());
      TermPtr a = takahashi_star(t->arg());
      check_term_cap(1 + f->size() + a->size());
      return Term::app(std::move(f), std::move(a));
    }
  }
  return t;
}

TermPtr star_iter(const TermPtr& t, std::size_t n) {
  TermPtr cur = t;
  for (std::size_t i = 0; i < n; ++i) cur = takahashi_star(cur);
  return cur;
}

// ---------------------------------------------------------------------------
// Residuals and developments

RedexSet residuals(const MarkedTerm& marked, const Position& r) {
  const TermPtr sub = subterm_at(marked.term, r);
  if (!sub->is_redex()) {
    throw InvalidPositionError("residuals: not a redex position: " + r.to_string());
  }
  // Occurrences of the contracted binder inside the redex body; the argument
  // is copied to exactly these positions.
  const std::vector<Position> copies = binder_var_positions(sub->fun()->body());

  const Position fun_body = Position{}.extended(Dir::Fun).extended(Dir::Body);
  RedexSet out;
  for (const Position& s : marked.marks) {
    switch (subterm_relation(s, r)) {
      case SubtermRel::Equal:
        break;  // the contracted redex never survives
      case SubtermRel::Disjoint:
      case SubtermRel::SecondInsideFirst:  // r strictly inside s
        out.insert(s);
        break;
      case SubtermRel::FirstInsideSecond: {  // s strictly inside r
        const Position tail = s.suffix_after(r);
        if (fun_body.is_prefix_of(tail)) {
          // Inside the body: lands where the body lands.
          out.insert(r.concat(tail.suffix_after(fun_body)));
        } else if (!tail.path.empty() && tail.path.front() == Dir::Arg) {
          // Inside the argument: replicated to every substituted copy.
          Position rest;
          rest.path.assign(tail.path.begin() + 1, tail.path.end());
          for (const Position& o : copies) out.insert(r.concat(o).concat(rest));
        } else {
          throw std::logic_error("residuals: mark inside redex but not in body or argument");
        }
        break;
      }
    }
  }
  return out;
}

ReductionPath minimal_complete_development(const MarkedTerm& marked) {
  ReductionPath path(marked.term);
  TermPtr cur = marked.term;
  RedexSet marks = marked.marks;
  while (!marks.empty()) {
    // Minimal = contains no other mark; marks are sorted so a mark's proper
    // extensions follow it directly.
    Position pick;
    bool found = false;
    for (const Position& m : marks) {
      bool has_inner = false;
      for (const Position& other : marks) {
        if (&other != &m && m.is_prefix_of(other)) {
          has_inner = true;
          break;
        }
      }
      if (!has_inner) {
        pick = m;  // sorted order makes the first hit the lexicographic least
        found = true;
        break;
      }
    }
    require(found, "minimal_complete_development: no minimal mark");
    RedexSet next = residuals(MarkedTerm{cur, marks}, pick);
    require(next.count() < marks.count(),
            "minimal_complete_development: mark duplication on a minimal redex");
    Step s = contract(cur, pick);
    cur = s.target;
    path.append(std::move(s));
    marks = std::move(next);
  }
  return path;
}

ReductionPath gross_knuth_path(const TermPtr& t) {
  ReductionPath p = minimal_complete_development(MarkedTerm{t, redexes(t)});
  require(alpha_eq(p.endpoint(), takahashi_star(t)),
          "gross_knuth_path: endpoint differs from the Takahashi translation");
  return p;
}

ReductionPath star_iter_path(const TermPtr& t, std::size_t from_level, std::size_t to_level) {
  TermPtr cur = star_iter(t, from_level);
  ReductionPath out(cur);
  for (std::size_t lvl = from_level; lvl < to_level; ++lvl) {
    ReductionPath macro = gross_knuth_path(cur);
    cur = macro.endpoint();
    out.append(macro);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cofinal constructions

ReductionPath cofinal_step(const Step& s) {
  RedexSet marks = residuals(MarkedTerm{s.source, redexes(s.source)}, s.redex);
  ReductionPath p = minimal_complete_development(MarkedTerm{s.target, marks});
  require(alpha_eq(p.endpoint(), takahashi_star(s.source)),
          "cofinal_step: development does not reach the source's translation");
  return p;
}

ReductionPath cofinal_path(const ReductionPath& p) {
  if (p.steps.empty()) return ReductionPath(p.source);
  ReductionPath prefix(p.source);
  prefix.steps.assign(p.steps.begin(), p.steps.end() - 1);
  ReductionPath out = cofinal_step(p.steps.back());  // N ->> N_{n-1}*
  out.append(mono_lift_path(cofinal_path(prefix), 1));
  return out;
}

// ---------------------------------------------------------------------------
// Path combinators

ReductionPath embed_path(const ReductionPath& p, const TermPtr& whole, const Position& prefix) {
  require(alpha_eq(subterm_at(whole, prefix), p.source), "embed_path: source mismatch");
  TermPtr cur = replace_at(whole, prefix, p.source);
  ReductionPath out(cur);
  for (const Step& s : p.steps) {
    TermPtr next = replace_at(cur, prefix, s.target);
    out.append(Step{cur, prefix.concat(s.redex), next});
    cur = next;
  }
  return out;
}

ReductionPath subst_path(const ReductionPath& p1, const std::string& x,
                         const ReductionPath& p2) {
  const TermPtr& a = p1.source;
  const TermPtr& d = p2.endpoint();
  const std::vector<Position> occs = free_var_positions(a, x);

  TermPtr cur = substitute(a, x, p2.source);
  check_term_cap(cur->size());
  ReductionPath out(cur);
  // Copies first, left to right: each occurrence runs p2 in place.
  for (const Position& o : occs) {
    for (const Step& s : p2.steps) {
      TermPtr next = replace_at(cur, o, s.target);
      out.append(Step{cur, o.concat(s.redex), next});
      cur = next;
    }
  }
  // Then the function path, mapped through [x := endpoint(p2)].
  for (const Step& s : p1.steps) {
    TermPtr src = substitute(s.source, x, d);
    TermPtr tgt = substitute(s.target, x, d);
    check_term_cap(tgt->size());
    out.append(Step{src, s.redex, tgt});
  }
  return out;
}

namespace {

// Rebuilds a path on opened bodies as a path on the enclosing abstractions.
ReductionPath wrap_lambda(const ReductionPath& p, const std::string& fresh,
                          const std::string& hint) {
  ReductionPath out(close_over(p.source, fresh, hint));
  TermPtr cur = out.source;
  for (const Step& s : p.steps) {
    TermPtr tgt = close_over(s.target, fresh, hint);
    Position pos;
    pos.path.push_back(Dir::Body);
    out.append(Step{cur, pos.concat(s.redex), tgt});
    cur = tgt;
  }
  return out;
}

ReductionPath empty_path(TermPtr t) { return ReductionPath(std::move(t)); }

}  // namespace

ReductionPath star_subst_path(const TermPtr& m, const std::string& x, const TermPtr& n) {
  switch (m->tag()) {
    case Term::Tag::FreeVar:
    case Term::Tag::BoundVar:
      // Both sides are n* (when m is x) or m itself.
      return empty_path(substitute(takahashi_star(m), x, takahashi_star(n)));
    case Term::Tag::Lam: {
      const std::string u = fresh_name();
      ReductionPath inner = star_subst_path(open_body(m, u), x, n);
      return wrap_lambda(inner, u, m->name());
    }
    case Term::Tag::App: {
      const TermPtr& f = m->fun();
      const TermPtr& arg = m->arg();
      if (m->is_redex()) {
        const std::string u = fresh_name();
        ReductionPath fun_path = star_subst_path(open_body(f, u), x, n);
        ReductionPath arg_path = star_subst_path(arg, x, n);
        return subst_path(fun_path, u, arg_path);
      }
      ReductionPath fun_path = star_subst_path(f, x, n);
      ReductionPath arg_path = star_subst_path(arg, x, n);
      TermPtr whole = Term::app(fun_path.source, arg_path.source);
      check_term_cap(whole->size());
      ReductionPath out = embed_path(fun_path, whole, Position{}.extended(Dir::Fun));
      out.append(embed_path(arg_path, out.endpoint(), Position{}.extended(Dir::Arg)));
      // If substitution turned the head into an abstraction, one more root
      // step reaches the translation of the substituted application.
      if (out.endpoint()->is_redex() && substitute(f, x, n)->is_lam()) {
        out.append(contract(out.endpoint(), Position{}));
      }
      return out;
    }
  }
  return empty_path(m);
}

ReductionPath mono_lift(const Step& s) {
  const TermPtr& m = s.source;
  const Position& p = s.redex;
  if (p.path.empty()) {
    require(m->is_redex(), "mono_lift: root step on non-redex");
    const std::string u = fresh_name();
    return star_subst_path(open_body(m->fun(), u), u, m->arg());
  }
  const Dir head = p.path.front();
  Position rest;
  rest.path.assign(p.path.begin() + 1, p.path.end());
  switch (head) {
    case Dir::Body: {
      const std::string u = fresh_name();
      ReductionPath inner = mono_lift(contract(open_body(m, u), rest));
      return wrap_lambda(inner, u, m->name());
    }
    case Dir::Fun: {
      if (m->is_redex()) {
        // Step inside the body of the redex's abstraction.
        require(!rest.path.empty() && rest.path.front() == Dir::Body,
                "mono_lift: Fun step into abstraction must continue with Body");
        Position in_body;
        in_body.path.assign(rest.path.begin() + 1, rest.path.end());
        const std::string u = fresh_name();
        ReductionPath inner = mono_lift(contract(open_body(m->fun(), u), in_body));
        return subst_path(inner, u, empty_path(takahashi_star(m->arg())));
      }
      const Step fun_step = contract(m->fun(), rest);
      ReductionPath inner = mono_lift(fun_step);
      TermPtr whole = Term::app(inner.source, takahashi_star(m->arg()));
      check_term_cap(whole->size());
      ReductionPath out = embed_path(inner, whole, Position{}.extended(Dir::Fun));
      if (fun_step.target->is_lam()) {
        // The head became an abstraction, so N itself is a redex and N* needs
        // the final root contraction.
        out.append(contract(out.endpoint(), Position{}));
      }
      return out;
    }
    case Dir::Arg: {
      ReductionPath inner = mono_lift(contract(m->arg(), rest));
      if (m->is_redex()) {
        const std::string u = fresh_name();
        TermPtr body_star = takahashi_star(open_body(m->fun(), u));
        return subst_path(empty_path(body_star), u, inner);
      }
      TermPtr whole = Term::app(takahashi_star(m->fun()), inner.source);
      check_term_cap(whole->size());
      return embed_path(inner, whole, Position{}.extended(Dir::Arg));
    }
  }
  return empty_path(m);
}

ReductionPath mono_lift_path(const ReductionPath& p, std::size_t n) {
  ReductionPath cur = p;
  for (std::size_t lvl = 0; lvl < n; ++lvl) {
    ReductionPath next(takahashi_star(cur.source));
    for (const Step& s : cur.steps) {
      ReductionPath lifted = mono_lift(s);
      require(alpha_eq(lifted.endpoint(), takahashi_star(s.target)),
              "mono_lift: endpoint differs from the target's translation");
      next.append(lifted);
    }
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Strategy helpers

namespace {

bool find_leftmost(const TermPtr& t, std::vector<Dir>& acc) {
  if (t->is_redex()) return true;
  switch (t->tag()) {
    case Term::Tag::App:
      acc.push_back(Dir::Fun);
      if (find_leftmost(t->fun(), acc)) return true;
      acc.back() = Dir::Arg;
      if (find_leftmost(t->arg(), acc)) return true;
      acc.pop_back();
      return false;
    case Term::Tag::Lam:
      acc.push_back(Dir::Body);
      if (find_leftmost(t->body(), acc)) return true;
      acc.pop_back();
      return false;
    default:
      return false;
  }
}

bool find_innermost(const TermPtr& t, std::vector<Dir>& acc) {
  switch (t->tag()) {
    case Term::Tag::App:
      acc.push_back(Dir::Fun);
      if (find_innermost(t->fun(), acc)) return true;
      acc.back() = Dir::Arg;
      if (find_innermost(t->arg(), acc)) return true;
      acc.pop_back();
      return t->is_redex();
    case Term::Tag::Lam:
      acc.push_back(Dir::Body);
      if (find_innermost(t->body(), acc)) return true;
      acc.pop_back();
      return false;
    default:
      return false;
  }
}

}  // namespace

bool leftmost_redex(const TermPtr& t, Position& out) {
  std::vector<Dir> acc;
  if (!find_leftmost(t, acc)) return false;
  out = Position(std::move(acc));
  return true;
}

bool innermost_redex(const TermPtr& t, Position& out) {
  std::vector<Dir> acc;
  if (!find_innermost(t, acc)) return false;
  out = Position(std::move(acc));
  return true;
}

// ---------------------------------------------------------------------------
// New redexes

RedexSet new_redexes(const Step& s) {
  const RedexSet survivors = residuals(MarkedTerm{s.source, redexes(s.source)}, s.redex);
  RedexSet out;
  for (const Position& p : redexes(s.target)) {
    if (!survivors.contains(p)) out.insert(p);
  }
  return out;
}

std::size_t count_new_redex_contractions(const ReductionPath& p) {
  RedexSet old = redexes(p.source);
  std::size_t count = 0;
  for (const Step& s : p.steps) {
    if (!old.contains(s.redex)) ++count;
    old = residuals(MarkedTerm{s.source, old}, s.redex);
  }
  return count;
}

}  // namespace lamcr
