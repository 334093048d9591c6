#pragma once

#include <string>
#include <vector>

#include "lamcr/term.hpp"

namespace lamcr {

// One beta step with its contracted redex position as witness.
struct Step {
  TermPtr source;
  Position redex;
  TermPtr target;
};

// A witnessed sequence of beta steps. `source` anchors empty paths.
struct ReductionPath {
  TermPtr source;
  std::vector<Step> steps;

  ReductionPath() = default;
  explicit ReductionPath(TermPtr src) : source(std::move(src)) {}

  std::size_t length() const { return steps.size(); }
  const TermPtr& endpoint() const { return steps.empty() ? source : steps.back().target; }

  void append(Step s);                 // checks chaining (alpha) and the path cap
  void append(const ReductionPath& p);
};

// Re-executes every contraction; true iff all steps are genuine and chained.
bool replays(const ReductionPath& p);

// A term together with a set of marked redexes.
struct MarkedTerm {
  TermPtr term;
  RedexSet marks;
};

Step contract(const TermPtr& t, const Position& p);

// Simultaneous contraction of all redexes (one Gross-Knuth step).
TermPtr takahashi_star(const TermPtr& t);
TermPtr star_iter(const TermPtr& t, std::size_t n);

// Residuals of the marked set after contracting the redex at r.
RedexSet residuals(const MarkedTerm& marked, const Position& r);

// Inside-out development of the marked set; length <= |marks|.
ReductionPath minimal_complete_development(const MarkedTerm& marked);

// Path t ->> t* as the minimal complete development of all redexes.
ReductionPath gross_knuth_path(const TermPtr& t);

// Path t ->> star_iter(t, to_level) starting from star_iter(t, from_level),
// one Gross-Knuth macro step per level.
ReductionPath star_iter_path(const TermPtr& t, std::size_t from_level, std::size_t to_level);

// For a step M -> N: path N ->> M* (development of the residuals of Redex(M)).
ReductionPath cofinal_step(const Step& s);

// For a path M ->>^n N: path N ->> M^{n*}.
ReductionPath cofinal_path(const ReductionPath& p);

// Path from substitute(m*, x, n*) to substitute(m, x, n)*.
ReductionPath star_subst_path(const TermPtr& m, const std::string& x, const TermPtr& n);

// For a step M -> N: path M* ->> N*.
ReductionPath mono_lift(const Step& s);

// Lifts a whole path M ->> N to M^{n*} ->> N^{n*}.
ReductionPath mono_lift_path(const ReductionPath& p, std::size_t n);

// Given paths p1: M1 ->> N1 and p2: M2 ->> N2, the composite path
// M1[x:=M2] ->> N1[x:=N2]: the copies of p2 first (left to right), then p1
// mapped through the substitution. Length = |p1| + #(x in M1) * |p2|.
ReductionPath subst_path(const ReductionPath& p1, const std::string& x,
                         const ReductionPath& p2);

// Re-roots a path on a subterm into a surrounding term; `whole`'s subterm at
// `prefix` must be the path's source.
ReductionPath embed_path(const ReductionPath& p, const TermPtr& whole, const Position& prefix);

ReductionPath path_of_step(const Step& s);

// Strategy helpers. Both short-circuit instead of enumerating all redexes,
// so they stay cheap on terms whose normal prefixes are large.
// Leftmost-outermost redex (position-order least).
bool leftmost_redex(const TermPtr& t, Position& out);
// Leftmost-innermost redex (a redex containing no other redex).
bool innermost_redex(const TermPtr& t, Position& out);

// Redexes of s.target that are not residuals of any redex of s.source.
RedexSet new_redexes(const Step& s);

// Number of steps whose contracted redex does not trace back to the path's
// source through residuals.
std::size_t count_new_redex_contractions(const ReductionPath& p);

}  // namespace lamcr
