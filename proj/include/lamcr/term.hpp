#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace lamcr {

// One navigation step from a node to a child.
enum class Dir : std::uint8_t { Fun = 0, Arg = 1, Body = 2 };

// Path from a term's root to a subterm occurrence. Totally ordered
// lexicographically (shorter prefix first) for deterministic tie-breaking.
struct Position {
  std::vector<Dir> path;

  Position() = default;
  explicit Position(std::vector<Dir> p) : path(std::move(p)) {}

  auto operator<=>(const Position&) const = default;

  bool empty() const { return path.empty(); }
  std::size_t depth() const { return path.size(); }
  bool is_prefix_of(const Position& other) const;

  Position extended(Dir d) const;
  Position concat(const Position& tail) const;
  // Remainder after dropping a prefix; prefix must actually be one.
  Position suffix_after(const Position& prefix) const;

  std::string to_string() const;           // "root" or "Fun.Body"
  static Position from_string(const std::string& s);
};

enum class SubtermRel { Equal, FirstInsideSecond, SecondInsideFirst, Disjoint };
SubtermRel subterm_relation(const Position& p, const Position& q);

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable lambda term. Binders are nameless (de Bruijn indices) so
// alpha-equality is structural; the binder hint is only for printing.
class Term {
 public:
  enum class Tag : std::uint8_t { FreeVar, BoundVar, Lam, App };

  Tag tag() const { return tag_; }
  std::size_t size() const { return size_; }

  const std::string& name() const { return name_; }     // FreeVar name / Lam hint
  std::uint32_t index() const { return index_; }        // BoundVar
  const TermPtr& body() const { return left_; }         // Lam
  const TermPtr& fun() const { return left_; }          // App
  const TermPtr& arg() const { return right_; }         // App

  bool is_lam() const { return tag_ == Tag::Lam; }
  bool is_app() const { return tag_ == Tag::App; }
  bool is_redex() const { return tag_ == Tag::App && left_->tag_ == Tag::Lam; }

  static TermPtr free_var(std::string name);
  static TermPtr bound_var(std::uint32_t index);
  static TermPtr lam(std::string hint, TermPtr body);
  static TermPtr app(TermPtr fun, TermPtr arg);

 private:
  Term() = default;
  Tag tag_ = Tag::FreeVar;
  std::uint32_t index_ = 0;
  std::string name_;
  TermPtr left_, right_;
  std::size_t size_ = 1;
};

std::size_t size(const TermPtr& t);
std::size_t free_occurrences(const TermPtr& t, const std::string& x);
bool alpha_eq(const TermPtr& a, const TermPtr& b);

// Capture-avoiding substitution of n for the free variable x in m.
// n must carry no dangling bound indices (every API-level term does).
TermPtr substitute(const TermPtr& m, const std::string& x, const TermPtr& n);

// Beta-contraction of a binder body against an argument: replaces index 0,
// shifting the argument's free indices under inner binders as needed.
TermPtr instantiate(const TermPtr& body, const TermPtr& arg);

// Open a Lam body with a fresh free variable / close a free variable back
// into a binder. open_body(close-based paths) keeps recursion under binders
// first-order.
TermPtr open_body(const TermPtr& lam_term, const std::string& fresh);
TermPtr close_over(const TermPtr& t, const std::string& name, std::string hint = "");

// Deterministic fresh names ("$0", "$1", ...) that cannot collide with
// parsed identifiers.
std::string fresh_name();

bool valid_position(const TermPtr& t, const Position& p);
TermPtr subterm_at(const TermPtr& t, const Position& p);
TermPtr replace_at(const TermPtr& t, const Position& p, const TermPtr& sub);

// Positions of the free occurrences of x, in lexicographic order.
std::vector<Position> free_var_positions(const TermPtr& t, const std::string& x);
// Positions (within a Lam body) of the occurrences of that Lam's own binder.
std::vector<Position> binder_var_positions(const TermPtr& body);

// Ordered set of redex positions of one term.
struct RedexSet {
  std::vector<Position> positions;  // sorted, unique

  bool contains(const Position& p) const;
  void insert(Position p);
  std::size_t count() const { return positions.size(); }
  bool empty() const { return positions.empty(); }

  auto begin() const { return positions.begin(); }
  auto end() const { return positions.end(); }
};

RedexSet redexes(const TermPtr& t);

}  // namespace lamcr
