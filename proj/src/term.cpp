#include "lamcr/term.hpp"

#include <algorithm>
#include <atomic>

#include "lamcr/caps.hpp"

namespace lamcr {

Caps& caps() {
  static Caps instance;
  return instance;
}

// ---------------------------------------------------------------------------
// Position

bool Position::is_prefix_of(const Position& other) const {
  if (path.size() > other.path.size()) return false;
  return std::equal(path.begin(), path.end(), other.path.begin());
}

Position Position::extended(Dir d) const {
  Position out = *this;
  out.path.push_back(d);
  return out;
}

Position Position::concat(const Position& tail) const {
  Position out = *this;
  out.path.insert(out.path.end(), tail.path.begin(), tail.path.end());
  return out;
}

Position Position::suffix_after(const Position& prefix) const {
  Position out;
  out.path.assign(path.begin() + static_cast<std::ptrdiff_t>(prefix.path.size()), path.end());
  return out;
}

std::string Position::to_string() const {
  if (path.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    switch (path[i]) {
      case Dir::Fun: out += "Fun"; break;
      case Dir::Arg: out += "Arg"; break;
      case Dir::Body: out += "Body"; break;
    }
  }
  return out;
}

Position Position::from_string(const std::string& s) {
  Position out;
  if (s == "root" || s.empty()) return out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = s.find('.', i);
    if (j == std::string::npos) j = s.size();
    const std::string word = s.substr(i, j - i);
    if (word == "Fun") {
      out.path.push_back(Dir::Fun);
    } else if (word == "Arg") {
      out.path.push_back(Dir::Arg);
    } else if (word == "Body") {
      out.path.push_back(Dir::Body);
    } else {
      throw InvalidPositionError("bad position component '" + word + "'");
    }
    i = j + 1;
  }
  return out;
}

SubtermRel subterm_relation(const Position& p, const Position& q) {
  if (p == q) return SubtermRel::Equal;
  if (q.is_prefix_of(p)) return SubtermRel::FirstInsideSecond;
  if (p.is_prefix_of(q)) return SubtermRel::SecondInsideFirst;
  return SubtermRel::Disjoint;
}

// ---------------------------------------------------------------------------
// Term construction

TermPtr Term::free_var(std::string name) {
  auto t = std::shared_ptr<Term>(new Term());
  t->tag_ = Tag::FreeVar;
  t->name_ = std::move(name);
  t->size_ = 1;
  return t;
}

TermPtr Term::bound_var(std::uint32_t index) {
  auto t = std::shared_ptr<Term>(new Term());
  t->tag_ = Tag::BoundVar;
  t->index_ = index;
  t->size_ = 1;
  return t;
}

TermPtr Term::lam(std::string hint, TermPtr body) {
  auto t = std::shared_ptr<Term>(new Term());
  t->tag_ = Tag::Lam;
  t->name_ = std::move(hint);
  t->size_ = 1 + body->size();
  t->left_ = std::move(body);
  return t;
}

TermPtr Term::app(TermPtr fun, TermPtr arg) {
  auto t = std::shared_ptr<Term>(new Term());
  t->tag_ = Tag::App;
  t->size_ = 1 + fun->size() + arg->size();
  t->left_ = std::move(fun);
  t->right_ = std::move(arg);
  return t;
}

std::size_t size(const TermPtr& t) { return t->size(); }

std::string fresh_name() {
  static std::atomic<std::uint64_t> counter{0};
  return "$" + std::to_string(counter.fetch_add(1));
}

// ---------------------------------------------------------------------------
// Structural operations

std::size_t free_occurrences(const TermPtr& t, const std::string& x) {
  switch (t->tag()) {
    case Term::Tag::FreeVar: return t->name() == x ? 1 : 0;
    case Term::Tag::BoundVar: return 0;
    case Term::Tag::Lam: return free_occurrences(t->body(), x);
    case Term::Tag::App: return free_occurrences(t->fun(), x) + free_occurrences(t->arg(), x);
  }
  return 0;
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->tag() != b->tag() || a->size() != b->size()) return false;
  switch (a->tag()) {
    case Term::Tag::FreeVar: return a->name() == b->name();
    case Term::Tag::BoundVar: return a->index() == b->index();
    case Term::Tag::Lam: return alpha_eq(a->body(), b->body());
    case Term::Tag::App: return alpha_eq(a->fun(), b->fun()) && alpha_eq(a->arg(), b->arg());
  }
  return false;
}

namespace {

TermPtr shift(const TermPtr& t, std::uint32_t amount, std::uint32_t cutoff) {
  if (amount == 0) return t;
  switch (t->tag()) {
    case Term::Tag::FreeVar: return t;
    case Term::Tag::BoundVar:
      return t->index() >= cutoff ? Term::bound_var(t->index() + amount) : t;
    case Term::Tag::Lam: {
      TermPtr body = shift(t->body(), amount, cutoff + 1);
      return body.get() == t->body().get() ? t : Term::lam(t->name(), body);
    }
    case Term::Tag::App: {
      TermPtr f = shift(t->fun(), amount, cutoff);
      TermPtr a = shift(t->arg(), amount, cutoff);
      return (f.get() == t->fun().get() && a.get() == t->arg().get()) ? t : Term::app(f, a);
    }
  }
  return t;
}

TermPtr instantiate_rec(const TermPtr& t, const TermPtr& arg, std::uint32_t depth) {
  switch (t->tag()) {
    case Term::Tag::FreeVar: return t;
    case Term::Tag::BoundVar:
      if (t->index() == depth) return shift(arg, depth, 0);
      if (t->index() > depth) return Term::bound_var(t->index() - 1);
      return t;
    case Term::Tag::Lam:
      return Term::lam(t->name(), instantiate_rec(t->body(), arg, depth + 1));
    case Term::Tag::App:
      return Term::app(instantiate_rec(t->fun(), arg, depth),
                       instantiate_rec(t->arg(), arg, depth));
  }
  return t;
}

TermPtr substitute_rec(const TermPtr& m, const std::string& x, const TermPtr& n) {
  switch (m->tag()) {
    case Term::Tag::FreeVar: return m->name() == x ? n : m;
    case Term::Tag::BoundVar: return m;
    case Term::Tag::Lam: {
      TermPtr body = substitute_rec(m->body(), x, n);
      return body.get() == m->body().get() ? m : Term::lam(m->name(), body);
    }
    case Term::Tag::App: {
      TermPtr f = substitute_rec(m->fun(), x, n);
      TermPtr a = substitute_rec(m->arg(), x, n);
      return (f.get() == m->fun().get() && a.get() == m->arg().get()) ? m : Term::app(f, a);
    }
  }
  return m;
}

TermPtr close_rec(const TermPtr& t, const std::string& name, std::uint32_t depth) {
  switch (t->tag()) {
    case Term::Tag::FreeVar:
      return t->name() == name ? Term::bound_var(depth) : t;
    case Term::Tag::BoundVar: return t;
    case Term::Tag::Lam: {
      TermPtr body = close_rec(t->body(), name, depth + 1);
      return body.get() == t->body().get() ? t : Term::lam(t->name(), body);
    }
    case Term::Tag::App: {
      TermPtr f = close_rec(t->fun(), name, depth);
      TermPtr a = close_rec(t->arg(), name, depth);
      return (f.get() == t->fun().get() && a.get() == t->arg().get()) ? t : Term::app(f, a);
    }
  }
  return t;
}

}  // namespace

TermPtr instantiate(const TermPtr& body, const TermPtr& arg) {
  return instantiate_rec(body, arg, 0);
}

TermPtr substitute(const TermPtr& m, const std::string& x, const TermPtr& n) {
  return substitute_rec(m, x, n);
}

TermPtr open_body(const TermPtr& lam_term, const std::string& fresh) {
  if (!lam_term->is_lam()) throw InvalidPositionError("open_body on non-abstraction");
  return instantiate(lam_term->body(), Term::free_var(fresh));
}

TermPtr close_over(const TermPtr& t, const std::string& name, std::string hint) {
  if (hint.empty()) hint = "x";
  return Term::lam(std::move(hint), close_rec(t, name, 0));
}

// ---------------------------------------------------------------------------
// Positions in terms

bool valid_position(const TermPtr& t, const Position& p) {
  const Term* cur = t.get();
  for (Dir d : p.path) {
    switch (d) {
      case Dir::Fun:
        if (!cur->is_app()) return false;
        cur = cur->fun().get();
        break;
      case Dir::Arg:
        if (!cur->is_app()) return false;
        cur = cur->arg().get();
        break;
      case Dir::Body:
        if (!cur->is_lam()) return false;
        cur = cur->body().get();
        break;
    }
  }
  return true;
}

TermPtr subterm_at(const TermPtr& t, const Position& p) {
  TermPtr cur = t;
  for (Dir d : p.path) {
    switch (d) {
      case Dir::Fun:
        if (!cur->is_app()) throw InvalidPositionError("Fun step at non-application");
        cur = cur->fun();
        break;
      case Dir::Arg:
        if (!cur->is_app()) throw InvalidPositionError("Arg step at non-application");
        cur = cur->arg();
        break;
      case Dir::Body:
        if (!cur->is_lam()) throw InvalidPositionError("Body step at non-abstraction");
        cur = cur->body();
        break;
    }
  }
  return cur;
}

namespace {

TermPtr replace_rec(const TermPtr& t, const Position& p, std::size_t i, const TermPtr& sub) {
  if (i == p.path.size()) return sub;
  switch (p.path[i]) {
    case Dir::Fun:
      if (!t->is_app()) throw InvalidPositionError("Fun step at non-application");
      return Term::app(replace_rec(t->fun(), p, i + 1, sub), t->arg());
    case Dir::Arg:
      if (!t->is_app()) throw InvalidPositionError("Arg step at non-application");
      return Term::app(t->fun(), replace_rec(t->arg(), p, i + 1, sub));
    case Dir::Body:
      if (!t->is_lam()) throw InvalidPositionError("Body step at non-abstraction");
      return Term::lam(t->name(), replace_rec(t->body(), p, i + 1, sub));
  }
  return sub;
}

void collect_free_var_positions(const TermPtr& t, const std::string& x, Position& here,
                                std::vector<Position>& out) {
  switch (t->tag()) {
    case Term::Tag::FreeVar:
      if (t->name() == x) out.push_back(here);
      return;
    case Term::Tag::BoundVar: return;
    case Term::Tag::Lam:
      here.path.push_back(Dir::Body);
      collect_free_var_positions(t->body(), x, here, out);
      here.path.pop_back();
      return;
    case Term::Tag::App:
      here.path.push_back(Dir::Fun);
      collect_free_var_positions(t->fun(), x, here, out);
      here.path.back() = Dir::Arg;
      collect_free_var_positions(t->arg(), x, here, out);
      here.path.pop_back();
      return;
  }
}

void collect_binder_positions(const TermPtr& t, std::uint32_t depth, Position& here,
                              std::vector<Position>& out) {
  switch (t->tag()) {
    case Term::Tag::FreeVar: return;
    case Term::Tag::BoundVar:
      if (t->index() == depth) out.push_back(here);
      return;
    case Term::Tag::Lam:
      here.path.push_back(Dir::Body);
      collect_binder_positions(t->body(), depth + 1, here, out);
      here.path.pop_back();
      return;
    case Term::Tag::App:
      here.path.push_back(Dir::Fun);
      collect_binder_positions(t->fun(), depth, here, out);
      here.path.back() = Dir::Arg;
      collect_binder_positions(t->arg(), depth, here, out);
      here.path.pop_back();
      return;
  }
}

void collect_redexes(const TermPtr& t, Position& here, std::vector<Position>& out) {
  switch (t->tag()) {
    case Term::Tag::FreeVar:
    case Term::Tag::BoundVar:
      return;
    case Term::Tag::Lam:
      here.path.push_back(Dir::Body);
      collect_redexes(t->body(), here, out);
      here.path.pop_back();
      return;
    case Term::Tag::App:
      if (t->is_redex()) out.push_back(here);
      here.path.push_back(Dir::Fun);
      collect_redexes(t->fun(), here, out);
      here.path.back() = Dir::Arg;
      collect_redexes(t->arg(), here, out);
      here.path.pop_back();
      return;
  }
}

}  // namespace

TermPtr replace_at(const TermPtr& t, const Position& p, const TermPtr& sub) {
  return replace_rec(t, p, 0, sub);
}

std::vector<Position> free_var_positions(const TermPtr& t, const std::string& x) {
  std::vector<Position> out;
  Position here;
  collect_free_var_positions(t, x, here, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Position> binder_var_positions(const TermPtr& body) {
  std::vector<Position> out;
  Position here;
  collect_binder_positions(body, 0, here, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool RedexSet::contains(const Position& p) const {
  return std::binary_search(positions.begin(), positions.end(), p);
}

void RedexSet::insert(Position p) {
  auto it = std::lower_bound(positions.begin(), positions.end(), p);
  if (it == positions.end() || *it != p) positions.insert(it, std::move(p));
}

RedexSet redexes(const TermPtr& t) {
  RedexSet out;
  Position here;
  collect_redexes(t, here, out.positions);
  std::sort(out.positions.begin(), out.positions.end());
  return out;
}

}  // namespace lamcr
