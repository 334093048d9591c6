// lam: command-line front end for the confluence toolkit.
//
// Subcommands: parse, reduce, star, join, bounds, patterns, check, example2.
// Exit codes: 0 success, 1 check failure, 2 input error, 3 resource cap.

#include <CLI11.hpp>
#include <pthread.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lamcr/bounds.hpp"
#include "lamcr/caps.hpp"
#include "lamcr/checks.hpp"
#include "lamcr/examples.hpp"
#include "lamcr/gen.hpp"
#include "lamcr/join.hpp"
#include "lamcr/reduction.hpp"
#include "lamcr/syntax.hpp"
#include "lamcr/term.hpp"

using namespace lamcr;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResourceCap = 3;

struct Globals {
  std::uint64_t seed = 1;
  std::size_t cases = 100;
  std::size_t max_size = 12;
  std::size_t fuel = 100;
  std::string format = "text";
  std::string out;

  bool is_json() const { return format == "json"; }
};

void emit(const Globals& g, const std::string& text, const json& doc) {
  const std::string payload = g.is_json() ? doc.dump(2) + "\n" : text;
  if (g.out.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + g.out);
    f << payload;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open input file: " + path, 0, 0);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Every term/chain-consuming subcommand takes a file positionally or the
// literal text via --expr.
std::string read_input(const std::string& file, const std::string& expr) {
  if (!expr.empty()) return expr;
  if (file.empty()) throw ParseError("no input: give a file or --expr", 0, 0);
  return read_file(file);
}

ReductionPath path_from_forward_chain(const EqualityChain& c) {
  ReductionPath p(c.terms.front());
  for (std::size_t i = 0; i < c.links.size(); ++i) {
    if (c.links[i].arrow != Arrow::Right) {
      throw ChainError("peak file must be a forward reduction (\"->\" links only)");
    }
    p.append(contract(p.endpoint(), c.links[i].witness));
  }
  return p;
}

json path_json(const ReductionPath& p) {
  json steps = json::array();
  for (const Step& s : p.steps) {
    steps.push_back({{"from", print_term(s.source)},
                     {"redex", s.redex.to_string()},
                     {"to", print_term(s.target)}});
  }
  return {{"source", print_term(p.source)}, {"steps", steps}, {"length", p.length()}};
}

// ---------------------------------------------------------------------------
// parse

int cmd_parse(const Globals& g, const std::string& file, const std::string& expr) {
  const TermPtr t = parse_term(read_input(file, expr));
  const RedexSet rs = redexes(t);

  std::ostringstream text;
  text << "term: " << print_term(t) << '\n';
  text << "size: " << t->size() << '\n';
  text << "redexes:";
  if (rs.empty()) text << " none";
  for (const Position& p : rs) text << ' ' << p.to_string();
  text << '\n';

  json positions = json::array();
  for (const Position& p : rs) positions.push_back(p.to_string());
  emit(g, text.str(),
       {{"term", print_term(t)}, {"size", t->size()}, {"redexes", positions}});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// reduce

int cmd_reduce(const Globals& g, const std::string& file, const std::string& expr,
               const std::string& strategy) {
  const TermPtr start = parse_term(read_input(file, expr));
  Rng rng(g.seed);

  ReductionPath path(start);
  std::size_t macro_steps = 0;
  bool fuel_exhausted = false;
  std::vector<std::size_t> macro_boundaries;  // step counts at macro-step ends

  for (;;) {
    if (macro_steps >= g.fuel) {
      Position unused;
      fuel_exhausted = leftmost_redex(path.endpoint(), unused);
      break;
    }
    if (strategy == "gross-knuth") {
      const ReductionPath macro = gross_knuth_path(path.endpoint());
      if (macro.length() == 0) break;
      path.append(macro);
      macro_boundaries.push_back(path.length());
    } else {
      Position r;
      if (strategy == "leftmost") {
        if (!leftmost_redex(path.endpoint(), r)) break;
      } else if (strategy == "random") {
        const RedexSet rs = redexes(path.endpoint());
        if (rs.empty()) break;
        r = rs.positions[std::uniform_int_distribution<std::size_t>(0, rs.count() - 1)(rng)];
      } else {
        throw std::invalid_argument("unknown strategy: " + strategy);
      }
      path.append(contract(path.endpoint(), r));
    }
    ++macro_steps;
  }

  const bool normal_form = !fuel_exhausted;

  std::ostringstream text;
  text << print_term(path.source) << '\n';
  std::size_t next_macro = 0;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const Step& s = path.steps[i];
    text << "-[" << s.redex.to_string() << "]-> " << print_term(s.target) << '\n';
    if (next_macro < macro_boundaries.size() && macro_boundaries[next_macro] == i + 1) {
      text << "-- macro step " << next_macro + 1 << " complete (M^{" << next_macro + 1
           << "*})\n";
      ++next_macro;
    }
  }
  text << "steps: " << path.length() << '\n';
  if (strategy == "gross-knuth") text << "macro steps: " << macro_steps << '\n';
  text << "normal form: " << (normal_form ? "yes" : "no") << '\n';
  text << "fuel-exhausted: " << (fuel_exhausted ? "yes" : "no") << '\n';

  json doc = path_json(path);
  doc["final"] = print_term(path.endpoint());
  doc["normal_form"] = normal_form;
  doc["fuel_exhausted"] = fuel_exhausted;
  if (strategy == "gross-knuth") doc["macro_steps"] = macro_steps;
  emit(g, text.str(), doc);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// star

int cmd_star(const Globals& g, const std::string& file, const std::string& expr,
             std::size_t levels) {
  const TermPtr t = parse_term(read_input(file, expr));

  std::ostringstream text;
  json iterates = json::array();
  TermPtr cur = t;
  for (std::size_t i = 0; i <= levels; ++i) {
    text << "M^{" << i << "*}: " << print_term(cur) << "  (size " << cur->size() << ")\n";
    iterates.push_back({{"level", i}, {"term", print_term(cur)}, {"size", cur->size()}});
    if (i < levels) cur = takahashi_star(cur);
  }
  emit(g, text.str(), {{"iterates", iterates}});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// join

struct EmittedCert {
  JoinCertificate cert;
  std::vector<BoundCheck> checks;
  bool replays = false;
};

json cert_json(const EmittedCert& e) {
  json doc = certificate_json(e.cert, e.checks);
  doc["replays"] = e.replays;
  return doc;
}

std::string cert_text(const EmittedCert& e) {
  std::ostringstream ss;
  ss << emit_certificate_text(e.cert, e.checks);
  ss << "replays: " << (e.replays ? "yes" : "no") << '\n';
  return ss.str();
}

int cmd_join(const Globals& g, const std::string& chain_file, const std::string& expr,
             const std::vector<std::string>& peak_files, const std::string& mode) {
  const bool peak_mode = !peak_files.empty();
  if (peak_mode && peak_files.size() != 2) {
    throw std::invalid_argument("--peak needs exactly two files");
  }
  if (!peak_mode && mode == "improved") {
    throw std::invalid_argument("mode improved requires --peak");
  }

  std::optional<ReductionPath> left, right;
  EqualityChain chain;
  if (peak_mode) {
    left = path_from_forward_chain(parse_chain(read_file(peak_files[0])));
    right = path_from_forward_chain(parse_chain(read_file(peak_files[1])));
    if (left->length() > right->length()) std::swap(*left, *right);
    chain = chain_append(chain_reverse(chain_from_path(*left)), chain_from_path(*right));
  } else {
    chain = parse_chain(read_input(chain_file, expr));
  }

  const TermPtr m0 = chain.terms.front();
  const TermPtr mk = chain.terms.back();
  std::vector<EmittedCert> certs;
  std::ostringstream header;
  json doc;

  if (mode == "main") {
    if (peak_mode) {
      auto [first, second] = join_reduction_peak(*left, *right);
      certs.push_back({first, peak_join_checks(*left, *right, first),
                       certificate_valid(first, m0, mk)});
      certs.push_back({second, refined_join_checks(chain, second),
                       certificate_valid(second, m0, mk)});
      const JoinCertificate valley = cofinal_valley(*left, *right);
      certs.push_back({valley, valley_join_checks(*left, *right, valley),
                       certificate_valid(valley, left->endpoint(), right->endpoint())});
    } else {
      auto [for_m0, for_mk] = join_main(chain);
      std::vector<BoundCheck> all = main_join_checks(chain, for_m0, for_mk);
      certs.push_back({for_m0, {all[0], all[1], all[4]}, certificate_valid(for_m0, m0, mk)});
      certs.push_back({for_mk, {all[2], all[3]}, certificate_valid(for_mk, m0, mk)});
    }
  } else if (mode == "refined") {
    const JoinCertificate cert = join_refined(chain);
    certs.push_back({cert, refined_join_checks(chain, cert), certificate_valid(cert, m0, mk)});
  } else if (mode == "all") {
    const JoinAllResult res = join_all(chain);
    header << "crossed point: position " << res.r << ", " << res.m_l << " stars\n";
    json family = json::array();
    bool family_ok = true;
    for (std::size_t p = 0; p < res.family.size(); ++p) {
      const JoinCertificate& cert = res.family[p];
      const bool ok = certificate_valid(cert, m0, mk);
      family_ok = family_ok && ok;
      header << "  position " << p << ": " << cert.descriptor << "  left "
             << cert.left_path.length() << ", right " << cert.right_path.length()
             << (ok ? "" : "  [replay FAIL]") << '\n';
      family.push_back({{"position", p},
                        {"descriptor", cert.descriptor},
                        {"left", cert.left_path.length()},
                        {"right", cert.right_path.length()},
                        {"replays", ok}});
    }
    bool crossed_ok = true;
    for (std::size_t i = 0; i < res.to_crossed.size(); ++i) {
      const ReductionPath& p = res.to_crossed[i];
      crossed_ok = crossed_ok && replays(p) && alpha_eq(p.source, chain.terms[i]);
    }
    header << "paths to the crossed point replay: " << (crossed_ok ? "yes" : "no") << '\n';
    const JoinCertificate& crossed = res.family[res.r];
    certs.push_back({crossed, refined_join_checks(chain, crossed),
                     family_ok && crossed_ok && certificate_valid(crossed, m0, mk)});
    doc["family"] = family;
    doc["r"] = res.r;
    doc["m_l"] = res.m_l;
    doc["to_crossed_replays"] = crossed_ok;
  } else if (mode == "improved") {
    const ImprovedJoin res = join_improved(*left, *right);
    header << "new-redex contractions: a = " << res.a << ", b = " << res.b << '\n';
    certs.push_back({res.first, {}, certificate_valid(res.first, m0, mk)});
    certs.push_back({res.second, {}, certificate_valid(res.second, m0, mk)});
    doc["a"] = res.a;
    doc["b"] = res.b;
  } else {
    throw std::invalid_argument("unknown mode: " + mode);
  }

  bool ok = true;
  std::ostringstream text;
  text << header.str();
  json jcerts = json::array();
  for (const EmittedCert& e : certs) {
    ok = ok && e.replays && all_ok(e.checks);
    text << cert_text(e) << '\n';
    jcerts.push_back(cert_json(e));
  }
  text << "result: " << (ok ? "ok" : "FAIL") << '\n';
  doc["certificates"] = jcerts;
  doc["ok"] = ok;
  emit(g, text.str(), doc);
  return ok ? kExitOk : kExitCheckFailure;
}

// ---------------------------------------------------------------------------
// bounds

std::size_t parse_natural(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("not a natural number: " + s);
  }
  return static_cast<std::size_t>(std::stoull(s));
}

std::vector<Arrow> parse_arrows(const std::string& s) {
  std::vector<Arrow> out;
  for (char c : s) {
    if (c == 'R' || c == 'r') out.push_back(Arrow::Right);
    else if (c == 'L' || c == 'l') out.push_back(Arrow::Left);
    else throw std::invalid_argument("arrow pattern must use R/L: " + s);
  }
  return out;
}

int cmd_bounds(const Globals& g, const std::vector<std::string>& args, bool grid) {
  std::ostringstream text;
  json doc;

  if (grid) {
    // Side-by-side comparison of the two valley-length bounds over a small
    // grid: the recursive one versus the closed-form one.
    text << "s  l  r  cr-red(right)          bl                     shorter\n";
    json rows = json::array();
    for (std::size_t s = 2; s <= 4; ++s) {
      for (std::size_t l = 0; l <= 2; ++l) {
        for (std::size_t r = 1; r <= 3; ++r) {
          const BoundValue a = cr_red_bound(l, s, r).right_len;
          const BoundValue b = bl_bound(l, s, r);
          const std::string shorter = b < a ? "bl" : (a < b ? "cr-red" : "tie");
          text << s << "  " << l << "  " << r << "  " << a.to_string() << "  "
               << b.to_string() << "  " << shorter << '\n';
          rows.push_back({{"s", s}, {"l", l}, {"r", r}, {"cr_red", a.to_string()},
                          {"bl", b.to_string()}, {"shorter", shorter}});
        }
      }
    }
    emit(g, text.str(), {{"grid", rows}});
    return kExitOk;
  }

  if (args.empty()) throw std::invalid_argument("bounds: missing function name");
  const std::string& fn = args[0];
  auto nat = [&](std::size_t i) {
    if (i >= args.size()) throw std::invalid_argument("bounds: missing argument");
    return parse_natural(args[i]);
  };
  auto need = [&](std::size_t n) {
    if (args.size() != n + 1) {
      throw std::invalid_argument("bounds: " + fn + " takes " + std::to_string(n) +
                                  " arguments");
    }
  };

  std::optional<BoundValue> value;
  std::optional<BoundTriple> triple;
  if (fn == "iter-exp") { need(2); value = iter_exp(nat(1), nat(2)); }
  else if (fn == "f") { need(2); value = f_iter(nat(1), nat(2)); }
  else if (fn == "len") { need(2); value = len_bound(nat(1), nat(2)); }
  else if (fn == "size-after") { need(2); value = size_after_steps(nat(1), nat(2)); }
  else if (fn == "star-size") { need(1); value = star_size_bound(nat(1)); }
  else if (fn == "mon") { need(3); value = mon_bound(nat(1), nat(2), nat(3)); }
  else if (fn == "rev") { need(2); value = rev_bound(nat(1), nat(2)); }
  else if (fn == "bl") { need(3); value = bl_bound(nat(1), nat(2), nat(3)); }
  else if (fn == "cr-red") { need(3); triple = cr_red_bound(nat(1), nat(2), nat(3)); }
  else if (fn == "v-size") { need(3); triple = v_size_bound(nat(1), nat(2), nat(3)); }
  else if (fn == "cr-eq") {
    need(3);
    triple = cr_eq_bound(parse_arrows(args[1]), nat(2), BoundValue::of(nat(3)));
  } else {
    throw std::invalid_argument("unknown-function: " + fn);
  }

  std::string call = fn;
  for (std::size_t i = 1; i < args.size(); ++i) call += ' ' + args[i];
  if (value) {
    text << call << " = " << value->to_string() << '\n';
    doc = {{"function", fn}, {"value", value->to_string()}};
  } else {
    text << call << " = <" << triple->left_len.to_string() << ", " << triple->descriptor
         << ", " << triple->right_len.to_string() << ">\n";
    doc = {{"function", fn},
           {"left", triple->left_len.to_string()},
           {"descriptor", triple->descriptor},
           {"right", triple->right_len.to_string()}};
  }
  emit(g, text.str(), doc);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// patterns

int cmd_patterns(const Globals& g, std::size_t k) {
  const PatternTable table = enumerate_patterns(k);

  std::ostringstream text;
  text << "k: " << table.k << '\n' << "class sizes:";
  for (std::size_t r = 0; r < table.class_sizes.size(); ++r) {
    text << " r=" << r << ":" << table.class_sizes[r];
  }
  text << '\n';
  json rows = json::array();
  for (const PatternRow& row : table.rows) {
    text << arrows_to_string(row.arrows) << "  r=" << row.r << " l=" << row.l
         << " m_l=" << row.m_l << "  main: " << row.main_first << " / " << row.main_second
         << "  crossed: " << row.crossed << '\n';
    std::string pat;
    for (Arrow a : row.arrows) pat += (a == Arrow::Right ? 'R' : 'L');
    rows.push_back({{"pattern", pat}, {"r", row.r}, {"l", row.l}, {"m_l", row.m_l},
                    {"main_first", row.main_first}, {"main_second", row.main_second},
                    {"crossed", row.crossed}});
  }
  emit(g, text.str(), {{"k", table.k}, {"class_sizes", table.class_sizes}, {"rows", rows}});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// check

struct SuiteResult {
  std::string name;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skip = 0;
  std::vector<std::string> failures;  // first few, with case index

  void record(std::size_t index, bool ok, const std::string& what) {
    if (ok) {
      ++pass;
    } else {
      ++fail;
      if (failures.size() < 5) {
        failures.push_back("case " + std::to_string(index) + ": " + what);
      }
    }
  }
};

// splitmix64 step; decorrelates per-case seeds.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng case_rng(const Globals& g, std::size_t index) {
  return Rng(mix(mix(g.seed) + index));
}

GenConfig gen_config(const Globals& g, std::size_t max_size) {
  GenConfig cfg;
  cfg.max_size = max_size;
  return cfg;
}

// A random term that actually has a redex (most small random terms are
// normal); gives up after a bounded number of draws.
TermPtr random_redex_term(Rng& rng, const GenConfig& cfg) {
  for (int tries = 0; tries < 64; ++tries) {
    const TermPtr m = random_term(rng, cfg);
    if (!redexes(m).empty()) return m;
  }
  return nullptr;
}

SuiteResult suite_lemma1(const Globals& g) {
  SuiteResult res{"lemma1"};
  const GenConfig cfg = gen_config(g, std::max<std::size_t>(g.max_size, 30));
  for (std::size_t i = 0; i < g.cases; ++i) {
    Rng rng = case_rng(g, i);
    const TermPtr m = random_term(rng, cfg);
    const TermPtr n = random_term(rng, cfg);
    const std::size_t expect = m->size() + free_occurrences(m, "p") * (n->size() - 1);
    res.record(i, substitute(m, "p", n)->size() == expect, "substitution size identity");
  }
  return res;
}

SuiteResult suite_redexcount(const Globals& g) {
  SuiteResult res{"redexcount"};
  const GenConfig cfg = gen_config(g, std::max<std::size_t>(g.max_size, 40));
  for (std::size_t i = 0; i < g.cases; ++i) {
    Rng rng = case_rng(g, i);
    const TermPtr m = random_term(rng, cfg);
    const std::size_t bound = m->size() >= 4 ? m->size() / 2 - 1 : 1;
    res.record(i, redexes(m).count() <= bound, "redex count bound");
  }
  return res;
}

SuiteResult suite_sizes(const Globals& g) {
  SuiteResult res{"sizes"};
  const GenConfig cfg = gen_config(g, std::min<std::size_t>(g.max_size + 8, 20));
  for (std::size_t i = 0; i < g.cases; ++i) {
    Rng rng = case_rng(g, i);
    const TermPtr m = random_redex_term(rng, cfg);
    if (!m) {
      ++res.skip;
      continue;
    }
    const TermPtr s = takahashi_star(m);
    bool ok = BigInt(s->size()) <= (BigInt(1) << (m->size() - 1));
    const ReductionPath p = random_path(rng, m, 6, cfg);
    if (p.length() == 0) {
      ++res.skip;
      continue;
    }
    const std::size_t n = p.length();
    const BigInt lhs = BigInt(p.endpoint()->size()) * pow(BigInt(8), (1u << n) - 1);
    const BigInt rhs = pow(BigInt(m->size()), 1u << n);
    ok = ok && lhs < rhs;
    res.record(i, ok, "size after " + std::to_string(n) + " steps");
  }
  return res;
}

SuiteResult suite_star(const Globals& g) {
  SuiteResult res{"star"};
  const GenConfig cfg = gen_config(g, g.max_size);
  for (std::size_t i = 0; i < g.cases; ++i) {
    Rng rng = case_rng(g, i);
    const TermPtr m = random_term(rng, cfg);
    const TermPtr star = takahashi_star(m);
    bool ok = alpha_eq(star_iter(m, 1), star);
    const ReductionPath dev = minimal_complete_development(MarkedTerm{m, redexes(m)});
    ok = ok && alpha_eq(dev.endpoint(), star) && dev.length() <= redexes(m).count();
    const ReductionPath gk = gross_knuth_path(m);
    ok = ok && alpha_eq(gk.endpoint(), star) && replays(gk);
    if (m->size() >= 4) ok = ok && gk.length() <= m->size() / 2 - 1;
    res.record(i, ok, "star / development properties");
  }
  return res;
}

SuiteResult suite_cofinal(const Globals& g) {
  SuiteResult res{"cofinal"};
  const GenConfig cfg = gen_config(g, g.max_size);
  for (std::size_t i = 0; i < g.cases; ++i) {
    Rng rng = case_rng(g, i);
    const TermPtr m = random_redex_term(rng, cfg);
    if (!m) {
      ++res.skip;
      continue;
    }
    bool ok = true;
    for (const Position& r : redexes(m)) {
      const Step s = contract(m, r);
      const ReductionPath back = cofinal_step(s);
      ok = ok && alpha_eq(back.endpoint(), takahashi_star(m)) && replays(back);
      if (s.target->size() >= 4) ok = ok && back.length() <= s.target->size() / 2 - 1;
    }
    res.record(i, ok, "cofinal step properties");
  }
  return res;
}

SuiteResult suite_mono(const Globals& g) {
  SuiteResult res{"mono"};
  const GenConfig cfg = gen_config(g, g.max_size);
  for (std::size_t i = 0; i < g.cases; ++i) {
    Rng rng = case_rng(g, i);
    const TermPtr m = random_redex_term(rng, cfg);
    if (!m) {
      ++res.skip;
      continue;
    }
    bool ok = true;
    for (const Position& r : redexes(m)) {
      const Step s = contract(m, r);
      const ReductionPath lifted = mono_lift(s);
      ok = ok && alpha_eq(lifted.source, takahashi_star(m)) &&
           alpha_eq(lifted.endpoint(), takahashi_star(s.target)) && replays(lifted) &&
           lifted.length() + 1 <= takahashi_star(m)->size();
    }
    res.record(i, ok, "monotonicity lift properties");
  }
  return res;
}

SuiteResult suite_join(const Globals& g) {
  SuiteResult res{"join"};
  const GenConfig cfg = gen_config(g, g.max_size);
  for (std::size_t i = 0; i < g.cases; ++i) {
    Rng rng = case_rng(g, i);
    try {
      const EqualityChain c = random_chain(rng, 1 + i % 6, cfg);
      validate_chain(c);
      auto [for_m0, for_mk] = join_main(c);
      const JoinCertificate refined = join_refined(c);
      bool ok = certificate_valid(for_m0, c.terms.front(), c.terms.back()) &&
                certificate_valid(for_mk, c.terms.front(), c.terms.back()) &&
                certificate_valid(refined, c.terms.front(), c.terms.back());
      ok = ok && all_ok(main_join_checks(c, for_m0, for_mk)) &&
           all_ok(refined_join_checks(c, refined));
      res.record(i, ok, "join certificates and bounds");
    } catch (const ResourceCapError&) {
      ++res.skip;
    }
  }
  return res;
}

SuiteResult suite_improved(const Globals& g) {
  SuiteResult res{"improved"};
  const GenConfig cfg = gen_config(g, g.max_size);
  for (std::size_t i = 0; i < g.cases; ++i) {
    Rng rng = case_rng(g, i);
    try {
      const std::size_t n = i % 4;
      const std::size_t m = n + i % (5 - n);
      auto [left, right] = random_peak(rng, n, m, cfg);
      const ImprovedJoin ij = join_improved(left, right);
      bool ok = certificate_valid(ij.first, left.endpoint(), right.endpoint()) &&
                certificate_valid(ij.second, left.endpoint(), right.endpoint());
      if (left.length() >= 1) ok = ok && ij.a + 1 <= left.length();
      if (right.length() >= 1) ok = ok && ij.b + 1 <= right.length();
      res.record(i, ok, "improved certificates");
    } catch (const ResourceCapError&) {
      ++res.skip;
    }
  }
  return res;
}

SuiteResult suite_bounds(const Globals& g) {
  SuiteResult res{"bounds"};
  if (g.cases == 0) return res;
  std::size_t i = 0;
  auto unit = [&](bool ok, const std::string& what) { res.record(i++, ok, what); };
  unit(len_bound(4, 1) == BoundValue::of(1), "len 4 1");
  unit(len_bound(4, 2) == BoundValue::of(4), "len 4 2");
  unit(rev_bound(4, 1) == BoundValue::of(8), "rev 4 1");
  unit(iter_exp(1, 4) == BoundValue::of(65536), "iter-exp 1 4");
  const BoundTriple l = cr_eq_bound({Arrow::Left}, 4, BoundValue::of(4));
  unit(l.left_len == BoundValue::of(0) && l.right_len == BoundValue::of(1), "cr-eq L");
  const BoundTriple r = cr_eq_bound({Arrow::Right}, 4, BoundValue::of(4));
  unit(r.left_len == BoundValue::of(2) && r.right_len == BoundValue::of(8), "cr-eq R");
  return res;
}

int cmd_check(const Globals& g, const std::string& suite) {
  std::vector<SuiteResult> results;
  auto want = [&](const std::string& name) { return suite == "all" || suite == name; };
  if (want("lemma1")) results.push_back(suite_lemma1(g));
  if (want("redexcount")) results.push_back(suite_redexcount(g));
  if (want("sizes")) results.push_back(suite_sizes(g));
  if (want("star")) results.push_back(suite_star(g));
  if (want("cofinal")) results.push_back(suite_cofinal(g));
  if (want("mono")) results.push_back(suite_mono(g));
  if (want("join")) results.push_back(suite_join(g));
  if (want("improved")) results.push_back(suite_improved(g));
  if (want("bounds")) results.push_back(suite_bounds(g));
  if (results.empty()) throw std::invalid_argument("unknown suite: " + suite);

  bool ok = true;
  std::ostringstream text;
  json suites = json::array();
  for (const SuiteResult& r : results) {
    ok = ok && r.fail == 0;
    text << "suite " << r.name << ": pass=" << r.pass << " fail=" << r.fail
         << " skip=" << r.skip << " (seed " << g.seed << ")\n";
    for (const std::string& f : r.failures) text << "  " << f << '\n';
    suites.push_back({{"name", r.name}, {"pass", r.pass}, {"fail", r.fail},
                      {"skip", r.skip}, {"failures", r.failures}});
  }
  text << "result: " << (ok ? "ok" : "FAIL") << '\n';
  emit(g, text.str(), {{"seed", g.seed}, {"suites", suites}, {"ok", ok}});
  return ok ? kExitOk : kExitCheckFailure;
}

// ---------------------------------------------------------------------------
// example2

int cmd_example2(const Globals& g, std::size_t n) {
  const BigJoinReport rep = build_big_join(n);
  const bool cert_ok = certificate_valid(rep.cert, rep.m1, rep.m2);
  const bool sizes_match = rep.size_m1 == rep.size_m2;
  const bool ok = cert_ok && sizes_match && rep.reduct_matches && rep.length_within_bound;

  std::ostringstream text;
  text << "n: " << rep.n << '\n';
  text << "tower 2_n^1: " << rep.tower << '\n';
  text << "|M_1|: " << rep.size_m1 << '\n';
  text << "|M_2|: " << rep.size_m2 << '\n';
  text << "quoted size (8n+1): " << rep.literature_size << '\n';
  text << "chain length: " << rep.chain.length() << " (bound " << rep.chain_length_bound
       << ") " << (rep.length_within_bound ? "[ok]" : "[FAIL]") << '\n';
  text << "crossed point: " << rep.cert.descriptor << '\n';
  text << "join lengths: left " << rep.cert.left_path.length() << ", right "
       << rep.cert.right_path.length() << '\n';
  text << "reduct size: " << rep.cert.reduct->size() << '\n';
  text << "reduct is p^(tower+1) q: " << (rep.reduct_matches ? "yes" : "no") << '\n';
  text << "certificate replays: " << (cert_ok ? "yes" : "no") << '\n';
  text << "result: " << (ok ? "ok" : "FAIL") << '\n';

  emit(g, text.str(),
       {{"n", rep.n},
        {"tower", rep.tower},
        {"size_m1", rep.size_m1},
        {"size_m2", rep.size_m2},
        {"quoted_size", rep.literature_size},
        {"chain_length", rep.chain.length()},
        {"chain_length_bound", rep.chain_length_bound},
        {"descriptor", rep.cert.descriptor},
        {"left_length", rep.cert.left_path.length()},
        {"right_length", rep.cert.right_path.length()},
        {"reduct_size", rep.cert.reduct->size()},
        {"reduct_matches", rep.reduct_matches},
        {"certificate_replays", cert_ok},
        {"ok", ok}});
  return ok ? kExitOk : kExitCheckFailure;
}

// ---------------------------------------------------------------------------
// dispatch

int real_main(int argc, char** argv) {
  CLI::App app{"lam: lambda-calculus confluence toolkit"};
  app.require_subcommand(1);

  Globals g;
  std::size_t term_cap = caps().term_nodes;
  std::size_t path_cap = caps().path_steps;
  std::size_t bit_cap = caps().bound_bits;
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--cases", g.cases, "random cases per suite");
  app.add_option("--max-size", g.max_size, "random term size target");
  app.add_option("--fuel", g.fuel, "reduction step budget");
  app.add_option("--term-cap", term_cap, "max nodes in any built term");
  app.add_option("--path-cap", path_cap, "max steps in any built path");
  app.add_option("--bit-cap", bit_cap, "max bit length of exact bound values");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", g.out, "write the report to FILE instead of stdout");

  std::string file, expr, strategy = "leftmost", mode = "main", suite = "all";
  std::vector<std::string> peak_files, bounds_args;
  std::size_t levels = 1, patterns_k = 4, example_n = 4;
  bool grid = false;

  CLI::App* parse_cmd = app.add_subcommand("parse", "parse and report a term");
  parse_cmd->add_option("input", file, "term file");
  parse_cmd->add_option("--expr", expr, "literal term text");

  CLI::App* reduce_cmd = app.add_subcommand("reduce", "reduce a term under a strategy");
  reduce_cmd->add_option("input", file, "term file");
  reduce_cmd->add_option("--expr", expr, "literal term text");
  reduce_cmd->add_option("--strategy", strategy, "reduction strategy")
      ->check(CLI::IsMember({"leftmost", "gross-knuth", "random"}));

  CLI::App* star_cmd = app.add_subcommand("star", "iterated simultaneous contraction");
  star_cmd->add_option("input", file, "term file");
  star_cmd->add_option("--expr", expr, "literal term text");
  star_cmd->add_option("--levels", levels, "number of iterations");

  CLI::App* join_cmd = app.add_subcommand("join", "join an equality chain or a peak");
  join_cmd->add_option("input", file, "chain file");
  join_cmd->add_option("--expr", expr, "literal chain text");
  join_cmd->add_option("--peak", peak_files, "two forward-reduction files from one source")
      ->expected(2);
  join_cmd->add_option("--mode", mode, "join construction")
      ->check(CLI::IsMember({"main", "refined", "all", "improved"}));

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "evaluate bound functions");
  bounds_cmd->add_option("args", bounds_args, "function name and natural arguments");
  bounds_cmd->add_flag("--grid", grid, "tabulate the valley-length bounds side by side");

  CLI::App* patterns_cmd = app.add_subcommand("patterns", "classify arrow patterns");
  patterns_cmd->add_option("k", patterns_k, "chain length");

  CLI::App* check_cmd = app.add_subcommand("check", "random-instance property harness");
  check_cmd->add_option("--suite", suite, "suite name")
      ->check(CLI::IsMember({"all", "lemma1", "redexcount", "sizes", "star", "cofinal",
                             "mono", "join", "improved", "bounds"}));

  CLI::App* example_cmd = app.add_subcommand("example2", "the big worked join instance");
  example_cmd->add_option("n", example_n, "instance parameter");

  // Global flags may appear after the subcommand name.
  for (CLI::App* sub : {parse_cmd, reduce_cmd, star_cmd, join_cmd, bounds_cmd, patterns_cmd,
                        check_cmd, example_cmd}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInputError;
  }

  caps().term_nodes = term_cap;
  caps().path_steps = path_cap;
  caps().bound_bits = bit_cap;

  try {
    if (parse_cmd->parsed()) return cmd_parse(g, file, expr);
    if (reduce_cmd->parsed()) return cmd_reduce(g, file, expr, strategy);
    if (star_cmd->parsed()) return cmd_star(g, file, expr, levels);
    if (join_cmd->parsed()) return cmd_join(g, file, expr, peak_files, mode);
    if (bounds_cmd->parsed()) return cmd_bounds(g, bounds_args, grid);
    if (patterns_cmd->parsed()) return cmd_patterns(g, patterns_k);
    if (check_cmd->parsed()) return cmd_check(g, suite);
    if (example_cmd->parsed()) return cmd_example2(g, example_n);
    std::cerr << "error: no subcommand\n";
    return kExitInputError;
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kExitResourceCap;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ChainError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }
}

struct ThreadArgs {
  int argc;
  char** argv;
  int rc;
};

void* thread_entry(void* p) {
  auto* a = static_cast<ThreadArgs*>(p);
  a->rc = real_main(a->argc, a->argv);
  return nullptr;
}

}  // namespace

// Deep spines (the big worked instance builds terms over 10^5 nodes deep) make
// recursion depth proportional to term size, so run everything on a large stack.
int main(int argc, char** argv) {
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, std::size_t{1} << 30);
  ThreadArgs args{argc, argv, kExitCheckFailure};
  pthread_t tid;
  if (pthread_create(&tid, &attr, thread_entry, &args) != 0) {
    return real_main(argc, argv);
  }
  pthread_join(tid, nullptr);
  pthread_attr_destroy(&attr);
  return args.rc;
}
