#include "lamcr/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "lamcr/caps.hpp"

namespace lamcr {

namespace {

// ---------------------------------------------------------------------------
// Parsing

struct Token {
  enum class Kind { Lambda, LParen, RParen, Dot, Ident, End };
  Kind kind;
  std::string text;
  int line;
  int col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    const int tc = col;
    if (c == '\\') {
      out.push_back({Token::Kind::Lambda, "\\", line, tc});
      ++i;
      ++col;
    } else if (static_cast<unsigned char>(c) == 0xCE && i + 1 < text.size() &&
               static_cast<unsigned char>(text[i + 1]) == 0xBB) {  // UTF-8 lambda
      out.push_back({Token::Kind::Lambda, "λ", line, tc});
      i += 2;
      ++col;
    } else if (c == '(') {
      out.push_back({Token::Kind::LParen, "(", line, tc});
      ++i;
      ++col;
    } else if (c == ')') {
      out.push_back({Token::Kind::RParen, ")", line, tc});
      ++i;
      ++col;
    } else if (c == '.') {
      out.push_back({Token::Kind::Dot, ".", line, tc});
      ++i;
      ++col;
    } else if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Token::Kind::Ident, text.substr(i, j - i), line, tc});
      col += static_cast<int>(j - i);
      i = j;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "'", line, tc);
    }
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  TermPtr parse() {
    std::vector<std::string> env;
    TermPtr t = term(env);
    expect(Token::Kind::End, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  void expect(Token::Kind k, const char* what) {
    if (peek().kind != k) {
      throw ParseError("expected " + std::string(what) + ", found '" + peek().text + "'",
                       peek().line, peek().col);
    }
  }

  TermPtr term(std::vector<std::string>& env) {
    if (peek().kind == Token::Kind::Lambda) return lambda(env);
    return application(env);
  }

  TermPtr lambda(std::vector<std::string>& env) {
    take();  // the lambda token
    std::vector<std::string> binders;
    expect(Token::Kind::Ident, "a binder name");
    while (peek().kind == Token::Kind::Ident) binders.push_back(take().text);
    expect(Token::Kind::Dot, "'.'");
    take();
    for (const std::string& b : binders) env.push_back(b);
    TermPtr body = term(env);
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      env.pop_back();
      body = Term::lam(*it, std::move(body));
    }
    return body;
  }

  TermPtr application(std::vector<std::string>& env) {
    TermPtr t = atom(env);
    while (true) {
      const Token::Kind k = peek().kind;
      if (k == Token::Kind::Ident || k == Token::Kind::LParen) {
        t = Term::app(std::move(t), atom(env));
      } else if (k == Token::Kind::Lambda) {
        // Trailing abstraction swallows the rest: "f \x. x" = f (\x. x).
        t = Term::app(std::move(t), lambda(env));
      } else {
        return t;
      }
    }
  }

  TermPtr atom(std::vector<std::string>& env) {
    if (peek().kind == Token::Kind::LParen) {
      take();
      TermPtr t = term(env);
      expect(Token::Kind::RParen, "')'");
      take();
      return t;
    }
    expect(Token::Kind::Ident, "a term");
    const Token tok = take();
    for (std::size_t d = 0; d < env.size(); ++d) {
      if (env[env.size() - 1 - d] == tok.text) {
        return Term::bound_var(static_cast<std::uint32_t>(d));
      }
    }
    return Term::free_var(tok.text);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printing

void collect_free_names(const TermPtr& t, std::set<std::string>& out) {
  switch (t->tag()) {
    case Term::Tag::FreeVar: out.insert(t->name()); break;
    case Term::Tag::BoundVar: break;
    case Term::Tag::Lam: collect_free_names(t->body(), out); break;
    case Term::Tag::App:
      collect_free_names(t->fun(), out);
      collect_free_names(t->arg(), out);
      break;
  }
}

bool valid_ident(const std::string& s) {
  if (s.empty() || !ident_start(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), ident_char);
}

std::string pick_binder_name(const std::string& hint, const std::set<std::string>& taken,
                             const std::vector<std::string>& env) {
  std::string base = valid_ident(hint) ? hint : "x";
  while (taken.count(base) || std::find(env.begin(), env.end(), base) != env.end()) {
    base += '\'';
  }
  return base;
}

enum class Ctx { Top, Fun, Arg };

void print_rec(const TermPtr& t, Ctx ctx, std::vector<std::string>& env,
               const std::set<std::string>& free_names, std::string& out) {
  switch (t->tag()) {
    case Term::Tag::FreeVar:
      out += t->name();
      return;
    case Term::Tag::BoundVar: {
      const std::size_t d = t->index();
      out += d < env.size() ? env[env.size() - 1 - d] : "?" + std::to_string(d);
      return;
    }
    case Term::Tag::Lam: {
      const bool parens = ctx != Ctx::Top;
      if (parens) out += '(';
      out += '\\';
      // Collapse consecutive binders into one head.
      TermPtr cur = t;
      std::size_t pushed = 0;
      while (cur->is_lam()) {
        const std::string name = pick_binder_name(cur->name(), free_names, env);
        if (pushed) out += ' ';
        out += name;
        env.push_back(name);
        ++pushed;
        cur = cur->body();
      }
      out += ". ";
      print_rec(cur, Ctx::Top, env, free_names, out);
      env.resize(env.size() - pushed);
      if (parens) out += ')';
      return;
    }
    case Term::Tag::App: {
      const bool parens = ctx == Ctx::Arg;
      if (parens) out += '(';
      print_rec(t->fun(), Ctx::Fun, env, free_names, out);
      out += ' ';
      print_rec(t->arg(), Ctx::Arg, env, free_names, out);
      if (parens) out += ')';
      return;
    }
  }
}

std::string trimmed(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Lexicographically least redex of `src` whose contraction is alpha-equal to
// `tgt`, or ChainError.
Position infer_witness(const TermPtr& src, const TermPtr& tgt, int line) {
  for (const Position& p : redexes(src)) {
    if (alpha_eq(contract(src, p).target, tgt)) return p;
  }
  throw ChainError("link-invalid: no redex of the term at line " + std::to_string(line) +
                   " contracts to its neighbor");
}

nlohmann::json steps_json(const ReductionPath& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Step& s : p.steps) {
    arr.push_back({{"from", print_term(s.source)},
                   {"redex", s.redex.to_string()},
                   {"to", print_term(s.target)}});
  }
  return arr;
}

ReductionPath steps_from_json(const nlohmann::json& arr, const TermPtr& fallback_source) {
  ReductionPath p(fallback_source);
  if (!arr.empty()) p.source = parse_term(arr.front().at("from").get<std::string>());
  for (const auto& e : arr) {
    Step s;
    s.source = parse_term(e.at("from").get<std::string>());
    s.redex = Position::from_string(e.at("redex").get<std::string>());
    s.target = parse_term(e.at("to").get<std::string>());
    p.steps.push_back(std::move(s));
  }
  return p;
}

void path_text(const ReductionPath& p, const char* label, std::string& out) {
  out += label;
  out += " (";
  out += std::to_string(p.length());
  out += p.length() == 1 ? " step" : " steps";
  out += "):\n";
  if (p.steps.empty()) {
    out += "  " + print_term(p.source) + "\n";
    return;
  }
  for (const Step& s : p.steps) {
    out += "  " + print_term(s.source) + " -[" + s.redex.to_string() + "]-> " +
           print_term(s.target) + "\n";
  }
}

}  // namespace

TermPtr parse_term(const std::string& text) { return Parser(text).parse(); }

std::string print_term(const TermPtr& t) {
  std::set<std::string> free_names;
  collect_free_names(t, free_names);
  std::vector<std::string> env;
  std::string out;
  print_rec(t, Ctx::Top, env, free_names, out);
  return out;
}

EqualityChain parse_chain(const std::string& doc) {
  std::vector<std::string> lines;
  std::istringstream in(doc);
  for (std::string line; std::getline(in, line);) lines.push_back(trimmed(line));
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("empty chain document", 1, 1);

  EqualityChain c;
  std::vector<Arrow> arrows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    if (i % 2 == 0) {
      try {
        c.terms.push_back(parse_term(lines[i]));
      } catch (const ParseError& e) {
        throw ParseError(std::string("line ") + std::to_string(line_no) + ": " + e.what(),
                         line_no, e.column);
      }
    } else if (lines[i] == "->") {
      arrows.push_back(Arrow::Right);
    } else if (lines[i] == "<-") {
      arrows.push_back(Arrow::Left);
    } else {
      throw ParseError("expected '->' or '<-'", line_no, 1);
    }
  }
  if (lines.size() % 2 == 0) {
    throw ParseError("chain document ends with an arrow", static_cast<int>(lines.size()), 1);
  }
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const std::size_t src = arrows[i] == Arrow::Right ? i : i + 1;
    const std::size_t tgt = arrows[i] == Arrow::Right ? i + 1 : i;
    const int src_line = static_cast<int>(2 * src) + 1;
    c.links.push_back({arrows[i], infer_witness(c.terms[src], c.terms[tgt], src_line)});
  }
  return c;
}

std::string emit_chain(const EqualityChain& c) {
  std::string out = print_term(c.terms.front()) + "\n";
  for (std::size_t i = 0; i < c.links.size(); ++i) {
    out += c.links[i].arrow == Arrow::Right ? "->\n" : "<-\n";
    out += print_term(c.terms[i + 1]) + "\n";
  }
  return out;
}

std::string emit_certificate_text(const JoinCertificate& cert,
                                  const std::vector<BoundCheck>& checks) {
  std::string out = "common reduct " + cert.descriptor + ": " + print_term(cert.reduct) + "\n";
  path_text(cert.left_path, "left path", out);
  path_text(cert.right_path, "right path", out);
  if (!checks.empty()) {
    out += "bound checks:\n";
    for (const BoundCheck& b : checks) {
      out += "  " + b.name + ": " + b.actual + " <= " + b.bound + " " +
             (b.ok ? "[ok]" : "[FAIL]") + "\n";
    }
  }
  return out;
}

nlohmann::json certificate_json(const JoinCertificate& cert,
                                const std::vector<BoundCheck>& checks) {
  nlohmann::json bound_checks = nlohmann::json::array();
  for (const BoundCheck& b : checks) {
    bound_checks.push_back(
        {{"name", b.name}, {"actual", b.actual}, {"bound", b.bound}, {"ok", b.ok}});
  }
  return nlohmann::json{{"descriptor", cert.descriptor},
                        {"reduct", print_term(cert.reduct)},
                        {"left_steps", steps_json(cert.left_path)},
                        {"right_steps", steps_json(cert.right_path)},
                        {"lengths",
                         {{"left", cert.left_path.length()}, {"right", cert.right_path.length()}}},
                        {"bound_checks", bound_checks}};
}

JoinCertificate parse_certificate_json(const nlohmann::json& doc) {
  JoinCertificate cert;
  cert.descriptor = doc.at("descriptor").get<std::string>();
  cert.reduct = parse_term(doc.at("reduct").get<std::string>());
  cert.left_path = steps_from_json(doc.at("left_steps"), cert.reduct);
  cert.right_path = steps_from_json(doc.at("right_steps"), cert.reduct);
  return cert;
}

}  // namespace lamcr
