#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "lamcr/join.hpp"
#include "lamcr/term.hpp"

namespace lamcr {

// Grammar: "\x. body" or "λx. body" (body extends maximally right,
// multi-binder sugar "\x y. M"), juxtaposition left-associative, parentheses,
// identifiers = letter (letter | digit | '_' | ''')*.
TermPtr parse_term(const std::string& text);

// Minimal-parentheses form; parse_term(print_term(t)) is alpha-equal to t.
std::string print_term(const TermPtr& t);

// Line-based chain document: term lines alternating with "->" / "<-" lines.
// Witnesses are inferred (lexicographically least redex whose contraction
// matches the next term); a link with no such redex raises ChainError.
EqualityChain parse_chain(const std::string& doc);
std::string emit_chain(const EqualityChain& c);

// One bound comparison attached to an emitted certificate.
struct BoundCheck {
  std::string name;
  std::string actual;
  std::string bound;
  bool ok = true;
};

std::string emit_certificate_text(const JoinCertificate& cert,
                                  const std::vector<BoundCheck>& checks = {});
nlohmann::json certificate_json(const JoinCertificate& cert,
                                const std::vector<BoundCheck>& checks = {});
JoinCertificate parse_certificate_json(const nlohmann::json& doc);

}  // namespace lamcr
