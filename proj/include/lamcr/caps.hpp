#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lamcr {

// Global resource limits guarding divergence in the untyped calculus.
// Set once at startup (CLI flags); read-only afterwards.
struct Caps {
  std::size_t term_nodes = std::size_t{1} << 22;  // max nodes in any built term
  std::size_t path_steps = std::size_t{1} << 20;  // max steps in any built path
  std::size_t bound_bits = std::size_t{1} << 20;  // max bit length of exact bound values
};

Caps& caps();

struct ResourceCapError : std::runtime_error {
  explicit ResourceCapError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidPositionError : std::runtime_error {
  explicit InvalidPositionError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& what, int line_, int column_)
      : std::runtime_error(what + " at " + std::to_string(line_) + ":" + std::to_string(column_)),
        line(line_),
        column(column_) {}
};

struct ChainError : std::runtime_error {
  explicit ChainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lamcr
