#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "lamcr/join.hpp"

namespace lamcr {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// An exact non-negative rational magnitude, or Overflow once a value's bit
// length passes the configured cap. Overflow compares greater than any exact
// value and is absorbing under arithmetic.
class BoundValue {
 public:
  BoundValue() = default;  // exact zero
  static BoundValue exact(BigRat v);
  static BoundValue of(std::size_t n) { return exact(BigRat(n)); }
  static BoundValue overflow();

  bool is_overflow() const { return overflow_; }
  const BigRat& value() const;  // exact values only
  bool is_integer() const;

  std::string to_string() const;

  friend bool operator==(const BoundValue& a, const BoundValue& b);
  friend bool operator<(const BoundValue& a, const BoundValue& b);
  friend bool operator<=(const BoundValue& a, const BoundValue& b);

  friend BoundValue operator+(const BoundValue& a, const BoundValue& b);
  friend BoundValue operator-(const BoundValue& a, const BoundValue& b);
  friend BoundValue operator*(const BoundValue& a, const BoundValue& b);
  friend BoundValue operator/(const BoundValue& a, const BoundValue& b);

 private:
  bool overflow_ = false;
  BigRat value_ = 0;
};

BoundValue bv_half(const BoundValue& v);
// base^exp for rational base >= 0 and integer exponent >= 0, capped.
BoundValue bv_pow(const BoundValue& base, const BoundValue& exp);
// 2^exp; a fractional exponent is rounded up, a negative one gives 1/2^|exp|.
BoundValue bv_pow2(const BoundValue& exp);
// The tower 2_height^base (height 0 = base itself).
BoundValue bv_tower(const BoundValue& base, std::size_t height);

struct BoundTriple {
  BoundValue left_len;
  std::string descriptor;
  BoundValue right_len;
};

BoundValue iter_exp(std::size_t m, std::size_t n);
BoundValue f_iter(std::size_t m, std::size_t n);
BoundValue len_bound(std::size_t size_m, std::size_t n);
BoundValue size_after_steps(std::size_t size_m, std::size_t n);
BoundValue star_size_bound(std::size_t size_m);
BoundValue mon_bound(std::size_t size_m, std::size_t m, std::size_t n);
BoundValue rev_bound(std::size_t size_m, std::size_t n);
BoundValue term_size_chain(const EqualityChain& c);
BoundTriple cr_red_bound(std::size_t l, std::size_t size_m, std::size_t r);
BoundTriple v_size_bound(std::size_t l, std::size_t size_m, std::size_t r);
BoundTriple cr_eq_bound(const std::vector<Arrow>& arrows, std::size_t size0,
                        const BoundValue& term_size_const);
BoundValue bl_bound(std::size_t l, std::size_t size_m, std::size_t r);

}  // namespace lamcr
