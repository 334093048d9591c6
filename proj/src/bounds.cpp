#include "lamcr/bounds.hpp"

#include <stdexcept>

#include "lamcr/caps.hpp"

namespace lamcr {

namespace {

BigInt ceil_rat(const BigRat& v) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  BigInt q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q;
}

std::size_t bit_cap() { return caps().bound_bits; }

bool fits_size_t(const BigInt& v) {
  return v >= 0 && v <= BigInt(std::numeric_limits<std::size_t>::max());
}

}  // namespace

BoundValue BoundValue::exact(BigRat v) {
  BoundValue out;
  out.value_ = std::move(v);
  return out;
}

BoundValue BoundValue::overflow() {
  BoundValue out;
  out.overflow_ = true;
  return out;
}

const BigRat& BoundValue::value() const {
  if (overflow_) throw std::logic_error("BoundValue: value() on overflow");
  return value_;
}

bool BoundValue::is_integer() const {
  return !overflow_ && boost::multiprecision::denominator(value_) == 1;
}

std::string BoundValue::to_string() const {
  if (overflow_) return "overflow(>2^" + std::to_string(bit_cap()) + ")";
  const BigInt num = boost::multiprecision::numerator(value_);
  const BigInt den = boost::multiprecision::denominator(value_);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool operator==(const BoundValue& a, const BoundValue& b) {
  if (a.overflow_ || b.overflow_) return a.overflow_ && b.overflow_;
  return a.value_ == b.value_;
}

bool operator<(const BoundValue& a, const BoundValue& b) {
  if (b.overflow_) return !a.overflow_;
  if (a.overflow_) return false;
  return a.value_ < b.value_;
}

bool operator<=(const BoundValue& a, const BoundValue& b) { return a < b || a == b; }

BoundValue operator+(const BoundValue& a, const BoundValue& b) {
  if (a.overflow_ || b.overflow_) return BoundValue::overflow();
  return BoundValue::exact(a.value_ + b.value_);
}

BoundValue operator-(const BoundValue& a, const BoundValue& b) {
  if (a.overflow_ || b.overflow_) return BoundValue::overflow();
  return BoundValue::exact(a.value_ - b.value_);
}

BoundValue operator*(const BoundValue& a, const BoundValue& b) {
  if (a.overflow_ || b.overflow_) return BoundValue::overflow();
  return BoundValue::exact(a.value_ * b.value_);
}

BoundValue operator/(const BoundValue& a, const BoundValue& b) {
  if (a.overflow_ || b.overflow_) return BoundValue::overflow();
  if (b.value_ == 0) throw std::logic_error("BoundValue: division by zero");
  return BoundValue::exact(a.value_ / b.value_);
}

BoundValue bv_half(const BoundValue& v) { return v * BoundValue::exact(BigRat(1, 2)); }

BoundValue bv_pow(const BoundValue& base, const BoundValue& exp) {
  if (base.is_overflow() || exp.is_overflow()) return BoundValue::overflow();
  if (!exp.is_integer() || exp.value() < 0) {
    throw std::logic_error("bv_pow: exponent must be a non-negative integer");
  }
  const BigInt e = boost::multiprecision::numerator(exp.value());
  const BigRat& b = base.value();
  if (e == 0 || b == 1) return BoundValue::exact(1);
  if (b == 0) return BoundValue::exact(0);
  const BigInt num = boost::multiprecision::numerator(b);
  const BigInt den = boost::multiprecision::denominator(b);
  // Bit-length estimate before computing: |result| <= e * bits(num/den).
  const std::size_t bits =
      std::max(boost::multiprecision::msb(boost::multiprecision::abs(num)),
               boost::multiprecision::msb(den)) + 1;
  if (!fits_size_t(e) || static_cast<std::size_t>(e) > bit_cap() / bits) {
    return BoundValue::overflow();
  }
  const auto ue = static_cast<unsigned long>(e);
  return BoundValue::exact(BigRat(boost::multiprecision::pow(num, ue),
                                  boost::multiprecision::pow(den, ue)));
}

BoundValue bv_pow2(const BoundValue& exp) {
  if (exp.is_overflow()) return BoundValue::overflow();
  // Fractional exponents are rounded up: the results stay valid upper bounds.
  const BigInt e = ceil_rat(exp.value());
  if (e >= 0) {
    if (!fits_size_t(e) || static_cast<std::size_t>(e) > bit_cap()) {
      return BoundValue::overflow();
    }
    return BoundValue::exact(BigRat(BigInt(1) << static_cast<unsigned long>(e)));
  }
  const BigInt ne = -e;
  if (!fits_size_t(ne) || static_cast<std::size_t>(ne) > bit_cap()) {
    return BoundValue::exact(0);  // vanishing lower tail; only reached via F(0, n)
  }
  return BoundValue::exact(BigRat(1, BigInt(1) << static_cast<unsigned long>(ne)));
}

BoundValue bv_tower(const BoundValue& base, std::size_t height) {
  BoundValue t = base;
  for (std::size_t i = 0; i < height; ++i) t = bv_pow2(t);
  return t;
}

BoundValue iter_exp(std::size_t m, std::size_t n) { return bv_tower(BoundValue::of(m), n); }

BoundValue f_iter(std::size_t m, std::size_t n) {
  BoundValue f = BoundValue::of(m);
  for (std::size_t i = 0; i < n; ++i) f = bv_pow2(f - BoundValue::of(1));
  return f;
}

BoundValue len_bound(std::size_t size_m, std::size_t n) {
  if (n == 0) return BoundValue::of(0);
  BoundValue sum;  // sum of F(size_m, k) for k = 0..n-1
  BoundValue f = BoundValue::of(size_m);
  for (std::size_t k = 0; k < n; ++k) {
    sum = sum + f;
    f = bv_pow2(f - BoundValue::of(1));
  }
  return bv_half(sum) - BoundValue::of(n);
}

BoundValue size_after_steps(std::size_t size_m, std::size_t n) {
  // 8 * (|M|/8)^(2^n) = |M|^(2^n) / 8^(2^n - 1); exact rational.
  const BoundValue e = bv_pow2(BoundValue::of(n));
  return bv_pow(BoundValue::of(size_m), e) /
         bv_pow(BoundValue::of(8), e - BoundValue::of(1));
}

BoundValue star_size_bound(std::size_t size_m) {
  if (size_m == 0) throw std::invalid_argument("star_size_bound: size must be >= 1");
  return bv_pow2(BoundValue::of(size_m - 1));
}

BoundValue mon_bound(std::size_t size_m, std::size_t m, std::size_t n) {
  if (n == 0) throw std::invalid_argument("mon_bound: n must be >= 1");
  const BoundValue s = BoundValue::of(size_m);
  if (n == 1) return bv_pow2(bv_pow(s, bv_pow2(BoundValue::of(m))));
  const BoundValue prev = mon_bound(size_m, m, n - 1);
  const BoundValue inner = bv_pow2(prev) * iter_exp(size_m, n - 2);
  return bv_pow2(bv_pow2(inner));
}

BoundValue rev_bound(std::size_t size_m, std::size_t n) {
  if (n == 0) throw std::invalid_argument("rev_bound: n must be >= 1");
  const BoundValue s = BoundValue::of(size_m);
  if (n == 1) return bv_half(s * s);
  const BoundValue prev = rev_bound(size_m, n - 1);
  const BoundValue head = bv_half(bv_pow(s, bv_pow2(BoundValue::of(n))));
  const BoundValue tail =
      bv_pow2(bv_pow(s, bv_pow2(BoundValue::of(n - 1) + prev)));
  return head + tail;
}

BoundValue term_size_chain(const EqualityChain& c) {
  // Canonical derivation: maximal unidirectional runs, each contributing the
  // n-step size bound of its arrow-source; patched with the plain sizes so
  // every chain term is covered even below the formula's break-even point.
  BoundValue best;
  for (const TermPtr& t : c.terms) {
    const BoundValue s = BoundValue::of(t->size());
    if (best < s) best = s;
  }
  std::size_t i = 0;
  while (i < c.links.size()) {
    std::size_t j = i;
    while (j < c.links.size() && c.links[j].arrow == c.links[i].arrow) ++j;
    const std::size_t src = c.links[i].arrow == Arrow::Right ? i : j;
    const BoundValue run = size_after_steps(c.terms[src]->size(), j - i);
    if (best < run) best = run;
    i = j;
  }
  return best;
}

BoundTriple cr_red_bound(std::size_t l, std::size_t size_m, std::size_t r) {
  if (r == 0) throw std::invalid_argument("cr_red_bound: r must be >= 1");
  const BoundValue s = BoundValue::of(size_m);
  const BoundValue s2l = bv_pow(s, bv_pow2(BoundValue::of(l)));
  BoundTriple t;
  t.left_len = bv_half(s2l);
  t.right_len = bv_half(s * s) + bv_pow2(s2l);
  for (std::size_t rr = 2; rr <= r; ++rr) {
    const BoundValue n_prev = t.right_len;
    t.left_len = bv_tower(s2l, rr - 1);
    t.right_len = bv_half(bv_pow(s, bv_pow2(BoundValue::of(rr)))) +
                  bv_pow2(bv_pow(s, bv_pow2(BoundValue::of(rr - 1) + n_prev)));
  }
  t.descriptor = "N_1^{" + std::to_string(r) + "*}";
  return t;
}

BoundTriple v_size_bound(std::size_t l, std::size_t size_m, std::size_t r) {
  if (l == 0 || r == 0 || l > r) {
    throw std::invalid_argument("v_size_bound: order-violation, requires 1 <= l <= r");
  }
  BoundTriple t;
  t.left_len = rev_bound(size_m, l) + iter_exp(size_m, r - 1);
  t.descriptor = "M^{" + std::to_string(r) + "*}";
  t.right_len = rev_bound(size_m, r);
  return t;
}

BoundTriple cr_eq_bound(const std::vector<Arrow>& arrows, std::size_t size0,
                        const BoundValue& term_size_const) {
  const BoundValue s0 = BoundValue::of(size0);
  BoundTriple t;  // <a, M_0^{r*}, b>
  std::size_t r = 0;
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (i == 0) {
      if (arrows[0] == Arrow::Left) {
        t.right_len = BoundValue::of(1);
      } else {
        r = 1;
        t.left_len = bv_half(s0);
        t.right_len = bv_half(s0 * s0);
      }
      continue;
    }
    if (arrows[i] == Arrow::Left) {
      t.right_len = t.right_len + BoundValue::of(1);
    } else {
      t.left_len = t.left_len + bv_half(bv_tower(s0, r));
      t.right_len = bv_half(term_size_const) +
                    bv_pow2(bv_pow(term_size_const, bv_pow2(t.right_len)));
      ++r;
    }
  }
  t.descriptor = reduct_descriptor(0, r);
  return t;
}

BoundValue bl_bound(std::size_t l, std::size_t size_m, std::size_t r) {
  if (r == 0) throw std::invalid_argument("bl_bound: r must be >= 1");
  const BoundValue s = BoundValue::of(size_m);
  if (r == 1) {
    return bv_pow(s, bv_pow2(bv_pow2(BoundValue::of(l)) + BoundValue::of(l + 2)));
  }
  const BoundValue prev = bl_bound(l, size_m, r - 1);
  return bv_pow(s, bv_pow2(bv_pow2(prev) + prev + BoundValue::of(r + 1)));
}

}  // namespace lamcr
