#pragma once

// Finite fields F_q, q = p^d, in polynomial basis over Z_p.
//
// An element is identified by a code in [0, q): the coefficient tuple
// (c_0, ..., c_{d-1}) read as base-p digits with c_0 most significant, so code
// order is lexicographic order on coefficient tuples (low degree first).

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pgds/arith.hpp"
#include "pgds/error.hpp"

namespace pgds {

struct FieldElement {
  std::uint32_t code = 0;
  auto operator<=>(const FieldElement&) const = default;
};

class Field {
 public:
  /// Largest field order this library tabulates.
  static constexpr std::uint64_t kMaxOrder = 1u << 20;

  /// Builds F_{p^d} with the lexicographically least monic irreducible
  /// modulus and the least primitive element. Deterministic.
  static std::shared_ptr<const Field> build(std::uint32_t p, std::uint32_t d) {
    if (!is_prime(p)) throw ParameterError("field characteristic " + std::to_string(p) + " is not prime");
    if (d < 1) throw ParameterError("field degree must be >= 1");
    const std::int64_t q = checked_pow(p, d);
    if (static_cast<std::uint64_t>(q) > kMaxOrder) {
      throw ParameterError("field order " + std::to_string(q) + " exceeds supported size");
    }
    return std::shared_ptr<const Field>(new Field(p, d, static_cast<std::uint32_t>(q)));
  }

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return d_; }
  std::uint32_t order() const noexcept { return q_; }

  /// Modulus coefficients low degree first, length d + 1, leading 1.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  FieldElement primitive_element() const noexcept { return gamma_; }

  FieldElement zero() const noexcept { return {0}; }
  FieldElement one() const noexcept { return from_coefficients(unit_coeffs()); }

  std::vector<std::uint32_t> coefficients(FieldElement a) const {
    std::vector<std::uint32_t> c(d_);
    std::uint32_t code = a.code;
    for (std::uint32_t i = d_; i-- > 0;) {
      c[i] = code % p_;
      code /= p_;
    }
    return c;
  }

  FieldElement from_coefficients(std::span<const std::uint32_t> c) const {
    if (c.size() != d_) throw ParameterError("coefficient tuple has wrong length");
    std::uint32_t code = 0;
    for (std::uint32_t x : c) {
      if (x >= p_) throw ParameterError("coefficient out of range");
      code = code * p_ + x;
    }
    return {code};
  }

  /// Integer n reduced into the prime subfield.
  FieldElement from_integer(std::int64_t n) const {
    std::vector<std::uint32_t> c(d_, 0);
    c[0] = static_cast<std::uint32_t>(((n % p_) + p_) % p_);
    return from_coefficients(c);
  }

  FieldElement add(FieldElement a, FieldElement b) const noexcept {
    std::uint32_t out = 0;
    std::uint32_t stride = 1;
    std::uint32_t x = a.code, y = b.code;
    for (std::uint32_t i = 0; i < d_; ++i) {
      out += ((x % p_ + y % p_) % p_) * stride;
      x /= p_;
      y /= p_;
      stride *= p_;
    }
    return {out};
  }

  FieldElement neg(FieldElement a) const noexcept {
    std::uint32_t out = 0;
    std::uint32_t stride = 1;
    std::uint32_t x = a.code;
    for (std::uint32_t i = 0; i < d_; ++i) {
      out += ((p_ - x % p_) % p_) * stride;
      x /= p_;
      stride *= p_;
    }
    return {out};
  }

  FieldElement sub(FieldElement a, FieldElement b) const noexcept { return add(a, neg(b)); }

  FieldElement mul(FieldElement a, FieldElement b) const noexcept {
    if (a.code == 0 || b.code == 0) return zero();
    const std::uint64_t e = (static_cast<std::uint64_t>(log_[a.code]) + log_[b.code]) % (q_ - 1);
    return {exp_[e]};
  }

  FieldElement pow(FieldElement a, std::uint64_t n) const noexcept {
    if (n == 0) return one();
    if (a.code == 0) return zero();
    const std::uint64_t e = (static_cast<std::uint64_t>(log_[a.code]) * (n % (q_ - 1))) % (q_ - 1);
    return {exp_[e]};
  }

  FieldElement inv(FieldElement a) const {
    if (a.code == 0) throw std::domain_error("zero has no inverse");
    return {exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
  }

  /// Discrete logarithm to the base of the primitive element.
  std::uint32_t log(FieldElement a) const {
    if (a.code == 0) throw std::domain_error("discrete log of zero");
    return log_[a.code];
  }

  /// primitive_element^k.
  FieldElement exp(std::uint64_t k) const noexcept { return {exp_[k % (q_ - 1)]}; }

  /// Multiplicative order of a nonzero element.
  std::uint64_t multiplicative_order(FieldElement a) const {
    const std::uint64_t n = q_ - 1;
    const std::uint64_t l = log(a);
    return n / std::gcd(n, l);
  }

  /// "(c0,c1,...)" for degree > 1, plain integer for prime fields.
  std::string format(FieldElement a) const {
    const auto c = coefficients(a);
    if (d_ == 1) return std::to_string(c[0]);
    std::string s = "(";
    for (std::uint32_t i = 0; i < d_; ++i) {
      if (i) s += ',';
      s += std::to_string(c[i]);
    }
    return s + ")";
  }

  bool operator==(const Field& o) const noexcept { return p_ == o.p_ && d_ == o.d_ && modulus_ == o.modulus_; }

 private:
  using Poly = std::vector<std::uint32_t>;  // low degree first

  Field(std::uint32_t p, std::uint32_t d, std::uint32_t q) : p_(p), d_(d), q_(q) {
    modulus_ = least_irreducible();
    gamma_ = least_primitive();
    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    Poly acc = unit_coeffs();
    const Poly g = coefficients(gamma_);
    for (std::uint32_t k = 0; k + 1 < q_; ++k) {
      const std::uint32_t code = from_coefficients(acc).code;
      exp_[k] = code;
      log_[code] = k;
      acc = mulmod(acc, g);
    }
  }

  Poly unit_coeffs() const {
    Poly c(d_, 0);
    c[0] = 1 % p_;
    return c;
  }

  // Remainder of a modulo a monic polynomial m (both low degree first).
  Poly polymod(Poly a, const Poly& m) const {
    const std::size_t dm = m.size() - 1;
    for (std::size_t k = a.size(); k-- > dm;) {
      const std::uint32_t c = a[k];
      if (c == 0) continue;
      for (std::size_t t = 0; t <= dm; ++t) {
        a[k - dm + t] = (a[k - dm + t] + (p_ - c) * m[t]) % p_;
      }
    }
    a.resize(dm);
    return a;
  }

  Poly mulmod(const Poly& a, const Poly& b) const {
    Poly prod(2 * d_ - 1, 0);
    for (std::uint32_t i = 0; i < d_; ++i) {
      if (a[i] == 0) continue;
      for (std::uint32_t j = 0; j < d_; ++j) {
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p_);
      }
    }
    return polymod(std::move(prod), modulus_);
  }

  // Enumerates tuples of length n over Z_p in lexicographic order (first entry most significant).
  Poly tuple_from_code(std::uint64_t code, std::uint32_t n) const {
    Poly c(n);
    for (std::uint32_t i = n; i-- > 0;) {
      c[i] = static_cast<std::uint32_t>(code % p_);
      code /= p_;
    }
    return c;
  }

  bool irreducible(const Poly& m) const {
    const std::uint32_t deg = static_cast<std::uint32_t>(m.size() - 1);
    for (std::uint32_t fd = 1; fd <= deg / 2; ++fd) {
      const std::uint64_t count = static_cast<std::uint64_t>(checked_pow(p_, fd));
      for (std::uint64_t code = 0; code < count; ++code) {
        Poly f = tuple_from_code(code, fd);
        f.push_back(1);
        const Poly r = polymod(m, f);
        bool zero = true;
        for (auto x : r) zero = zero && x == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  Poly least_irreducible() const {
    for (std::uint64_t code = 0; code < q_; ++code) {
      Poly m = tuple_from_code(code, d_);
      m.push_back(1);
      if (irreducible(m)) return m;
    }
    throw std::logic_error("no irreducible polynomial found");
  }

  Poly polypow(Poly base, std::uint64_t n) const {
    Poly acc = unit_coeffs();
    while (n) {
      if (n & 1) acc = mulmod(acc, base);
      base = mulmod(base, base);
      n >>= 1;
    }
    return acc;
  }

  FieldElement least_primitive() const {
    const std::uint64_t n = q_ - 1;
    const auto primes = prime_divisors(n);
    const Poly one = unit_coeffs();
    for (std::uint32_t code = 1; code < q_; ++code) {
      const Poly g = tuple_from_code(code, d_);
      bool primitive = true;
      for (auto l : primes) {
        if (polypow(g, n / l) == one) {
          primitive = false;
          break;
        }
      }
      if (primitive) return {code};
    }
    throw std::logic_error("no primitive element found");
  }

  std::uint32_t p_;
  std::uint32_t d_;
  std::uint32_t q_;
  Poly modulus_;
  FieldElement gamma_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// build_field(p, d).
inline FieldPtr build_field(std::uint32_t p, std::uint32_t d) { return Field::build(p, d); }

}  // namespace pgds
