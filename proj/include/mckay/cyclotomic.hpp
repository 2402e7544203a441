#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mckay/error.hpp"

namespace mckay {

using Rational = mpq_class;
using Integer = mpz_class;

/// Nonnegative residue of `a` modulo `m` (m > 0).
inline long mod_floor(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

/// Inverse of `a` modulo `m`; requires gcd(a, m) == 1.
inline long mod_inverse(long a, long m) {
  if (m == 1) return 0;
  long old_r = mod_floor(a, m), r = m;
  long old_s = 1, s = 0;
  while (r != 0) {
    long q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw DomainError("no inverse of " + std::to_string(a) + " modulo " + std::to_string(m));
  return mod_floor(old_s, m);
}

inline long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

inline std::vector<long> prime_factors(long n) {
  std::vector<long> primes;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

namespace detail {

/// Per-conductor reduction data. `modulus` holds the coefficients of the
/// cyclotomic polynomial Phi_N (monic, degree phi(N)); `x_powers[e]` holds
/// x^e mod Phi_N for 0 <= e < 2 phi(N) - 1.
struct CyclotomicTables {
  long conductor = 1;
  std::size_t degree = 1;
  std::vector<long> modulus;
  std::vector<std::vector<long>> x_powers;
};

inline std::vector<long> divide_exact(std::vector<long> num, const std::vector<long>& den) {
  // den is monic
  const std::size_t dn = den.size() - 1;
  std::vector<long> quotient(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    long c = num[i];
    quotient[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t k = 0; k <= dn; ++k) num[i - dn + k] -= c * den[k];
  }
  return quotient;
}

inline std::vector<long> compute_cyclotomic_polynomial(long n,
                                                       const std::function<const std::vector<long>&(long)>& lookup) {
  std::vector<long> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_exact(std::move(poly), lookup(d));
  }
  return poly;
}

class TableCache {
 public:
  static TableCache& instance() {
    static TableCache cache;
    return cache;
  }

  const CyclotomicTables& get(long n) {
    std::lock_guard<std::mutex> lock(mutex_);
    return get_locked(n);
  }

 private:
  const CyclotomicTables& get_locked(long n) {
    auto it = tables_.find(n);
    if (it != tables_.end()) return *it->second;
    auto t = std::make_unique<CyclotomicTables>();
    t->conductor = n;
    t->modulus = compute_cyclotomic_polynomial(
        n, [this](long d) -> const std::vector<long>& { return get_locked(d).modulus; });
    t->degree = t->modulus.size() - 1;
    const std::size_t deg = t->degree;
    const std::size_t count = 2 * deg - 1;
    t->x_powers.assign(count, std::vector<long>(deg, 0));
    for (std::size_t e = 0; e < deg; ++e) t->x_powers[e][e] = 1;
    for (std::size_t e = deg; e < count; ++e) {
      // x^e = x * x^{e-1}; shift and fold the overflow through Phi_N.
      const auto& prev = t->x_powers[e - 1];
      auto& cur = t->x_powers[e];
      long top = prev[deg - 1];
      for (std::size_t k = deg - 1; k > 0; --k) cur[k] = prev[k - 1];
      cur[0] = 0;
      if (top != 0) {
        for (std::size_t k = 0; k < deg; ++k) cur[k] -= top * t->modulus[k];
      }
    }
    auto [pos, inserted] = tables_.emplace(n, std::move(t));
    return *pos->second;
  }

  std::mutex mutex_;
  std::map<long, std::unique_ptr<CyclotomicTables>> tables_;
};

inline const CyclotomicTables& tables(long n) { return TableCache::instance().get(n); }

// Dense polynomial helpers over Q used by the field inverse.
using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline std::pair<QPoly, QPoly> divmod(QPoly num, const QPoly& den) {
  QPoly quotient;
  if (num.size() < den.size()) return {quotient, num};
  quotient.assign(num.size() - den.size() + 1, Rational(0));
  const Rational& lead = den.back();
  for (std::size_t i = num.size(); i-- >= den.size();) {
    if (num[i] == 0) continue;
    Rational c = num[i] / lead;
    quotient[i - den.size() + 1] = c;
    for (std::size_t k = 0; k < den.size(); ++k) num[i - den.size() + 1 + k] -= c * den[k];
  }
  num.resize(den.size() - 1);
  trim(num);
  trim(quotient);
  return {quotient, num};
}

inline QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

inline QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

}  // namespace detail

/// The N-th cyclotomic polynomial, lowest coefficient first.
inline const std::vector<long>& cyclotomic_polynomial(long n) {
  if (n <= 0) throw DomainError("cyclotomic polynomial of nonpositive index");
  return detail::tables(n).modulus;
}

/// An exact element of Q(zeta_N).
///
/// The value is stored as the residue of a rational polynomial in x modulo
/// Phi_N, with x standing for the fixed primitive N-th root zeta_N. For
/// r | N the primitive r-th root used everywhere is zeta_N^(N/r), so the
/// choice of roots is coherent across conductors. Binary operations lift both
/// operands to the lcm of their conductors; nothing ever lowers a conductor.
class Cyclotomic {
 public:
  Cyclotomic() : conductor_(1), coeffs_(1, Rational(0)) {}
  Cyclotomic(long value) : conductor_(1), coeffs_(1, Rational(value)) {}  // NOLINT
  Cyclotomic(const Rational& value) : conductor_(1), coeffs_(1, value) {}  // NOLINT

  static Cyclotomic zero(long conductor) {
    Cyclotomic z;
    z.conductor_ = conductor;
    z.coeffs_.assign(detail::tables(conductor).degree, Rational(0));
    return z;
  }

  static Cyclotomic rational(const Rational& value, long conductor) {
    Cyclotomic z = zero(conductor);
    z.coeffs_[0] = value;
    return z;
  }

  /// zeta_order^exponent, represented at conductor `order`.
  static Cyclotomic root_of_unity(long order, long exponent) {
    if (order <= 0) throw DomainError("root of unity of nonpositive order");
    return root_of_unity_at(order, order, exponent);
  }

  /// zeta_order^exponent, represented at `conductor` (order must divide it).
  static Cyclotomic root_of_unity_at(long conductor, long order, long exponent) {
    if (order <= 0 || conductor % order != 0) throw DomainError("root order must divide the conductor");
    const long e = mod_floor(exponent, order) * (conductor / order);
    return x_power(conductor, e);
  }

  /// Build from a coefficient vector of length <= phi(N) in the power basis.
  static Cyclotomic from_coefficients(long conductor, std::vector<Rational> coeffs) {
    const auto& t = detail::tables(conductor);
    if (coeffs.size() > t.degree) {
      Cyclotomic z = zero(conductor);
      z.accumulate_reduced(coeffs);
      return z;
    }
    coeffs.resize(t.degree, Rational(0));
    Cyclotomic z;
    z.conductor_ = conductor;
    z.coeffs_ = std::move(coeffs);
    return z;
  }

  long conductor() const noexcept { return conductor_; }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
  }

  bool is_rational() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
  }

  bool is_one() const { return is_rational() && coeffs_[0] == 1; }

  /// Rational value; only meaningful when is_rational().
  const Rational& rational_part() const { return coeffs_[0]; }

  /// The same value at conductor M, via zeta_N = zeta_M^(M/N).
  Cyclotomic embed(long target) const {
    if (target <= 0 || target % conductor_ != 0) {
      throw DomainError("cannot embed conductor " + std::to_string(conductor_) + " into " +
                        std::to_string(target));
    }
    if (target == conductor_) return *this;
    const long step = target / conductor_;
    Cyclotomic out = zero(target);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      out.add_scaled_x_power(coeffs_[i], static_cast<long>(i) * step);
    }
    return out;
  }

  /// Galois automorphism zeta_N -> zeta_N^t, gcd(t, N) = 1.
  Cyclotomic galois(long t) const {
    if (std::gcd(t, conductor_) != 1) throw DomainError("Galois exponent not coprime to conductor");
    Cyclotomic out = zero(conductor_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      out.add_scaled_x_power(coeffs_[i], mod_floor(static_cast<long>(i) * t, conductor_));
    }
    return out;
  }

  Cyclotomic operator-() const {
    Cyclotomic out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  Cyclotomic& operator+=(const Cyclotomic& other) {
    if (other.conductor_ == conductor_) {
      for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
      return *this;
    }
    const long m = std::lcm(conductor_, other.conductor_);
    if (m != conductor_) *this = embed(m);
    const Cyclotomic rhs = other.embed(m);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
  }

  Cyclotomic& operator-=(const Cyclotomic& other) { return *this += -other; }

  Cyclotomic& operator*=(const Cyclotomic& other) {
    *this = *this * other;
    return *this;
  }

  Cyclotomic& operator/=(const Cyclotomic& other) {
    *this = *this / other;
    return *this;
  }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor_ != b.conductor_) {
      const long m = std::lcm(a.conductor_, b.conductor_);
      return a.embed(m) * b.embed(m);
    }
    if (b.is_rational()) return a.scaled(b.coeffs_[0]);
    if (a.is_rational()) return b.scaled(a.coeffs_[0]);
    const std::size_t deg = a.coeffs_.size();
    std::vector<Rational> product(2 * deg - 1, Rational(0));
    for (std::size_t i = 0; i < deg; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < deg; ++j) {
        if (b.coeffs_[j] == 0) continue;
        product[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    Cyclotomic out = zero(a.conductor_);
    out.accumulate_reduced(product);
    return out;
  }

  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  Cyclotomic scaled(const Rational& factor) const {
    Cyclotomic out = *this;
    if (factor == 1) return out;
    for (auto& c : out.coeffs_) {
      if (c != 0) c *= factor;
    }
    return out;
  }

  /// Multiplicative inverse via the extended Euclidean algorithm against Phi_N.
  Cyclotomic inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (is_rational()) return rational(1 / coeffs_[0], conductor_);
    const auto& t = detail::tables(conductor_);
    detail::QPoly modulus(t.modulus.begin(), t.modulus.end());
    detail::QPoly value(coeffs_.begin(), coeffs_.end());
    detail::trim(value);
    // Invariant: s_i * value == r_i (mod Phi_N).
    detail::QPoly r0 = modulus, r1 = value;
    detail::QPoly s0, s1{Rational(1)};
    while (r1.size() > 1) {
      auto [q, r] = detail::divmod(r0, r1);
      detail::QPoly s = detail::sub(s0, detail::mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    if (r1.empty()) throw ConsistencyError("cyclotomic polynomial is not irreducible");
    const Rational inv_lead = 1 / r1[0];
    for (auto& c : s1) c *= inv_lead;
    return from_coefficients(conductor_, std::move(s1));
  }

  Cyclotomic pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    Cyclotomic result = rational(1, conductor_);
    Cyclotomic base = *this;
    while (exponent > 0) {
      if (exponent & 1) result = result * base;
      exponent >>= 1;
      if (exponent > 0) base = base * base;
    }
    return result;
  }

  /// If the value is a root of unity, returns (r, k) with minimal r such that
  /// the value equals zeta_r^k, 0 <= k < r.
  std::optional<std::pair<long, long>> as_root_of_unity() const {
    // Roots of unity in Q(zeta_N) are the 2N-th roots (N odd) or N-th roots.
    const long full = conductor_ % 2 == 0 ? conductor_ : 2 * conductor_;
    if (is_zero()) return std::nullopt;
    const Cyclotomic here = embed(full);
    for (long j = 0; j < full; ++j) {
      if (here == x_power(full, j)) {
        const long g = std::gcd(j, full);
        return std::make_pair(full / g, j / g);
      }
    }
    return std::nullopt;
  }

  /// Value equality across conductors.
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
    const long m = std::lcm(a.conductor_, b.conductor_);
    return a.embed(m).coeffs_ == b.embed(m).coeffs_;
  }

  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  /// Strict order on representations (conductor first, then coefficients).
  /// Only meaningful as a map key among values sharing a conductor.
  friend bool canonical_less(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor_ != b.conductor_) return a.conductor_ < b.conductor_;
    return std::lexicographical_compare(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(),
                                        b.coeffs_.end());
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(conductor_) * 0x9e3779b97f4a7c15ULL;
    for (const auto& c : coeffs_) {
      std::size_t v = mpz_get_ui(c.get_num_mpz_t()) * 31u + mpz_get_ui(c.get_den_mpz_t());
      if (mpz_sgn(c.get_num_mpz_t()) < 0) v = ~v;
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  /// Renders in the expression grammar: terms `c*E(N)^i` joined by + and -.
  std::string render() const {
    std::string out;
    const std::string root = "E(" + std::to_string(conductor_) + ")";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const Rational& c = coeffs_[i];
      if (c == 0) continue;
      const bool negative = c < 0;
      const Rational mag = negative ? Rational(-c) : c;
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      std::string term;
      if (i == 0) {
        term = mag.get_str();
      } else {
        if (mag != 1) term = mag.get_str() + "*";
        term += root;
        if (i > 1) term += "^" + std::to_string(i);
      }
      out += term;
    }
    return out.empty() ? "0" : out;
  }

 private:
  static Cyclotomic x_power(long conductor, long e) {
    Cyclotomic out = zero(conductor);
    out.add_scaled_x_power(Rational(1), mod_floor(e, conductor));
    return out;
  }

  // coeffs_ += c * (x^e mod Phi_N), any e >= 0.
  void add_scaled_x_power(const Rational& c, long e) {
    const auto& t = detail::tables(conductor_);
    e = mod_floor(e, conductor_);
    const auto limit = static_cast<long>(t.x_powers.size());
    if (e < limit) {
      const auto& row = t.x_powers[static_cast<std::size_t>(e)];
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] != 0) coeffs_[k] += c * row[k];
      }
      return;
    }
    std::vector<Rational> poly(static_cast<std::size_t>(e) + 1, Rational(0));
    poly[static_cast<std::size_t>(e)] = c;
    long_divide(poly, t);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += poly[k];
  }

  static void long_divide(std::vector<Rational>& poly, const detail::CyclotomicTables& t) {
    const std::size_t deg = t.degree;
    for (std::size_t i = poly.size(); i-- > deg;) {
      if (poly[i] == 0) continue;
      const Rational c = poly[i];
      for (std::size_t k = 0; k <= deg; ++k) {
        if (t.modulus[k] != 0) poly[i - deg + k] -= c * t.modulus[k];
      }
    }
    poly.resize(deg, Rational(0));
  }

  // coeffs_ += poly mod Phi_N, for poly of length <= 2 phi(N) - 1 (longer
  // inputs fall back to long division).
  void accumulate_reduced(std::vector<Rational>& poly) {
    const auto& t = detail::tables(conductor_);
    if (poly.size() > t.x_powers.size()) {
      long_divide(poly, t);
    }
    const std::size_t deg = t.degree;
    for (std::size_t i = 0; i < std::min(deg, poly.size()); ++i) coeffs_[i] += poly[i];
    for (std::size_t e = deg; e < poly.size(); ++e) {
      if (poly[e] == 0) continue;
      const auto& row = t.x_powers[e];
      for (std::size_t k = 0; k < deg; ++k) {
        if (row[k] != 0) coeffs_[k] += poly[e] * row[k];
      }
    }
  }

  long conductor_;
  std::vector<Rational> coeffs_;
};

}  // namespace mckay

template <>
struct std::hash<mckay::Cyclotomic> {
  std::size_t operator()(const mckay::Cyclotomic& c) const { return c.hash(); }
};
