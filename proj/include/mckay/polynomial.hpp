#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "mckay/cyclotomic.hpp"
#include "mckay/error.hpp"
#include "mckay/expression.hpp"
#include "mckay/matrix.hpp"

namespace mckay {

using Exponent = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

/// Graded lexicographic order, leading term first: higher total degree
/// first, then lexicographically larger exponent vectors (x1 > x2 > ...).
struct GradedLexOrder {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return b < a;
  }
};

/// Multivariate polynomial in x1..xn with cyclotomic coefficients. No zero
/// coefficient is ever stored.
class SparsePolynomial {
 public:
  using Terms = std::map<Exponent, Cyclotomic, GradedLexOrder>;

  explicit SparsePolynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static SparsePolynomial constant(std::size_t nvars, const Cyclotomic& c) {
    SparsePolynomial p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }

  /// x_{index+1}
  static SparsePolynomial variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw DomainError("variable index out of range");
    Exponent e(nvars, 0);
    e[index] = 1;
    return monomial(e, Cyclotomic(1));
  }

  static SparsePolynomial monomial(const Exponent& e, const Cyclotomic& c = Cyclotomic(1)) {
    SparsePolynomial p(e.size());
    p.add_term(e, c);
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0); }

  Cyclotomic coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Cyclotomic() : it->second;
  }

  void add_term(const Exponent& e, const Cyclotomic& c) {
    if (e.size() != nvars_) throw DimensionError("exponent length does not match the number of variables");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SparsePolynomial operator-() const {
    SparsePolynomial out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  SparsePolynomial& operator+=(const SparsePolynomial& other) {
    require_same_vars(other);
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
  }

  SparsePolynomial& operator-=(const SparsePolynomial& other) { return *this += -other; }

  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }

  friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
    a.require_same_vars(b);
    SparsePolynomial out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  SparsePolynomial scaled(const Cyclotomic& s) const {
    SparsePolynomial out(nvars_);
    if (s.is_zero()) return out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
    return out;
  }

  SparsePolynomial pow(unsigned exponent) const {
    SparsePolynomial result = constant(nvars_, Cyclotomic(1));
    SparsePolynomial base = *this;
    while (exponent > 0) {
      if (exponent & 1) result = result * base;
      exponent >>= 1;
      if (exponent > 0) base = base * base;
    }
    return result;
  }

  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || ia->second != ib->second) return false;
    }
    return true;
  }

  friend bool operator!=(const SparsePolynomial& a, const SparsePolynomial& b) { return !(a == b); }

  /// Terms `c*x1^a1*...*xn^an` joined by " + ", leading term first.
  std::string render() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      if (!out.empty()) out += " + ";
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(i + 1);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      std::string coeff = c.render();
      if (coeff.find(' ') != std::string::npos) coeff = "(" + coeff + ")";
      if (mono.empty()) {
        out += coeff;
      } else if (c.is_one()) {
        out += mono;
      } else {
        out += coeff + "*" + mono;
      }
    }
    return out;
  }

 private:
  void require_same_vars(const SparsePolynomial& other) const {
    if (nvars_ != other.nvars_) throw DimensionError("polynomials in different numbers of variables");
  }

  std::size_t nvars_;
  Terms terms_;
};

/// Linear substitution x_i -> sum_j m(i, j) x_j.
inline SparsePolynomial substitute(const SparsePolynomial& f, const CycMatrix& m) {
  const std::size_t n = f.nvars();
  if (m.dim() != n) throw DimensionError("substitution matrix does not match the number of variables");
  SparsePolynomial out(n);
  if (m.is_monomial()) {
    // x_i -> c_i x_{target_i}
    std::vector<std::size_t> target(n);
    std::vector<Cyclotomic> scale(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!m(i, j).is_zero()) {
          target[i] = j;
          scale[i] = m(i, j);
        }
      }
    }
    Exponent image(n);
    for (const auto& [e, c] : f.terms()) {
      std::fill(image.begin(), image.end(), 0u);
      Cyclotomic coeff = c;
      for (std::size_t i = 0; i < n; ++i) {
        if (e[i] == 0) continue;
        image[target[i]] += e[i];
        if (!scale[i].is_one()) coeff = coeff * scale[i].pow(e[i]);
      }
      out.add_term(image, coeff);
    }
    return out;
  }
  std::vector<SparsePolynomial> forms;
  for (std::size_t i = 0; i < n; ++i) {
    SparsePolynomial l(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (!m(i, j).is_zero()) l += SparsePolynomial::variable(n, j).scaled(m(i, j));
    }
    forms.push_back(std::move(l));
  }
  // powers[i][k] = forms[i]^k, grown on demand
  std::vector<std::vector<SparsePolynomial>> powers(n);
  auto power_of = [&](std::size_t i, std::uint32_t k) -> const SparsePolynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(SparsePolynomial::constant(n, Cyclotomic(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * forms[i]);
    return cache[k];
  };
  for (const auto& [e, c] : f.terms()) {
    SparsePolynomial term = SparsePolynomial::constant(n, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] > 0) term = term * power_of(i, e[i]);
    }
    out += term;
  }
  return out;
}

/// (g.f)(v) = f(g^-1 v), given g^-1 directly.
inline SparsePolynomial act_by_inverse(const CycMatrix& g_inverse, const SparsePolynomial& f) {
  return substitute(f, g_inverse);
}

/// (g.f)(v) = f(g^-1 v).
inline SparsePolynomial act(const CycMatrix& g, const SparsePolynomial& f) {
  if (g.dim() != f.nvars()) throw DimensionError("matrix does not match the number of variables");
  return substitute(f, g.inverse());
}

namespace detail {

struct PolynomialTraits {
  using Value = SparsePolynomial;
  std::size_t nvars;

  Value constant(const Rational& q) const { return SparsePolynomial::constant(nvars, Cyclotomic(q)); }
  Value root_of_unity(long n) const { return SparsePolynomial::constant(nvars, Cyclotomic::root_of_unity(n, 1)); }
  Value negate(const Value& v) const { return -v; }

  static Cyclotomic constant_value(const Value& v) {
    if (v.is_zero()) return Cyclotomic();
    return v.terms().begin()->second;
  }

  Value divide(const Value& a, const Value& b, std::size_t at) const {
    if (!b.is_constant()) throw ParseError("division by a non-constant polynomial", at);
    if (b.is_zero()) throw ParseError("division by zero", at);
    return a.scaled(constant_value(b).inverse());
  }

  Value power(const Value& b, long e, std::size_t at) const {
    if (e >= 0) return b.pow(static_cast<unsigned>(e));
    if (!b.is_constant()) throw ParseError("negative power of a non-constant polynomial", at);
    if (b.is_zero()) throw ParseError("division by zero", at);
    return SparsePolynomial::constant(nvars, constant_value(b).pow(e));
  }

  Value identifier(std::string_view name, std::size_t at) const {
    if (name.size() >= 2 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const unsigned long index = std::stoul(std::string(name.substr(1)));
      if (index >= 1 && index <= nvars) return SparsePolynomial::variable(nvars, index - 1);
      throw ParseError("variable " + std::string(name) + " out of range 1.." + std::to_string(nvars), at);
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", at);
  }
};

}  // namespace detail

/// Parses polynomial text in variables x1..x{nvars}; coefficients use the
/// cyclotomic expression grammar.
inline SparsePolynomial parse_polynomial(std::string_view text, std::size_t nvars) {
  detail::PolynomialTraits traits{nvars};
  return detail::ExpressionParser<detail::PolynomialTraits>(text, traits).parse();
}

}  // namespace mckay
