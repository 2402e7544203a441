#pragma once

// Floating-point evaluation at the embedding E(N) -> exp(2 pi i / N). Only a
// cross-check; nothing in the library depends on it.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "mckay/mckay.hpp"

namespace support {

using Complex = std::complex<double>;

inline Complex unit_root(long n, long k) {
  const double angle = 2.0 * M_PI * static_cast<double>(k % n) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

inline Complex evaluate(const mckay::Cyclotomic& c, long galois_t = 1) {
  Complex sum = 0;
  const auto& coeffs = c.coefficients();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    sum += coeffs[k].get_d() * unit_root(c.conductor(), static_cast<long>(k) * galois_t);
  }
  return sum;
}

using ComplexMatrix = std::vector<std::vector<Complex>>;

inline ComplexMatrix evaluate(const mckay::CycMatrix& m) {
  ComplexMatrix out(m.dim(), std::vector<Complex>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out[i][j] = evaluate(m(i, j));
  return out;
}

inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.size();
  ComplexMatrix out(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline bool close(Complex a, Complex b, double tol = 1e-9) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

inline bool close(const ComplexMatrix& a, const ComplexMatrix& b, double tol = 1e-9) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!close(a[i][j], b[i][j], tol)) return false;
  return true;
}

// f evaluated at the point v.
inline Complex evaluate(const mckay::SparsePolynomial& f, const std::vector<Complex>& v) {
  Complex sum = 0;
  for (const auto& [e, c] : f.terms()) {
    Complex term = evaluate(c);
    for (std::size_t i = 0; i < e.size(); ++i) term *= std::pow(v[i], static_cast<int>(e[i]));
    sum += term;
  }
  return sum;
}

inline std::vector<Complex> apply(const ComplexMatrix& m, const std::vector<Complex>& v) {
  std::vector<Complex> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline Complex determinant(ComplexMatrix a) {
  const std::size_t n = a.size();
  Complex det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (std::abs(a[p][c]) < 1e-14) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Complex f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// Multiplicity of exp(2 pi i j / r) as an eigenvalue of m, from floating
// traces of powers. Entries are rounded; -1 marks a non-integral value.
inline std::vector<long> numeric_multiplicities(const ComplexMatrix& m, long r) {
  const std::size_t n = m.size();
  std::vector<Complex> traces;
  ComplexMatrix x(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i) x[i][i] = 1;
  for (long k = 0; k < r; ++k) {
    Complex t = 0;
    for (std::size_t i = 0; i < n; ++i) t += x[i][i];
    traces.push_back(t);
    x = multiply(x, m);
  }
  std::vector<long> out;
  for (long j = 0; j < r; ++j) {
    Complex sum = 0;
    for (long k = 0; k < r; ++k) sum += traces[k] * unit_root(r, mckay::mod_floor(-j * k, r));
    sum /= static_cast<double>(r);
    const double rounded = std::round(sum.real());
    out.push_back(std::abs(sum - Complex(rounded, 0)) < 1e-9 ? static_cast<long>(rounded) : -1);
  }
  return out;
}

inline std::vector<Complex> random_point(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(u(rng), u(rng));
  return v;
}

// A random element of Q(E(n)) with small coefficients on random powers.
inline mckay::Cyclotomic random_cyclotomic(std::mt19937& rng, long n, int terms = 4) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5), exp(0, n - 1);
  mckay::Cyclotomic out = mckay::Cyclotomic::zero(n);
  for (int i = 0; i < terms; ++i) {
    mckay::Rational q(mckay::Integer(num(rng)), mckay::Integer(den(rng)));
    q.canonicalize();
    out += mckay::Cyclotomic::root_of_unity_at(n, n, exp(rng)).scaled(q);
  }
  return out;
}

}  // namespace support
