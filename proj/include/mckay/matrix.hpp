#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "mckay/cyclotomic.hpp"
#include "mckay/error.hpp"

namespace mckay {

/// Square matrix over a cyclotomic field. All entries are kept at one common
/// conductor so that equal matrices have identical representations.
class CycMatrix {
 public:
  CycMatrix() = default;

  explicit CycMatrix(std::size_t dim, long conductor = 1)
      : dim_(dim), conductor_(conductor), entries_(dim * dim, Cyclotomic::zero(conductor)) {}

  static CycMatrix identity(std::size_t dim, long conductor = 1) {
    CycMatrix m(dim, conductor);
    for (std::size_t i = 0; i < dim; ++i) m.entries_[i * dim + i] = Cyclotomic::rational(1, conductor);
    return m;
  }

  static CycMatrix diagonal(const std::vector<Cyclotomic>& diag) {
    const std::size_t n = diag.size();
    std::vector<std::vector<Cyclotomic>> rows(n, std::vector<Cyclotomic>(n));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = diag[i];
    return from_rows(rows);
  }

  static CycMatrix from_rows(const std::vector<std::vector<Cyclotomic>>& rows) {
    const std::size_t n = rows.size();
    long conductor = 1;
    for (const auto& row : rows) {
      if (row.size() != n) throw DimensionError("matrix is not square");
      for (const auto& e : row) conductor = std::lcm(conductor, e.conductor());
    }
    CycMatrix m(n, conductor);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.entries_[i * n + j] = rows[i][j].embed(conductor);
    }
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  long conductor() const noexcept { return conductor_; }

  const Cyclotomic& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  /// Replaces one entry, lifting the whole matrix if the value needs it.
  void set(std::size_t i, std::size_t j, const Cyclotomic& value) {
    const long m = std::lcm(conductor_, value.conductor());
    if (m != conductor_) *this = embedded(m);
    entries_[i * dim_ + j] = value.embed(m);
  }

  CycMatrix embedded(long target) const {
    if (target == conductor_) return *this;
    CycMatrix out(dim_, target);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].embed(target);
    return out;
  }

  friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
    require_same_dim(a, b);
    if (a.conductor_ != b.conductor_) {
      const long m = std::lcm(a.conductor_, b.conductor_);
      return a.embedded(m) * b.embedded(m);
    }
    const std::size_t n = a.dim_;
    CycMatrix out(n, a.conductor_);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const Cyclotomic& aik = a.entries_[i * n + k];
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const Cyclotomic& bkj = b.entries_[k * n + j];
          if (bkj.is_zero()) continue;
          out.entries_[i * n + j] += aik * bkj;
        }
      }
    }
    return out;
  }

  friend CycMatrix operator+(const CycMatrix& a, const CycMatrix& b) { return combine(a, b, false); }
  friend CycMatrix operator-(const CycMatrix& a, const CycMatrix& b) { return combine(a, b, true); }

  CycMatrix scaled(const Cyclotomic& s) const {
    const long m = std::lcm(conductor_, s.conductor());
    CycMatrix out = embedded(m);
    const Cyclotomic sm = s.embed(m);
    for (auto& e : out.entries_) {
      if (!e.is_zero()) e = e * sm;
    }
    return out;
  }

  friend bool operator==(const CycMatrix& a, const CycMatrix& b) {
    if (a.dim_ != b.dim_) return false;
    if (a.conductor_ == b.conductor_) {
      for (std::size_t k = 0; k < a.entries_.size(); ++k) {
        if (a.entries_[k].coefficients() != b.entries_[k].coefficients()) return false;
      }
      return true;
    }
    const long m = std::lcm(a.conductor_, b.conductor_);
    return a.embedded(m) == b.embedded(m);
  }

  friend bool operator!=(const CycMatrix& a, const CycMatrix& b) { return !(a == b); }

  Cyclotomic trace() const {
    Cyclotomic t = Cyclotomic::zero(conductor_);
    for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
    return t;
  }

  CycMatrix transpose() const {
    CycMatrix out(dim_, conductor_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) out.entries_[j * dim_ + i] = entries_[i * dim_ + j];
    }
    return out;
  }

  bool is_identity() const { return *this == identity(dim_, conductor_); }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        if (i != j && !entries_[i * dim_ + j].is_zero()) return false;
      }
    }
    return true;
  }

  /// Exactly one nonzero entry in every row and column.
  bool is_monomial() const {
    std::vector<int> col_count(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
      int row_count = 0;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!entries_[i * dim_ + j].is_zero()) {
          ++row_count;
          ++col_count[j];
        }
      }
      if (row_count != 1) return false;
    }
    for (int c : col_count) {
      if (c != 1) return false;
    }
    return true;
  }

  Cyclotomic determinant() const {
    CycMatrix a = *this;
    Elimination e = eliminate(a, nullptr);
    if (e.rank < dim_) return Cyclotomic::zero(conductor_);
    return e.sign_det;
  }

  std::size_t rank() const {
    CycMatrix a = *this;
    return eliminate(a, nullptr).rank;
  }

  CycMatrix inverse() const {
    CycMatrix inv = identity(dim_, conductor_);
    CycMatrix a = *this;
    Elimination e = eliminate(a, &inv);
    if (e.rank < dim_) throw DomainError("singular matrix has no inverse");
    return inv;
  }

  CycMatrix pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    CycMatrix result = identity(dim_, conductor_);
    CycMatrix base = *this;
    while (exponent > 0) {
      if (exponent & 1) result = result * base;
      exponent >>= 1;
      if (exponent > 0) base = base * base;
    }
    return result;
  }

  /// Basis of the right null space {v : A v = 0}, one vector per free column
  /// of the reduced row echelon form. `free_columns` receives those columns.
  std::vector<std::vector<Cyclotomic>> kernel_basis(std::vector<std::size_t>* free_columns = nullptr) const {
    CycMatrix r = *this;
    Elimination e = eliminate(r, nullptr);
    std::vector<bool> is_pivot(dim_, false);
    for (std::size_t c : e.pivot_columns) is_pivot[c] = true;
    std::vector<std::vector<Cyclotomic>> basis;
    for (std::size_t f = 0; f < dim_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<Cyclotomic> v(dim_, Cyclotomic::zero(conductor_));
      v[f] = Cyclotomic::rational(1, conductor_);
      for (std::size_t row = 0; row < e.pivot_columns.size(); ++row) {
        v[e.pivot_columns[row]] = -r(row, f);
      }
      basis.push_back(std::move(v));
      if (free_columns) free_columns->push_back(f);
    }
    return basis;
  }

  std::vector<Cyclotomic> apply(const std::vector<Cyclotomic>& v) const {
    if (v.size() != dim_) throw DimensionError("vector length does not match matrix");
    std::vector<Cyclotomic> out(dim_, Cyclotomic::zero(conductor_));
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!entries_[i * dim_ + j].is_zero()) out[i] += entries_[i * dim_ + j] * v[j];
      }
    }
    return out;
  }

  static CycMatrix from_columns(const std::vector<std::vector<Cyclotomic>>& columns) {
    const std::size_t n = columns.size();
    std::vector<std::vector<Cyclotomic>> rows(n, std::vector<Cyclotomic>(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (columns[j].size() != n) throw DimensionError("matrix is not square");
      for (std::size_t i = 0; i < n; ++i) rows[i][j] = columns[j][i];
    }
    return from_rows(rows);
  }

  std::size_t hash() const {
    std::size_t h = dim_;
    for (const auto& e : entries_) h ^= e.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  /// Rows of rendered entries.
  std::vector<std::vector<std::string>> render_rows() const {
    std::vector<std::vector<std::string>> rows(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) rows[i].push_back(entries_[i * dim_ + j].render());
    }
    return rows;
  }

  std::string render() const {
    std::string out = "[";
    for (std::size_t i = 0; i < dim_; ++i) {
      out += i ? ", [" : "[";
      for (std::size_t j = 0; j < dim_; ++j) {
        if (j) out += ", ";
        out += entries_[i * dim_ + j].render();
      }
      out += "]";
    }
    return out + "]";
  }

 private:
  struct Elimination {
    std::size_t rank = 0;
    Cyclotomic sign_det;
    std::vector<std::size_t> pivot_columns;
  };

  // Gauss-Jordan, in place, to reduced row echelon form. When `companion` is
  // given, the same row operations are applied to it (used for the inverse).
  static Elimination eliminate(CycMatrix& a, CycMatrix* companion) {
    const std::size_t n = a.dim_;
    Elimination e;
    if (companion && companion->conductor_ != a.conductor_) {
      const long m = std::lcm(companion->conductor_, a.conductor_);
      a = a.embedded(m);
      *companion = companion->embedded(m);
    }
    Cyclotomic det = Cyclotomic::rational(1, a.conductor_);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
      std::size_t pivot = row;
      while (pivot < n && a.entries_[pivot * n + col].is_zero()) ++pivot;
      if (pivot == n) continue;
      if (pivot != row) {
        swap_rows(a, pivot, row);
        if (companion) swap_rows(*companion, pivot, row);
        det = -det;
      }
      const Cyclotomic p = a.entries_[row * n + col];
      det = det * p;
      const Cyclotomic inv = p.inverse();
      scale_row(a, row, inv);
      if (companion) scale_row(*companion, row, inv);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == row) continue;
        const Cyclotomic f = a.entries_[r * n + col];
        if (f.is_zero()) continue;
        subtract_row(a, r, row, f);
        if (companion) subtract_row(*companion, r, row, f);
      }
      e.pivot_columns.push_back(col);
      ++row;
    }
    e.rank = row;
    e.sign_det = det;
    return e;
  }

  static void swap_rows(CycMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < m.dim_; ++j) std::swap(m.entries_[a * m.dim_ + j], m.entries_[b * m.dim_ + j]);
  }

  static void scale_row(CycMatrix& m, std::size_t r, const Cyclotomic& s) {
    for (std::size_t j = 0; j < m.dim_; ++j) {
      auto& e = m.entries_[r * m.dim_ + j];
      if (!e.is_zero()) e = e * s;
    }
  }

  // row target -= f * row source
  static void subtract_row(CycMatrix& m, std::size_t target, std::size_t source, const Cyclotomic& f) {
    for (std::size_t j = 0; j < m.dim_; ++j) {
      const auto& s = m.entries_[source * m.dim_ + j];
      if (!s.is_zero()) m.entries_[target * m.dim_ + j] -= f * s;
    }
  }

  static void require_same_dim(const CycMatrix& a, const CycMatrix& b) {
    if (a.dim_ != b.dim_) {
      throw DimensionError("dimension mismatch: " + std::to_string(a.dim_) + " vs " + std::to_string(b.dim_));
    }
  }

  static CycMatrix combine(const CycMatrix& a, const CycMatrix& b, bool subtract) {
    require_same_dim(a, b);
    const long m = std::lcm(a.conductor_, b.conductor_);
    CycMatrix out = a.embedded(m);
    const CycMatrix rhs = b.embedded(m);
    for (std::size_t k = 0; k < out.entries_.size(); ++k) {
      if (subtract) {
        out.entries_[k] -= rhs.entries_[k];
      } else {
        out.entries_[k] += rhs.entries_[k];
      }
    }
    return out;
  }

  std::size_t dim_ = 0;
  long conductor_ = 1;
  std::vector<Cyclotomic> entries_;
};

}  // namespace mckay

template <>
struct std::hash<mckay::CycMatrix> {
  std::size_t operator()(const mckay::CycMatrix& m) const { return m.hash(); }
};
