#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "mckay/abelian.hpp"
#include "mckay/cyclotomic.hpp"
#include "mckay/error.hpp"
#include "mckay/group.hpp"
#include "mckay/matrix.hpp"

namespace mckay {

/// Replacing the fixed primitive root zeta by zeta^t.
struct GaloisTwist {
  long t = 1;

  friend bool operator==(const GaloisTwist&, const GaloisTwist&) = default;
};

/// lcm of the entry conductor and the group exponent: the field in which all
/// eigenvalues of all elements live.
inline long working_conductor(const FiniteMatrixGroup& g) { return std::lcm(g.conductor(), g.exponent()); }

inline void validate_twist(const FiniteMatrixGroup& g, GaloisTwist twist) {
  const long n = working_conductor(g);
  if (std::gcd(twist.t, n) != 1) {
    throw DomainError("twist " + std::to_string(twist.t) + " is not coprime to the working conductor " +
                      std::to_string(n));
  }
}

/// Order of a matrix by repeated multiplication, up to `bound`.
inline long matrix_order(const CycMatrix& g, long bound = 100000) {
  const CycMatrix id = CycMatrix::identity(g.dim(), g.conductor());
  CycMatrix x = g;
  for (long k = 1; k <= bound; ++k) {
    if (x == id) return k;
    x = x * g;
  }
  throw DomainError("matrix has no finite order up to " + std::to_string(bound));
}

/// m_j = (1/r) sum_k trace(g^k) zeta_r^{-jk}, from traces[k] = trace(g^k),
/// k = 0..r-1. Every m_j must come out a nonnegative integer.
inline std::vector<long> multiplicities_from_traces(const std::vector<Cyclotomic>& traces, std::size_t dim) {
  const long r = static_cast<long>(traces.size());
  long conductor = r;
  for (const auto& t : traces) conductor = std::lcm(conductor, t.conductor());
  std::vector<Cyclotomic> lifted;
  lifted.reserve(traces.size());
  for (const auto& t : traces) lifted.push_back(t.embed(conductor));
  std::vector<long> m(static_cast<std::size_t>(r), 0);
  long total = 0;
  for (long j = 0; j < r; ++j) {
    Cyclotomic sum = Cyclotomic::zero(conductor);
    for (long k = 0; k < r; ++k) {
      if (lifted[k].is_zero()) continue;
      sum += lifted[k] * Cyclotomic::root_of_unity_at(conductor, r, -j * k);
    }
    if (!sum.is_rational()) throw ConsistencyError("eigenvalue multiplicity is not rational");
    const Rational value = sum.rational_part() / r;
    if (value.get_den() != 1 || value < 0) {
      throw ConsistencyError("eigenvalue multiplicity " + value.get_str() + " is not a nonnegative integer");
    }
    m[j] = value.get_num().get_si();
    total += m[j];
  }
  if (total != static_cast<long>(dim)) throw ConsistencyError("eigenvalue multiplicities do not sum to the dimension");
  return m;
}

/// Multiplicity of each eigenvalue zeta_r^j of g, r the order of g.
inline std::vector<long> eigen_multiplicities(const CycMatrix& g, long order) {
  if (order <= 0) throw DomainError("order must be positive");
  if (!g.pow(order).is_identity()) throw DomainError("matrix does not have the stated order");
  std::vector<Cyclotomic> traces;
  CycMatrix x = CycMatrix::identity(g.dim(), g.conductor());
  for (long k = 0; k < order; ++k) {
    traces.push_back(x.trace());
    x = x * g;
  }
  return multiplicities_from_traces(traces, g.dim());
}

inline std::vector<long> eigen_multiplicities(const FiniteMatrixGroup& g, ElementId id) {
  const long r = g.element_order(id);
  std::vector<Cyclotomic> traces;
  ElementId x = g.identity();
  for (long k = 0; k < r; ++k) {
    traces.push_back(g.element(x).trace());
    x = g.multiply(id, x);
  }
  return multiplicities_from_traces(traces, g.dim());
}

/// Exponent a such that eigenvalue zeta_r^j equals (zeta_r^t)^a.
inline long twisted_exponent(long j, long r, GaloisTwist twist) {
  return mod_floor(mod_inverse(mod_floor(twist.t, r), r) * j, r);
}

inline Rational age_from_multiplicities(const std::vector<long>& m, GaloisTwist twist = {}) {
  const long r = static_cast<long>(m.size());
  long sum = 0;
  for (long j = 0; j < r; ++j) sum += twisted_exponent(j, r, twist) * m[j];
  Rational a(sum, r);
  a.canonicalize();
  return a;
}

inline Rational age(const CycMatrix& g, GaloisTwist twist = {}) {
  const long r = matrix_order(g);
  return age_from_multiplicities(eigen_multiplicities(g, r), twist);
}

/// rank(g - I) = 1.
inline bool is_reflection(const CycMatrix& g) {
  return (g - CycMatrix::identity(g.dim(), g.conductor())).rank() == 1;
}

struct AgeRecord {
  ElementId element = 0;
  long order = 1;
  std::vector<long> multiplicities;
  Rational age;
  bool is_junior = false;
  bool is_reflection = false;
  std::vector<long> weights;  // eigenvalue exponents with multiplicity, ascending
};

inline AgeRecord age_record(const FiniteMatrixGroup& g, ElementId id, GaloisTwist twist = {}) {
  AgeRecord rec;
  rec.element = id;
  rec.order = g.element_order(id);
  rec.multiplicities = eigen_multiplicities(g, id);
  rec.age = age_from_multiplicities(rec.multiplicities, twist);
  rec.is_junior = rec.age == 1;
  const auto n = static_cast<long>(g.dim());
  rec.is_reflection = rec.order > 1 && rec.multiplicities[0] == n - 1;
  if (rec.is_reflection != is_reflection(g.element(id))) {
    throw ConsistencyError("reflection test by rank disagrees with eigenvalue multiplicities");
  }
  for (long j = 0; j < rec.order; ++j) {
    for (long c = 0; c < rec.multiplicities[j]; ++c) rec.weights.push_back(twisted_exponent(j, rec.order, twist));
  }
  std::sort(rec.weights.begin(), rec.weights.end());
  return rec;
}

inline std::vector<AgeRecord> age_records(const FiniteMatrixGroup& g, GaloisTwist twist = {}) {
  validate_twist(g, twist);
  std::vector<AgeRecord> out;
  out.reserve(g.order());
  for (ElementId id = 0; id < g.order(); ++id) out.push_back(age_record(g, id, twist));
  return out;
}

/// The same records read under a different twist; multiplicities are
/// twist-independent, only ages and weights change.
inline std::vector<AgeRecord> retwist(std::vector<AgeRecord> records, GaloisTwist twist) {
  for (auto& rec : records) {
    rec.age = age_from_multiplicities(rec.multiplicities, twist);
    rec.is_junior = rec.age == 1;
    rec.weights.clear();
    for (long j = 0; j < rec.order; ++j) {
      for (long c = 0; c < rec.multiplicities[j]; ++c) rec.weights.push_back(twisted_exponent(j, rec.order, twist));
    }
    std::sort(rec.weights.begin(), rec.weights.end());
  }
  return records;
}

inline void require_special_linear(const FiniteMatrixGroup& g) {
  if (!g.is_special_linear()) {
    throw NotSpecialLinear("the group is not contained in SL(V): some generator has determinant != 1");
  }
}

struct JuniorClasses {
  std::size_t count = 0;
  std::vector<ElementId> representatives;    // one per junior class, ascending
  std::vector<ElementId> junior_elements;    // every junior element, ascending
};

/// Junior conjugacy classes from age records already computed under some
/// twist. Verifies that ages are constant on classes and integral.
inline JuniorClasses junior_classes(const FiniteMatrixGroup& g, const std::vector<AgeRecord>& records) {
  require_special_linear(g);
  JuniorClasses out;
  const auto& classes = g.classes();
  for (std::size_t c = 0; c < classes.count(); ++c) {
    const Rational& a = records[classes.representative(c)].age;
    if (a.get_den() != 1) throw ConsistencyError("non-integral age in an SL group");
    for (ElementId id : classes.classes[c]) {
      if (records[id].age != a) throw ConsistencyError("age is not constant on a conjugacy class");
    }
    if (a == 1) {
      out.representatives.push_back(classes.representative(c));
      out.junior_elements.insert(out.junior_elements.end(), classes.classes[c].begin(), classes.classes[c].end());
    }
  }
  std::sort(out.junior_elements.begin(), out.junior_elements.end());
  out.count = out.representatives.size();
  return out;
}

inline JuniorClasses junior_classes(const FiniteMatrixGroup& g, GaloisTwist twist = {}) {
  require_special_linear(g);
  return junior_classes(g, age_records(g, twist));
}

/// Eigen-decomposition of a finite-order matrix: columns of `basis` are
/// eigenvectors, `weights[j]` is the (twisted) exponent of the eigenvalue of
/// column j. Columns are ordered by the free variable each eigenvector was
/// built on, so diagonal matrices keep the standard basis.
struct Eigenbasis {
  long order = 1;
  std::vector<long> weights;
  CycMatrix basis;
};

inline Eigenbasis eigenbasis(const CycMatrix& g, long order, GaloisTwist twist = {}) {
  const std::vector<long> m = eigen_multiplicities(g, order);
  const long conductor = std::lcm(g.conductor(), order);
  const CycMatrix lifted = g.embedded(conductor);
  std::vector<std::tuple<std::size_t, long, std::vector<Cyclotomic>>> vectors;
  for (long j = 0; j < order; ++j) {
    if (m[j] == 0) continue;
    const Cyclotomic lambda = Cyclotomic::root_of_unity_at(conductor, order, j);
    const CycMatrix shifted = lifted - CycMatrix::identity(g.dim(), conductor).scaled(lambda);
    std::vector<std::size_t> free;
    auto kernel = shifted.kernel_basis(&free);
    if (static_cast<long>(kernel.size()) != m[j]) {
      throw ConsistencyError("eigenspace dimension disagrees with eigenvalue multiplicity");
    }
    const long a = twisted_exponent(j, order, twist);
    for (std::size_t k = 0; k < kernel.size(); ++k) vectors.emplace_back(free[k], a, std::move(kernel[k]));
  }
  std::stable_sort(vectors.begin(), vectors.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
  });
  Eigenbasis out;
  out.order = order;
  std::vector<std::vector<Cyclotomic>> columns;
  for (auto& [free, a, v] : vectors) {
    out.weights.push_back(a);
    columns.push_back(std::move(v));
  }
  out.basis = CycMatrix::from_columns(columns);
  if (out.basis.determinant().is_zero()) throw ConsistencyError("eigenvectors are not independent");
  return out;
}

/// Weights and eigenbasis of a junior element; gcd of the weights must be 1.
inline Eigenbasis valuation_weights(const CycMatrix& g, long order, GaloisTwist twist = {}) {
  const std::vector<long> m = eigen_multiplicities(g, order);
  if (age_from_multiplicities(m, twist) != 1) throw DomainError("element is not junior under this twist");
  Eigenbasis e = eigenbasis(g, order, twist);
  long d = 0;
  for (long w : e.weights) d = std::gcd(d, w);
  if (d != 1) throw ConsistencyError("weights of a junior element are not coprime");
  return e;
}

/// One row of the Galois sweep: a representative twist and what it yields.
struct SweepRow {
  long twist = 1;
  std::vector<long> equivalent_twists;  // all t in (Z/N*)^x with the same residue mod exp(G)
  std::size_t junior_class_count = 0;
  std::vector<ElementId> junior_elements;
  std::size_t junior_subgroup_order = 1;
  AbelianStructure torsion;  // Ab(G/H(t))
};

struct GaloisSweep {
  long working_conductor = 1;
  std::vector<SweepRow> rows;
  bool consistent = true;
};

/// Ab(G/H) = G/(H[G,G]).
inline AbelianStructure abelianized_quotient_invariants(const FiniteMatrixGroup& g, const Subgroup& h,
                                                        const Subgroup& commutator) {
  return abelian_invariants(QuotientGroup(g, join(h, commutator)));
}

/// Runs the junior-class computation for every twist in (Z/N*)^x, one per
/// residue class modulo the group exponent (ages only depend on that
/// residue). `consistent` reports whether all rows agree on the junior class
/// count and the torsion invariant factors.
inline GaloisSweep galois_sweep(const FiniteMatrixGroup& g) {
  require_special_linear(g);
  GaloisSweep sweep;
  sweep.working_conductor = working_conductor(g);
  const long n = sweep.working_conductor;
  const long e = g.exponent();
  std::map<long, std::size_t> row_of_residue;
  const Subgroup commutator = commutator_subgroup(g);
  const std::vector<AgeRecord> base = age_records(g);
  for (long t = 1; t <= n; ++t) {
    if (std::gcd(t, n) != 1) continue;
    const long residue = t % e;
    auto it = row_of_residue.find(residue);
    if (it != row_of_residue.end()) {
      sweep.rows[it->second].equivalent_twists.push_back(t);
      continue;
    }
    row_of_residue.emplace(residue, sweep.rows.size());
    SweepRow row;
    row.twist = t;
    row.equivalent_twists.push_back(t);
    const JuniorClasses juniors = junior_classes(g, retwist(base, GaloisTwist{t}));
    row.junior_class_count = juniors.count;
    row.junior_elements = juniors.junior_elements;
    const Subgroup h = subgroup_generated(g, juniors.junior_elements);
    row.junior_subgroup_order = h.order();
    row.torsion = abelianized_quotient_invariants(g, h, commutator);
    sweep.rows.push_back(std::move(row));
  }
  for (const auto& row : sweep.rows) {
    if (row.junior_class_count != sweep.rows.front().junior_class_count ||
        row.torsion != sweep.rows.front().torsion) {
      sweep.consistent = false;
    }
  }
  return sweep;
}

}  // namespace mckay
