#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mckay/abelian.hpp"
#include "mckay/ages.hpp"
#include "mckay/error.hpp"
#include "mckay/group.hpp"
#include "mckay/polynomial.hpp"

namespace mckay {

/// The deg_i grading attached to one junior element g_i: its order r_i, the
/// weight a_{i,j} of each eigen-coordinate, and the eigenbasis (columns)
/// relating eigen-coordinates y to standard coordinates by x = basis * y.
struct GradingData {
  ElementId element = 0;
  long order = 1;
  std::vector<long> weights;
  CycMatrix basis;
  GaloisTwist twist;
};

inline GradingData grading_data(const FiniteMatrixGroup& g, ElementId id, GaloisTwist twist = {}) {
  const long r = g.element_order(id);
  Eigenbasis e = valuation_weights(g.element(id), r, twist);
  return GradingData{id, r, std::move(e.weights), std::move(e.basis), twist};
}

inline std::vector<GradingData> junior_gradings(const FiniteMatrixGroup& g, const JuniorClasses& juniors,
                                                GaloisTwist twist = {}) {
  std::vector<GradingData> out;
  for (ElementId rep : juniors.representatives) out.push_back(grading_data(g, rep, twist));
  return out;
}

/// min over monomials of sum_j alpha_j w_j; f must be nonzero.
inline long weighted_order(const SparsePolynomial& f, const std::vector<long>& weights) {
  if (f.is_zero()) throw DomainError("valuation of the zero polynomial is undefined");
  long best = std::numeric_limits<long>::max();
  for (const auto& [e, c] : f.terms()) {
    long w = 0;
    for (std::size_t j = 0; j < e.size(); ++j) w += static_cast<long>(e[j]) * weights[j];
    best = std::min(best, w);
  }
  return best;
}

/// Rewrites f in the eigen-coordinates of the grading.
inline SparsePolynomial in_eigen_coordinates(const GradingData& d, const SparsePolynomial& f) {
  return substitute(f, d.basis);
}

/// v_g(f): f rewritten in g's eigen-coordinates, minimal weighted degree.
inline long monomial_valuation(const GradingData& d, const SparsePolynomial& f) {
  if (f.is_zero()) throw DomainError("valuation of the zero polynomial is undefined");
  if (f.nvars() != d.basis.dim()) throw DimensionError("polynomial does not match the grading dimension");
  return weighted_order(in_eigen_coordinates(d, f), d.weights);
}

/// c mod r when g.f = (zeta_r^t)^{-c} f, i.e. the <g>-degree of f; empty
/// if f is not homogeneous for <g> (or is zero).
inline std::optional<long> graded_degree_of_image(const SparsePolynomial& f, const SparsePolynomial& image,
                                                  long order, GaloisTwist twist) {
  if (f.is_zero()) return std::nullopt;
  const auto& [lead, lead_coeff] = *f.terms().begin();
  const Cyclotomic image_coeff = image.coefficient(lead);
  if (image_coeff.is_zero()) return std::nullopt;
  const Cyclotomic ratio = image_coeff / lead_coeff;
  if (image != f.scaled(ratio)) return std::nullopt;
  const auto root = ratio.as_root_of_unity();
  if (!root || order % root->first != 0) return std::nullopt;
  // ratio = zeta_r^{k r/s} = zeta_r^{-t c}
  const long k = root->second * (order / root->first);
  return mod_floor(-mod_inverse(mod_floor(twist.t, order), order) * k, order);
}

inline std::optional<long> graded_degree(const CycMatrix& g, long order, GaloisTwist twist,
                                         const SparsePolynomial& f) {
  return graded_degree_of_image(f, act(g, f), order, twist);
}

inline std::optional<long> graded_degree(const FiniteMatrixGroup& g, ElementId id, GaloisTwist twist,
                                         const SparsePolynomial& f) {
  return graded_degree_of_image(f, act_by_inverse(g.element(g.inverse(id)), f), g.element_order(id), twist);
}

/// Calls `visit` on every exponent vector of total degree `degree`, in
/// graded-lex order (x1-heavy first); stops early when it returns false.
inline bool for_each_monomial(std::size_t nvars, std::uint32_t degree,
                              const std::function<bool(const Exponent&)>& visit) {
  Exponent e(nvars, 0);
  std::function<bool(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) -> bool {
    if (i + 1 == nvars) {
      e[i] = left;
      return visit(e);
    }
    for (std::uint32_t k = left + 1; k-- > 0;) {
      e[i] = k;
      if (!rec(i + 1, left - k)) return false;
    }
    e[i] = 0;
    return true;
  };
  if (nvars == 0) return true;
  return rec(0, degree);
}

/// chi-twisted average (1/|G|) sum_g conj(chi(g)) g.f.
inline SparsePolynomial twisted_average(const FiniteMatrixGroup& g, const Abelianization& ab, const Character& chi,
                                        const SparsePolynomial& f) {
  const long e = ab.basis.structure.exponent();
  SparsePolynomial sum(f.nvars());
  for (ElementId id = 0; id < g.order(); ++id) {
    const long k = character_exponent(ab.basis, chi, ab.quotient.coset_of(id));
    SparsePolynomial image = act_by_inverse(g.element(g.inverse(id)), f);
    if (k != 0) image = image.scaled(Cyclotomic::root_of_unity(e, -k));
    sum += image;
  }
  return sum.scaled(Cyclotomic(Rational(1, static_cast<long>(g.order()))));
}

/// If f is [G,G]-invariant and every generator s of G satisfies
/// s.f = lambda_s f, returns the character chi of Ab(G) with g.f = chi(g) f.
inline std::optional<Character> homogeneous_character(const FiniteMatrixGroup& g, const Abelianization& ab,
                                                      const SparsePolynomial& f) {
  if (f.is_zero()) return std::nullopt;
  for (ElementId h : ab.commutator.generators()) {
    if (act_by_inverse(g.element(g.inverse(h)), f) != f) return std::nullopt;
  }
  std::vector<Cyclotomic> ratios;
  const auto& [lead, lead_coeff] = *f.terms().begin();
  for (ElementId s : g.generator_ids()) {
    const SparsePolynomial image = act_by_inverse(g.element(g.inverse(s)), f);
    const Cyclotomic ratio = image.coefficient(lead) / lead_coeff;
    if (image != f.scaled(ratio)) return std::nullopt;
    ratios.push_back(ratio);
  }
  for (const Character& chi : all_characters(ab.basis)) {
    bool match = true;
    for (std::size_t i = 0; i < ratios.size() && match; ++i) {
      match = character_value(ab.basis, chi, ab.quotient.coset_of(g.generator_ids()[i])) == ratios[i];
    }
    if (match) return chi;
  }
  return std::nullopt;
}

/// A nonzero f in C[V]^[G,G] with g.f = chi(g) f: the first monomial (by
/// degree from 1 up to `degree_bound`, graded-lex within a degree) whose
/// chi-twisted average is nonzero. Empty when the bound is exhausted.
inline std::optional<SparsePolynomial> relative_invariant(const FiniteMatrixGroup& g, const Abelianization& ab,
                                                          Character chi, long degree_bound) {
  chi = validate_character(ab.quotient, ab.basis, chi);
  const std::size_t n = g.dim();
  std::optional<SparsePolynomial> found;
  for (long d = 1; d <= degree_bound && !found; ++d) {
    for_each_monomial(n, static_cast<std::uint32_t>(d), [&](const Exponent& e) {
      SparsePolynomial avg = twisted_average(g, ab, chi, SparsePolynomial::monomial(e));
      if (avg.is_zero()) return true;
      found = std::move(avg);
      return false;
    });
  }
  if (found) {
    const auto detected = homogeneous_character(g, ab, *found);
    if (!detected || *detected != chi) throw ConsistencyError("relative invariant has the wrong character");
  }
  return found;
}

struct CongruenceEntry {
  ElementId representative = 0;
  long order = 1;
  long valuation = 0;
  long graded_degree = 0;
  bool holds = false;
};

/// For every junior grading: v_i(f) and the <g_i>-degree of f, which must
/// agree modulo r_i when f is Ab(G)-homogeneous in C[V]^[G,G].
inline std::vector<CongruenceEntry> check_congruence_lemma(const FiniteMatrixGroup& g, const Abelianization& ab,
                                                           const std::vector<GradingData>& gradings,
                                                           const SparsePolynomial& f) {
  if (!homogeneous_character(g, ab, f)) {
    throw DomainError("polynomial is not a homogeneous element of C[V]^[G,G]");
  }
  std::vector<CongruenceEntry> out;
  for (const auto& d : gradings) {
    CongruenceEntry entry;
    entry.representative = d.element;
    entry.order = d.order;
    entry.valuation = monomial_valuation(d, f);
    const auto deg = graded_degree(g, d.element, d.twist, f);
    if (!deg) throw ConsistencyError("homogeneous polynomial is not homogeneous for a junior element");
    entry.graded_degree = *deg;
    entry.holds = mod_floor(entry.valuation - entry.graded_degree, d.order) == 0;
    out.push_back(entry);
  }
  return out;
}

struct MembershipCheck {
  bool divisible = false;   // r_i | v_i(f) for all i
  bool h_invariant = false; // h.f = f for all h in H
  bool consistent() const { return divisible == h_invariant; }
};

inline MembershipCheck check_h_membership(const FiniteMatrixGroup& g, const Abelianization& ab, const Subgroup& h,
                                          const std::vector<GradingData>& gradings, const SparsePolynomial& f) {
  if (!homogeneous_character(g, ab, f)) {
    throw DomainError("polynomial is not a homogeneous element of C[V]^[G,G]");
  }
  MembershipCheck out;
  out.divisible = std::all_of(gradings.begin(), gradings.end(),
                              [&](const GradingData& d) { return monomial_valuation(d, f) % d.order == 0; });
  out.h_invariant = std::all_of(h.generators().begin(), h.generators().end(), [&](ElementId id) {
    return act_by_inverse(g.element(g.inverse(id)), f) == f;
  });
  return out;
}

}  // namespace mckay
