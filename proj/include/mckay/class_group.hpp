#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mckay/abelian.hpp"
#include "mckay/ages.hpp"
#include "mckay/error.hpp"
#include "mckay/group.hpp"

namespace mckay {

/// Subgroup K generated by the reflections of G.
inline Subgroup reflection_subgroup(const FiniteMatrixGroup& g) {
  std::vector<ElementId> reflections;
  for (ElementId id = 1; id < g.order(); ++id) {
    if (is_reflection(g.element(id))) reflections.push_back(id);
  }
  return subgroup_generated(g, reflections);
}

/// Cl(V/G) = Ab(G/K)^dual, reported through its invariant factors (a finite
/// abelian group and its dual share them). Accepts groups outside SL(V).
inline AbelianStructure class_group_of_quotient(const FiniteMatrixGroup& g) {
  const Subgroup k = reflection_subgroup(g);
  if (!k.is_normal()) throw ConsistencyError("reflection subgroup is not normal");
  return abelian_invariants(QuotientGroup(g, join(k, commutator_subgroup(g))));
}

/// H, generated by every junior element (not just class representatives).
inline Subgroup junior_subgroup(const FiniteMatrixGroup& g, const JuniorClasses& juniors) {
  Subgroup h = subgroup_generated(g, juniors.junior_elements);
  if (!h.is_normal()) throw ConsistencyError("junior subgroup is not normal");
  return h;
}

inline Subgroup junior_subgroup(const FiniteMatrixGroup& g, GaloisTwist twist = {}) {
  return junior_subgroup(g, junior_classes(g, twist));
}

/// Least-order element of a coset, ties broken by least id.
inline ElementId lowest_order_member(const QuotientGroup& q, std::uint32_t coset) {
  const auto& g = q.parent();
  const auto members = q.members(coset);
  return *std::min_element(members.begin(), members.end(), [&](ElementId a, ElementId b) {
    return std::make_pair(g.element_order(a), a) < std::make_pair(g.element_order(b), b);
  });
}

/// Images of a chosen basis of Cl(X) under push-forward into Cl(V/G), in the
/// group-side picture: free generators go to the junior representatives
/// modulo [G,G]; torsion generators go to a basis of Ab(G/H) = G/(H[G,G]).
/// Each image is named by the lowest-order element of its coset.
struct PushforwardBasis {
  struct FreeImage {
    ElementId junior_representative = 0;
    std::uint32_t abelianization_coset = 0;
    ElementId image = 0;
  };
  struct TorsionImage {
    long order = 1;
    std::uint32_t coset = 0;  // in G/(H[G,G])
    ElementId image = 0;
  };
  std::vector<FreeImage> free_images;
  std::vector<TorsionImage> torsion_images;
};

struct ConsistencyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ClassGroupReport {
  std::size_t group_order = 0;
  bool is_special_linear = false;
  std::size_t reflection_subgroup_order = 1;
  AbelianStructure cl_quotient;  // Cl(V/G)
  AbelianStructure abelianization;  // Ab(G)
  std::size_t commutator_order = 1;
  std::size_t junior_class_count = 0;
  std::vector<ElementId> junior_representatives;
  std::vector<ElementId> junior_elements;
  std::size_t junior_subgroup_order = 1;
  std::size_t free_rank = 0;
  AbelianStructure torsion;  // Ab(G/H)^dual
  AbelianStructure hbar;     // H/(H cap [G,G])
  bool free = false;
  PushforwardBasis pushforward;
  std::vector<ConsistencyCheck> checks;
  GaloisTwist twist;

  bool all_checks_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ConsistencyCheck& c) { return c.passed; });
  }
};

inline PushforwardBasis pushforward_basis(const std::vector<ElementId>& junior_reps,
                                          const QuotientGroup& abelianization, const QuotientGroup& torsion_quotient) {
  PushforwardBasis out;
  for (ElementId rep : junior_reps) {
    const std::uint32_t c = abelianization.coset_of(rep);
    out.free_images.push_back({rep, c, lowest_order_member(abelianization, c)});
  }
  const AbelianBasis basis = abelian_basis(torsion_quotient);
  for (std::size_t i = 0; i < basis.generators.size(); ++i) {
    const std::uint32_t c = basis.generators[i];
    out.torsion_images.push_back({basis.structure.invariant_factors[i], c, lowest_order_member(torsion_quotient, c)});
  }
  return out;
}

struct FreenessResult {
  bool free = false;
  std::size_t generated_order = 0;  // |<juniors, [G,G]>|
  std::optional<ElementId> witness;  // least element outside it, if any
};

/// Cl(X) is free iff the junior elements together with [G,G] generate G.
inline FreenessResult freeness_criterion(const FiniteMatrixGroup& g, const JuniorClasses& juniors) {
  Subgroup s = join(subgroup_generated(g, juniors.junior_elements), commutator_subgroup(g));
  FreenessResult out;
  out.generated_order = s.order();
  out.free = s.is_whole_group();
  for (ElementId id = 0; id < g.order() && !out.free; ++id) {
    if (!s.contains(id)) {
      out.witness = id;
      break;
    }
  }
  return out;
}

inline FreenessResult freeness_criterion(const FiniteMatrixGroup& g, GaloisTwist twist = {}) {
  return freeness_criterion(g, junior_classes(g, twist));
}

/// Cl(X) = Z^m + Ab(G/H)^dual for a Q-factorial terminalization X of V/G,
/// with every supporting invariant and the self-checks that tie them
/// together. X itself is never built: the exceptional divisors appear only
/// as the junior class representatives they correspond to.
inline ClassGroupReport terminalization_class_group(const FiniteMatrixGroup& g, GaloisTwist twist = {}) {
  require_special_linear(g);
  validate_twist(g, twist);
  ClassGroupReport r;
  r.twist = twist;
  r.group_order = g.order();
  r.is_special_linear = true;

  const std::vector<AgeRecord> records = age_records(g, twist);
  const JuniorClasses juniors = junior_classes(g, records);
  r.junior_class_count = juniors.count;
  r.junior_representatives = juniors.representatives;
  r.junior_elements = juniors.junior_elements;
  r.free_rank = juniors.count;

  std::vector<ElementId> reflections;
  for (const auto& rec : records) {
    if (rec.is_reflection) reflections.push_back(rec.element);
  }
  const Subgroup k = subgroup_generated(g, reflections);
  r.reflection_subgroup_order = k.order();

  const Subgroup commutator = commutator_subgroup(g);
  r.commutator_order = commutator.order();
  const QuotientGroup ab(g, commutator);
  r.abelianization = abelian_invariants(ab);
  r.cl_quotient = abelian_invariants(QuotientGroup(g, join(k, commutator)));

  const Subgroup h = subgroup_generated(g, juniors.junior_elements);
  r.junior_subgroup_order = h.order();
  const bool h_normal = h.is_normal();
  const QuotientGroup torsion_quotient(g, join(h, commutator));
  r.torsion = abelian_invariants(torsion_quotient);

  // Hbar = H/(H cap [G,G]) = image of H in Ab(G).
  std::vector<std::uint32_t> h_image;
  {
    std::vector<bool> seen(ab.order(), false);
    for (ElementId id : h.members()) {
      const std::uint32_t c = ab.coset_of(id);
      if (!seen[c]) {
        seen[c] = true;
        h_image.push_back(c);
      }
    }
  }
  r.hbar = abelian_invariants(ab, h_image);

  const FreenessResult freeness = freeness_criterion(g, juniors);
  r.free = freeness.free;
  r.pushforward = pushforward_basis(juniors.representatives, ab, torsion_quotient);

  auto check = [&r](std::string name, bool ok, std::string detail) {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  check("no_reflections", k.is_trivial(), "|K| = " + std::to_string(k.order()));
  check("cl_quotient_is_abelianization", r.cl_quotient == r.abelianization,
        "Cl(V/G) = " + r.cl_quotient.render() + ", Ab(G) = " + r.abelianization.render());
  {
    bool integral = true;
    for (const auto& rec : records) integral = integral && rec.age.get_den() == 1;
    check("integral_ages", integral, "every age of an SL element is an integer");
  }
  check("junior_subgroup_normal", h_normal, "|H| = " + std::to_string(h.order()));
  {
    const long lhs = r.abelianization.order();
    const long rhs = r.hbar.order() * r.torsion.order();
    check("exact_sequence_orders", lhs == rhs,
          "|Ab(G)| = " + std::to_string(lhs) + ", |Hbar| * |Ab(G/H)| = " + std::to_string(rhs));
  }
  {
    std::vector<bool> hit(torsion_quotient.order(), false);
    for (std::uint32_t c = 0; c < ab.order(); ++c) hit[torsion_quotient.coset_of(ab.representative(c))] = true;
    const bool onto = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    check("abelianization_surjects", onto, "Ab(G) -> Ab(G/H) is onto");
  }
  {
    // Hbar is generated by the junior representatives modulo [G,G].
    Subgroup from_reps = join(subgroup_generated(g, juniors.representatives), commutator);
    Subgroup from_all = join(h, commutator);
    check("hbar_generated_by_representatives", from_reps == from_all,
          "<g_1..g_m>[G,G] has order " + std::to_string(from_reps.order()) + ", H[G,G] has order " +
              std::to_string(from_all.order()));
  }
  {
    bool ok = true;
    for (ElementId rep : juniors.representatives) {
      long d = 0;
      for (long w : records[rep].weights) d = std::gcd(d, w);
      ok = ok && d == 1;
    }
    check("junior_weights_coprime", ok, "gcd of the weights of each junior representative is 1");
  }
  check("freeness_agrees", r.free == r.torsion.is_trivial(),
        std::string("junior elements and [G,G] ") + (r.free ? "generate G" : "do not generate G") +
            "; torsion = " + r.torsion.render());
  if (juniors.count == 0) {
    check("terminal_case", r.torsion == r.cl_quotient,
          "no junior elements: Cl(X) = " + r.torsion.render() + ", Cl(V/G) = " + r.cl_quotient.render());
  }
  return r;
}

}  // namespace mckay
