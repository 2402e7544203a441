#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "mckay/cyclotomic.hpp"
#include "mckay/error.hpp"
#include "mckay/group.hpp"

namespace mckay {

/// Finite abelian group as its invariant factors d_1 | d_2 | ... | d_k, all
/// at least 2. The trivial group has no factors.
struct AbelianStructure {
  std::vector<long> invariant_factors;

  long order() const {
    return std::accumulate(invariant_factors.begin(), invariant_factors.end(), 1L, std::multiplies<>());
  }

  long exponent() const { return invariant_factors.empty() ? 1 : invariant_factors.back(); }
  bool is_trivial() const { return invariant_factors.empty(); }

  /// "Z/2 + Z/6", or "0" for the trivial group.
  std::string render() const {
    if (invariant_factors.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
      if (i) out += " + ";
      out += "Z/" + std::to_string(invariant_factors[i]);
    }
    return out;
  }

  friend bool operator==(const AbelianStructure&, const AbelianStructure&) = default;
};

/// Invariant factors of an abelian group from the orders of all of its
/// elements. For each prime p, N_k = #{x : x^(p^k) = 1} = p^(sum_i min(l_i, k))
/// recovers the p-primary partition l; the primary parts are then merged
/// into a divisibility chain.
inline AbelianStructure invariants_from_element_orders(std::span<const long> orders) {
  const long n = static_cast<long>(orders.size());
  if (n == 0) throw DomainError("empty group");
  std::vector<std::vector<long>> primary;  // per prime: exponents, descending
  std::vector<long> primes = prime_factors(n);
  for (long p : primes) {
    // counts[k] = log_p N_k
    std::vector<long> columns;  // #{i : l_i >= k} for k = 1, 2, ...
    long prev_log = 0;
    long pk = 1;
    long total_log = 0;
    for (long m = n; m % p == 0; m /= p) ++total_log;
    while (prev_log < total_log) {
      pk *= p;
      const long count = std::count_if(orders.begin(), orders.end(), [pk](long o) { return pk % o == 0; });
      long log = 0, c = count;
      while (c % p == 0 && c > 1) {
        c /= p;
        ++log;
      }
      if (c != 1) throw ConsistencyError("element order counts are not prime powers; group is not abelian");
      if (log <= prev_log) throw ConsistencyError("element order counts stalled; group is not abelian");
      columns.push_back(log - prev_log);
      prev_log = log;
    }
    // Conjugate partition: l_i = #{k : columns[k] >= i}.
    std::vector<long> parts;
    const long rows = columns.empty() ? 0 : columns.front();
    for (long i = 1; i <= rows; ++i) {
      parts.push_back(std::count_if(columns.begin(), columns.end(), [i](long c) { return c >= i; }));
    }
    primary.push_back(parts);
  }
  std::size_t k = 0;
  for (const auto& parts : primary) k = std::max(k, parts.size());
  // Largest factor collects the largest prime power of every prime, and so on.
  std::vector<long> factors(k, 1);
  for (std::size_t pi = 0; pi < primes.size(); ++pi) {
    const auto& parts = primary[pi];
    for (std::size_t i = 0; i < parts.size(); ++i) {
      long q = 1;
      for (long e = 0; e < parts[i]; ++e) q *= primes[pi];
      factors[k - 1 - i] *= q;
    }
  }
  AbelianStructure s{factors};
  if (s.order() != n) throw ConsistencyError("invariant factors do not multiply to the group order");
  return s;
}

inline AbelianStructure abelian_invariants(const FiniteMatrixGroup& g) {
  if (!g.is_abelian()) throw DomainError("group is not abelian");
  std::vector<long> orders(g.order());
  for (ElementId i = 0; i < g.order(); ++i) orders[i] = g.element_order(i);
  return invariants_from_element_orders(orders);
}

inline AbelianStructure abelian_invariants(const QuotientGroup& q) {
  if (!q.is_abelian()) throw DomainError("quotient group is not abelian");
  std::vector<long> orders(q.order());
  for (std::uint32_t c = 0; c < q.order(); ++c) orders[c] = q.element_order(c);
  return invariants_from_element_orders(orders);
}

inline AbelianStructure abelian_invariants(const Subgroup& s) {
  const auto& g = s.parent();
  const auto& gens = s.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (g.multiply(gens[i], gens[j]) != g.multiply(gens[j], gens[i])) throw DomainError("subgroup is not abelian");
    }
  }
  std::vector<long> orders;
  for (ElementId id : s.members()) orders.push_back(g.element_order(id));
  return invariants_from_element_orders(orders);
}

/// Invariant factors of the subgroup of an abelian quotient Q formed by the
/// given cosets (which must be closed under multiplication).
inline AbelianStructure abelian_invariants(const QuotientGroup& q, std::span<const std::uint32_t> cosets) {
  std::vector<long> orders;
  for (std::uint32_t c : cosets) orders.push_back(q.element_order(c));
  return invariants_from_element_orders(orders);
}

/// A basis of an abelian quotient group: cosets b_i of order d_i (matching
/// the invariant factors) such that every coset is uniquely
/// sum_i c_i b_i with 0 <= c_i < d_i.
struct AbelianBasis {
  AbelianStructure structure;
  std::vector<std::uint32_t> generators;
  std::vector<std::vector<long>> coordinates;  // per coset
};

namespace detail {

inline std::vector<std::uint32_t> span_of(const QuotientGroup& q, const std::vector<std::uint32_t>& gens) {
  std::vector<bool> seen(q.order(), false);
  std::vector<std::uint32_t> members{0};
  seen[0] = true;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (std::uint32_t g : gens) {
      const std::uint32_t y = q.multiply(g, members[head]);
      if (!seen[y]) {
        seen[y] = true;
        members.push_back(y);
      }
    }
  }
  return members;
}

}  // namespace detail

/// Chooses the basis greedily, largest invariant factor first: the first
/// coset (in coset order, preferring `preferred` when given) of the required
/// order whose cyclic span meets the current span trivially. A cyclic
/// subgroup of maximal order is a direct summand, so the greedy choice
/// always completes.
inline AbelianBasis abelian_basis(const QuotientGroup& q, const std::vector<std::uint32_t>& preferred = {}) {
  AbelianBasis basis;
  basis.structure = abelian_invariants(q);
  const auto& factors = basis.structure.invariant_factors;
  std::vector<long> orders(q.order());
  for (std::uint32_t c = 0; c < q.order(); ++c) orders[c] = q.element_order(c);

  std::vector<std::uint32_t> candidates = preferred;
  for (std::uint32_t c = 0; c < q.order(); ++c) candidates.push_back(c);

  std::vector<std::uint32_t> chosen(factors.size());
  std::vector<bool> in_span(q.order(), false);
  in_span[0] = true;
  std::vector<std::uint32_t> span{0};
  for (std::size_t idx = factors.size(); idx-- > 0;) {
    const long d = factors[idx];
    bool found = false;
    for (std::uint32_t c : candidates) {
      if (orders[c] != d) continue;
      bool independent = true;
      for (std::uint32_t x = c; x != 0; x = q.multiply(c, x)) {
        if (in_span[x]) {
          independent = false;
          break;
        }
      }
      if (!independent) continue;
      chosen[idx] = c;
      std::vector<std::uint32_t> grown;
      for (std::uint32_t s : span) {
        std::uint32_t x = s;
        for (long j = 0; j < d; ++j) {
          grown.push_back(x);
          x = q.multiply(c, x);
        }
      }
      span = std::move(grown);
      for (std::uint32_t s : span) in_span[s] = true;
      found = true;
      break;
    }
    if (!found) throw ConsistencyError("no basis element of order " + std::to_string(d));
  }
  if (span.size() != q.order()) throw ConsistencyError("basis does not span the group");
  basis.generators = chosen;

  // Coordinates by walking the product of cyclic groups as an odometer.
  basis.coordinates.assign(q.order(), {});
  std::vector<long> digits(factors.size(), 0);
  for (std::size_t step = 0; step < q.order(); ++step) {
    std::uint32_t x = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      for (long j = 0; j < digits[i]; ++j) x = q.multiply(chosen[i], x);
    }
    if (!basis.coordinates[x].empty() || (factors.empty() && step > 0)) {
      throw ConsistencyError("basis coordinates are not unique");
    }
    basis.coordinates[x] = digits;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (++digits[i] < factors[i]) break;
      digits[i] = 0;
    }
  }
  return basis;
}

/// A linear character of an abelian group given by a basis: it sends the
/// i-th basis element to zeta_{d_i}^{exponents[i]}.
struct Character {
  std::vector<long> exponents;

  bool is_trivial() const {
    return std::all_of(exponents.begin(), exponents.end(), [](long e) { return e == 0; });
  }

  friend bool operator==(const Character&, const Character&) = default;
};

/// Exponent k such that chi(coset) = zeta_e^k, e the group exponent.
inline long character_exponent(const AbelianBasis& basis, const Character& chi, std::uint32_t coset) {
  const auto& factors = basis.structure.invariant_factors;
  if (chi.exponents.size() != factors.size()) {
    throw DomainError("character has " + std::to_string(chi.exponents.size()) + " exponents but the group has " +
                      std::to_string(factors.size()) + " invariant factors");
  }
  const long e = basis.structure.exponent();
  long k = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    k += mod_floor(chi.exponents[i], factors[i]) * basis.coordinates[coset][i] * (e / factors[i]);
  }
  return mod_floor(k, e);
}

inline Cyclotomic character_value(const AbelianBasis& basis, const Character& chi, std::uint32_t coset) {
  return Cyclotomic::root_of_unity(basis.structure.exponent(), character_exponent(basis, chi, coset));
}

/// Checks chi(ab) = chi(a) chi(b) over all pairs and normalises the exponents
/// into range. Throws on a malformed character.
inline Character validate_character(const QuotientGroup& q, const AbelianBasis& basis, Character chi) {
  const auto& factors = basis.structure.invariant_factors;
  if (chi.exponents.size() != factors.size()) {
    throw DomainError("character has " + std::to_string(chi.exponents.size()) + " exponents but the group has " +
                      std::to_string(factors.size()) + " invariant factors");
  }
  for (std::size_t i = 0; i < factors.size(); ++i) chi.exponents[i] = mod_floor(chi.exponents[i], factors[i]);
  const long e = basis.structure.exponent();
  for (std::uint32_t a = 0; a < q.order(); ++a) {
    for (std::uint32_t b : basis.generators) {
      const long lhs = character_exponent(basis, chi, q.multiply(a, b));
      const long rhs = mod_floor(character_exponent(basis, chi, a) + character_exponent(basis, chi, b), e);
      if (lhs != rhs) throw DomainError("character is not a homomorphism");
    }
  }
  return chi;
}

inline std::vector<Character> all_characters(const AbelianBasis& basis) {
  const auto& factors = basis.structure.invariant_factors;
  std::vector<Character> out;
  std::vector<long> digits(factors.size(), 0);
  const long total = basis.structure.order();
  for (long step = 0; step < total; ++step) {
    out.push_back(Character{digits});
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (++digits[i] < factors[i]) break;
      digits[i] = 0;
    }
  }
  return out;
}

/// Ab(G) = G/[G,G] with a chosen basis.
struct Abelianization {
  Subgroup commutator;
  QuotientGroup quotient;
  AbelianBasis basis;
};

inline Abelianization abelianize(const FiniteMatrixGroup& g) {
  Subgroup c = commutator_subgroup(g);
  QuotientGroup q(g, c);
  AbelianBasis b = abelian_basis(q);
  return Abelianization{std::move(c), std::move(q), std::move(b)};
}

// The result refers to the group; a temporary would dangle.
Abelianization abelianize(const FiniteMatrixGroup&& g) = delete;

}  // namespace mckay
