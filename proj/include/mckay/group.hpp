#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mckay/error.hpp"
#include "mckay/matrix.hpp"

namespace mckay {

using ElementId = std::uint32_t;

inline constexpr std::size_t kDefaultMaxGroupSize = 20000;

/// Conjugacy classes of a group. Classes are ordered by representative, and
/// the representative of a class is its least element id.
struct ClassPartition {
  std::vector<std::uint32_t> class_of;
  std::vector<std::vector<ElementId>> classes;

  std::size_t count() const { return classes.size(); }
  ElementId representative(std::size_t c) const { return classes[c].front(); }
};

/// A finite matrix group given by generators, with its complete element list.
///
/// Elements are numbered in breadth-first order from the identity (id 0),
/// applying generators in input order by left multiplication. Every element
/// remembers the generator and parent it was reached from, so a product a*b
/// is evaluated by replaying the word of a on b through the generator
/// tables; long words fall back to a matrix product and a lookup.
class FiniteMatrixGroup {
 public:
  static FiniteMatrixGroup close(const std::vector<CycMatrix>& generators,
                                 std::size_t max_size = kDefaultMaxGroupSize) {
    if (generators.empty()) throw DomainError("at least one generator is required");
    FiniteMatrixGroup g;
    g.dim_ = generators.front().dim();
    long conductor = 1;
    for (const auto& m : generators) {
      if (m.dim() != g.dim_) throw DimensionError("generators have different dimensions");
      if (m.determinant().is_zero()) throw DomainError("generator is not invertible");
      conductor = std::lcm(conductor, m.conductor());
    }
    g.conductor_ = conductor;
    for (const auto& m : generators) g.generators_.push_back(m.embedded(conductor));
    g.run_closure(max_size);
    g.compute_orders();
    g.compute_classes();
    return g;
  }

  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  long conductor() const noexcept { return conductor_; }
  long exponent() const noexcept { return exponent_; }
  ElementId identity() const noexcept { return 0; }

  const std::vector<CycMatrix>& generators() const noexcept { return generators_; }
  const std::vector<ElementId>& generator_ids() const noexcept { return generator_ids_; }
  const std::vector<CycMatrix>& elements() const noexcept { return elements_; }
  const CycMatrix& element(ElementId id) const { return elements_[id]; }
  const ClassPartition& classes() const noexcept { return classes_; }

  long element_order(ElementId id) const { return orders_[id]; }
  ElementId inverse(ElementId id) const { return inverses_[id]; }
  std::size_t word_length(ElementId id) const { return depth_[id]; }

  std::optional<ElementId> find(const CycMatrix& m) const {
    if (m.dim() != dim_) return std::nullopt;
    if (conductor_ % m.conductor() == 0) {
      const CycMatrix lifted = m.embedded(conductor_);
      auto it = buckets_.find(lifted.hash());
      if (it == buckets_.end()) return std::nullopt;
      for (ElementId id : it->second) {
        if (elements_[id] == lifted) return id;
      }
      return std::nullopt;
    }
    for (ElementId id = 0; id < elements_.size(); ++id) {
      if (elements_[id] == m) return id;
    }
    return std::nullopt;
  }

  ElementId multiply(ElementId a, ElementId b) const {
    if (depth_[a] > kMaxWalk) return lookup(elements_[a] * elements_[b]);
    std::array<std::uint32_t, kMaxWalk> word{};
    std::size_t len = 0;
    for (ElementId x = a; x != 0; x = parent_[x]) word[len++] = parent_gen_[x];
    ElementId result = b;
    while (len > 0) result = left_[word[--len]][result];
    return result;
  }

  ElementId power(ElementId a, long exponent) const {
    const long r = orders_[a];
    long e = ((exponent % r) + r) % r;
    ElementId result = 0;
    ElementId base = a;
    while (e > 0) {
      if (e & 1) result = multiply(result, base);
      e >>= 1;
      if (e > 0) base = multiply(base, base);
    }
    return result;
  }

  /// by * g * by^-1
  ElementId conjugate(ElementId g, ElementId by) const { return multiply(multiply(by, g), inverses_[by]); }

  ElementId commutator(ElementId a, ElementId b) const {
    return multiply(multiply(a, b), multiply(inverses_[a], inverses_[b]));
  }

  bool is_abelian() const {
    for (std::size_t i = 0; i < generator_ids_.size(); ++i) {
      for (std::size_t j = i + 1; j < generator_ids_.size(); ++j) {
        const ElementId a = generator_ids_[i], b = generator_ids_[j];
        if (multiply(a, b) != multiply(b, a)) return false;
      }
    }
    return true;
  }

  /// True when every generator (hence every element) has determinant 1.
  bool is_special_linear() const {
    return std::all_of(generators_.begin(), generators_.end(),
                       [](const CycMatrix& m) { return m.determinant().is_one(); });
  }

 private:
  static constexpr std::size_t kMaxWalk = 48;

  ElementId lookup(const CycMatrix& m) const {
    auto id = find(m);
    if (!id) throw ConsistencyError("product left the group");
    return *id;
  }

  ElementId insert(CycMatrix m, ElementId parent, std::uint32_t gen, std::uint32_t depth) {
    const auto id = static_cast<ElementId>(elements_.size());
    buckets_[m.hash()].push_back(id);
    elements_.push_back(std::move(m));
    parent_.push_back(parent);
    parent_gen_.push_back(gen);
    depth_.push_back(depth);
    return id;
  }

  void run_closure(std::size_t max_size) {
    left_.assign(generators_.size(), {});
    insert(CycMatrix::identity(dim_, conductor_), 0, 0, 0);
    for (ElementId current = 0; current < elements_.size(); ++current) {
      for (std::uint32_t k = 0; k < generators_.size(); ++k) {
        CycMatrix product = generators_[k] * elements_[current];
        ElementId id;
        if (auto found = find(product)) {
          id = *found;
        } else {
          if (elements_.size() >= max_size) throw GroupTooLarge(elements_.size(), max_size);
          id = insert(std::move(product), current, k, depth_[current] + 1);
        }
        if (left_[k].size() <= current) left_[k].resize(current + 1);
        left_[k][current] = id;
      }
    }
    for (const auto& m : generators_) generator_ids_.push_back(lookup(m));
  }

  void compute_orders() {
    const std::size_t n = elements_.size();
    orders_.assign(n, 1);
    inverses_.assign(n, 0);
    exponent_ = 1;
    for (ElementId i = 1; i < n; ++i) {
      ElementId prev = 0, x = i;
      long k = 1;
      while (x != 0) {
        prev = x;
        x = multiply(i, x);
        ++k;
        if (k > static_cast<long>(n)) throw ConsistencyError("element order exceeds group order");
      }
      orders_[i] = k;
      inverses_[i] = prev;
      if (static_cast<long>(n) % k != 0) throw ConsistencyError("element order does not divide group order");
      exponent_ = std::lcm(exponent_, k);
    }
  }

  void compute_classes() {
    const std::size_t n = elements_.size();
    constexpr auto kUnset = static_cast<std::uint32_t>(-1);
    classes_.class_of.assign(n, kUnset);
    for (ElementId start = 0; start < n; ++start) {
      if (classes_.class_of[start] != kUnset) continue;
      const auto c = static_cast<std::uint32_t>(classes_.classes.size());
      std::vector<ElementId> members{start};
      classes_.class_of[start] = c;
      for (std::size_t head = 0; head < members.size(); ++head) {
        for (ElementId s : generator_ids_) {
          const ElementId y = conjugate(members[head], s);
          if (classes_.class_of[y] == kUnset) {
            classes_.class_of[y] = c;
            members.push_back(y);
          }
        }
      }
      std::sort(members.begin(), members.end());
      classes_.classes.push_back(std::move(members));
    }
  }

  std::size_t dim_ = 0;
  long conductor_ = 1;
  long exponent_ = 1;
  std::vector<CycMatrix> generators_;
  std::vector<ElementId> generator_ids_;
  std::vector<CycMatrix> elements_;
  std::unordered_map<std::size_t, std::vector<ElementId>> buckets_;
  std::vector<ElementId> parent_;
  std::vector<std::uint32_t> parent_gen_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::vector<ElementId>> left_;
  std::vector<long> orders_;
  std::vector<ElementId> inverses_;
  ClassPartition classes_;
};

/// A subgroup of a FiniteMatrixGroup, stored as a sorted id set together
/// with a generating subset. Holds a pointer to its parent, which must
/// outlive it.
class Subgroup {
 public:
  Subgroup(const FiniteMatrixGroup& parent, std::vector<ElementId> generators)
      : parent_(&parent), generators_(std::move(generators)), mask_(parent.order(), false) {
    close();
  }

  const FiniteMatrixGroup& parent() const noexcept { return *parent_; }
  std::size_t order() const noexcept { return members_.size(); }
  const std::vector<ElementId>& members() const noexcept { return members_; }
  const std::vector<ElementId>& generators() const noexcept { return generators_; }
  bool contains(ElementId id) const { return mask_[id]; }
  bool is_trivial() const { return members_.size() == 1; }
  bool is_whole_group() const { return members_.size() == parent_->order(); }

  /// Invariant under conjugation by every generator of the parent.
  bool is_normal() const {
    for (ElementId s : parent_->generator_ids()) {
      for (ElementId h : generators_) {
        if (!mask_[parent_->conjugate(h, s)]) return false;
      }
    }
    return true;
  }

  void add_generator(ElementId id) {
    if (mask_[id]) return;
    generators_.push_back(id);
    close();
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }

 private:
  void close() {
    std::fill(mask_.begin(), mask_.end(), false);
    members_.assign(1, parent_->identity());
    mask_[parent_->identity()] = true;
    for (std::size_t head = 0; head < members_.size(); ++head) {
      for (ElementId h : generators_) {
        const ElementId y = parent_->multiply(h, members_[head]);
        if (!mask_[y]) {
          mask_[y] = true;
          members_.push_back(y);
        }
      }
    }
    std::sort(members_.begin(), members_.end());
  }

  const FiniteMatrixGroup* parent_;
  std::vector<ElementId> generators_;
  std::vector<bool> mask_;
  std::vector<ElementId> members_;
};

/// Smallest subgroup containing `seed`. Seed elements already in the
/// subgroup built so far are skipped, so the generating set stays short.
inline Subgroup subgroup_generated(const FiniteMatrixGroup& g, std::span<const ElementId> seed) {
  Subgroup s(g, {});
  std::vector<ElementId> sorted(seed.begin(), seed.end());
  std::sort(sorted.begin(), sorted.end());
  for (ElementId id : sorted) {
    if (id >= g.order()) throw DomainError("element id out of range");
    s.add_generator(id);
  }
  return s;
}

/// Smallest normal subgroup containing `seed`.
inline Subgroup normal_closure(const FiniteMatrixGroup& g, std::span<const ElementId> seed) {
  Subgroup s = subgroup_generated(g, seed);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<ElementId> gens = s.generators();
    for (ElementId h : gens) {
      for (ElementId t : g.generator_ids()) {
        const ElementId c = g.conjugate(h, t);
        if (!s.contains(c)) {
          s.add_generator(c);
          grew = true;
        }
      }
    }
  }
  return s;
}

/// Subgroup generated by two subgroups (the product AB when one is normal).
inline Subgroup join(const Subgroup& a, const Subgroup& b) {
  Subgroup out = a;
  for (ElementId h : b.generators()) out.add_generator(h);
  return out;
}

inline constexpr std::size_t kAllPairsCommutatorLimit = 4096;

/// [G,G]. Small groups take all element pairs; larger ones take the normal
/// closure of the generator commutators. Both give the same subgroup.
inline Subgroup commutator_subgroup(const FiniteMatrixGroup& g,
                                    std::size_t all_pairs_limit = kAllPairsCommutatorLimit) {
  if (g.is_abelian()) return Subgroup(g, {});
  if (g.order() <= all_pairs_limit) {
    Subgroup s(g, {});
    const auto n = static_cast<ElementId>(g.order());
    for (ElementId a = 1; a < n; ++a) {
      for (ElementId b = a + 1; b < n; ++b) {
        const ElementId c = g.commutator(a, b);
        if (!s.contains(c)) s.add_generator(c);
      }
      if (s.is_whole_group()) break;
    }
    return s;
  }
  std::vector<ElementId> seed;
  const auto& gens = g.generator_ids();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) seed.push_back(g.commutator(gens[i], gens[j]));
  }
  return normal_closure(g, seed);
}

/// G/N for a normal subgroup N. Coset c is represented by its least element
/// id; coset 0 is N itself. Products are computed on demand through the
/// parent; `table()` materialises the full law.
class QuotientGroup {
 public:
  QuotientGroup(const FiniteMatrixGroup& parent, Subgroup normal)
      : parent_(&parent), normal_(std::move(normal)) {
    if (&normal_.parent() != parent_) throw DomainError("subgroup belongs to a different group");
    if (!normal_.is_normal()) throw DomainError("subgroup is not normal");
    constexpr auto kUnset = static_cast<std::uint32_t>(-1);
    coset_of_.assign(parent.order(), kUnset);
    for (ElementId g = 0; g < parent.order(); ++g) {
      if (coset_of_[g] != kUnset) continue;
      const auto c = static_cast<std::uint32_t>(reps_.size());
      reps_.push_back(g);
      for (ElementId n : normal_.members()) coset_of_[parent.multiply(g, n)] = c;
    }
    if (reps_.size() * normal_.order() != parent.order()) throw ConsistencyError("cosets do not partition the group");
  }

  const FiniteMatrixGroup& parent() const noexcept { return *parent_; }
  const Subgroup& normal_subgroup() const noexcept { return normal_; }
  std::size_t order() const noexcept { return reps_.size(); }
  std::uint32_t identity() const noexcept { return 0; }
  std::uint32_t coset_of(ElementId g) const { return coset_of_[g]; }
  ElementId representative(std::uint32_t c) const { return reps_[c]; }
  const std::vector<ElementId>& representatives() const noexcept { return reps_; }

  std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const {
    return coset_of_[parent_->multiply(reps_[a], reps_[b])];
  }

  std::uint32_t inverse(std::uint32_t a) const { return coset_of_[parent_->inverse(reps_[a])]; }

  long element_order(std::uint32_t a) const {
    long k = 1;
    for (std::uint32_t x = a; x != 0; x = multiply(a, x)) ++k;
    return k;
  }

  std::vector<ElementId> members(std::uint32_t c) const {
    std::vector<ElementId> out;
    for (ElementId n : normal_.members()) out.push_back(parent_->multiply(reps_[c], n));
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Coset generators: the images of the parent's generators.
  std::vector<std::uint32_t> generator_images() const {
    std::vector<std::uint32_t> out;
    for (ElementId s : parent_->generator_ids()) out.push_back(coset_of_[s]);
    return out;
  }

  bool is_abelian() const {
    const auto gens = generator_images();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        if (multiply(gens[i], gens[j]) != multiply(gens[j], gens[i])) return false;
      }
    }
    return true;
  }

  std::vector<std::vector<std::uint32_t>> table() const {
    std::vector<std::vector<std::uint32_t>> t(order(), std::vector<std::uint32_t>(order()));
    for (std::uint32_t a = 0; a < order(); ++a) {
      for (std::uint32_t b = 0; b < order(); ++b) t[a][b] = multiply(a, b);
    }
    return t;
  }

 private:
  const FiniteMatrixGroup* parent_;
  Subgroup normal_;
  std::vector<ElementId> reps_;
  std::vector<std::uint32_t> coset_of_;
};

inline QuotientGroup quotient(const FiniteMatrixGroup& g, const Subgroup& n) { return QuotientGroup(g, n); }

// Subgroups and quotients refer to their parent; a temporary would dangle.
Subgroup subgroup_generated(const FiniteMatrixGroup&& g, std::span<const ElementId> seed) = delete;
Subgroup commutator_subgroup(const FiniteMatrixGroup&& g, std::size_t all_pairs_limit = kAllPairsCommutatorLimit) = delete;

/// Preimage in G of [G/N, G/N], i.e. [G,G]N.
inline Subgroup commutator_subgroup(const QuotientGroup& q) {
  return join(commutator_subgroup(q.parent()), q.normal_subgroup());
}

}  // namespace mckay
