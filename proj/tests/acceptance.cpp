// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "support/catalog.hpp"
#include "support/numeric.hpp"
#include "support/oracles.hpp"
#include "support/random_groups.hpp"

using mckay::AbelianStructure;
using mckay::CycMatrix;
using mckay::ElementId;
using mckay::GaloisTwist;
using mckay::SparsePolynomial;
using support::diag;

namespace {

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

  void require(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failure_count_;
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  void time_limit(double limit) {
    const double s = seconds();
    std::ostringstream msg;
    msg << "took " << s << " s, limit " << limit << " s";
    require(s < limit, msg.str());
  }

  bool report(int number) const {
    std::ostringstream line;
    line << (failure_count_ == 0 ? "PASS" : "FAIL") << " criterion " << number << ": " << title_ << " ("
         << seconds() << " s)";
    std::cout << line.str() << "\n";
    for (const auto& f : failures_) std::cout << "    " << f << "\n";
    if (failure_count_ > failures_.size()) std::cout << "    ... " << failure_count_ - failures_.size() << " more\n";
    return failure_count_ == 0;
  }

 private:
  std::string title_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> failures_;
  std::size_t failure_count_ = 0;
};

AbelianStructure chain(std::vector<long> factors) { return AbelianStructure{std::move(factors)}; }

std::set<std::string> rendered(const mckay::FiniteMatrixGroup& g, const std::vector<ElementId>& ids) {
  std::set<std::string> out;
  for (ElementId id : ids) out.insert(g.element(id).render());
  return out;
}

std::vector<long> units(long n) {
  std::vector<long> out;
  for (long t = 1; t <= n; ++t)
    if (std::gcd(t, n) == 1) out.push_back(t);
  return out;
}

bool cyclic6_golden() {
  Criterion c("cyclic group of order 6 in SL4, Cl(X) = Z^2 + Z/2");
  const auto g = support::cyclic6_sl4();
  const auto r = mckay::terminalization_class_group(g);
  c.require(g.order() == 6, "|G| != 6");
  c.require(mckay::class_group_of_quotient(g) == chain({6}), "Cl(V/G) != [6]");
  c.require(r.free_rank == 2, "m != 2");
  const std::set<std::string> juniors{diag({"1", "1", "E(3)^2", "E(3)"}).render(),
                                      diag({"1", "1", "E(3)", "E(3)^2"}).render()};
  c.require(rendered(g, r.junior_representatives) == juniors, "junior representatives differ");
  c.require(r.junior_subgroup_order == 3, "|H| != 3");
  c.require(r.torsion == chain({2}), "torsion != [2]");
  std::vector<ElementId> free_images, torsion_images;
  for (const auto& f : r.pushforward.free_images) free_images.push_back(f.image);
  for (const auto& t : r.pushforward.torsion_images) torsion_images.push_back(t.image);
  c.require(rendered(g, free_images) == juniors, "free pushforward images differ");
  c.require(rendered(g, torsion_images) == std::set<std::string>{diag({"-1", "-1", "-1", "-1"}).render()},
            "torsion pushforward image is not -I4");
  for (const auto& check : r.checks) c.require(check.passed, "self-check failed: " + check.name);
  c.time_limit(1.0);
  return c.report(1);
}

bool icosahedral_golden() {
  Criterion c("binary icosahedral group diagonally in SL4, every nontrivial age is 2");
  const auto g = support::binary_icosahedral_sl4();
  c.require(g.order() == 120, "|G| != 120");
  for (const auto& rec : mckay::age_records(g)) {
    if (rec.element == g.identity()) continue;
    c.require(rec.age == 2, "element " + std::to_string(rec.element) + " has age " + rec.age.get_str());
  }
  const auto r = mckay::terminalization_class_group(g);
  c.require(r.free_rank == 0, "m != 0");
  c.require(r.torsion.is_trivial(), "Cl(X) is not trivial");
  c.require(r.free, "freeness is false");
  c.time_limit(30.0);
  return c.report(2);
}

bool ade_cyclic_series() {
  Criterion c("cyclic groups diag(E(k), E(k)^-1) in SL2, k = 2..30");
  for (long k = 2; k <= 30; ++k) {
    const auto g = support::ade_cyclic(k);
    const auto r = mckay::terminalization_class_group(g);
    const std::string at = "k = " + std::to_string(k) + ": ";
    c.require(r.free_rank == static_cast<std::size_t>(k - 1), at + "m = " + std::to_string(r.free_rank));
    c.require(r.torsion.is_trivial(), at + "torsion " + r.torsion.render());
    c.require(r.cl_quotient == chain({k}), at + "Cl(V/G) = " + r.cl_quotient.render());
  }
  c.time_limit(10.0);
  return c.report(3);
}

bool quaternion_case() {
  Criterion c("quaternion group Q8 in SL2");
  const auto g = support::quaternion();
  const auto r = mckay::terminalization_class_group(g);
  c.require(r.free_rank == 4, "m != 4");
  std::multiset<std::size_t> sizes;
  for (ElementId rep : r.junior_representatives) sizes.insert(g.classes().classes[g.classes().class_of[rep]].size());
  c.require(sizes == std::multiset<std::size_t>{1, 2, 2, 2}, "junior class sizes are not 1, 2, 2, 2");
  c.require(r.junior_subgroup_order == g.order(), "H != G");
  c.require(r.torsion.is_trivial(), "torsion is not trivial");
  c.require(r.abelianization == chain({2, 2}), "Ab(G) != [2, 2]");
  // brute-force ages and conjugation orbits on the matrices themselves
  std::set<std::set<std::string>> orbits;
  for (const auto& m : g.elements()) {
    if (support::age_by_rank(m) != 1) continue;
    std::set<std::string> orbit;
    for (const auto& x : g.elements()) orbit.insert((x * m * x.inverse()).render());
    orbits.insert(orbit);
  }
  std::multiset<std::size_t> brute_sizes;
  for (const auto& o : orbits) brute_sizes.insert(o.size());
  c.require(brute_sizes == sizes, "brute-force junior orbits differ");
  return c.report(4);
}

bool galois_invariance(const std::vector<support::NamedGroup>& groups) {
  Criterion c("every Galois twist gives the same m and torsion");
  bool nontrivial = false;
  for (const auto& [name, g] : groups) {
    const auto base = mckay::terminalization_class_group(g);
    const auto commutator = mckay::commutator_subgroup(g);
    for (long t : units(mckay::working_conductor(g))) {
      const auto juniors = mckay::junior_classes(g, GaloisTwist{t});
      const auto torsion =
          mckay::abelianized_quotient_invariants(g, mckay::junior_subgroup(g, juniors), commutator);
      const std::string at = name + ", t = " + std::to_string(t) + ": ";
      c.require(juniors.count == base.free_rank, at + "m differs");
      c.require(torsion == base.torsion, at + "torsion differs");
      const long order = static_cast<long>(g.order());
      int odd_primes = 0;
      for (long p = 3; p <= order; p += 2) {
        bool prime = true;
        for (long d = 3; d * d <= p; d += 2) prime = prime && p % d != 0;
        odd_primes += prime && order % p == 0;
      }
      if (odd_primes >= 2 && juniors.junior_elements != base.junior_elements) nontrivial = true;
    }
    c.require(mckay::galois_sweep(g).consistent, name + ": sweep inconsistent");
  }
  c.require(nontrivial, "no group with two odd prime factors showed a different junior set");
  return c.report(5);
}

bool graded_invariants(const std::vector<support::NamedGroup>& groups) {
  Criterion c("relative invariants, valuation congruence and H-membership");
  std::mt19937 rng(20240611);
  for (const auto& [name, g] : groups) {
    const auto ab = mckay::abelianize(g);
    const auto juniors = mckay::junior_classes(g);
    const auto gradings = mckay::junior_gradings(g, juniors);
    const auto h = mckay::junior_subgroup(g, juniors);
    std::vector<SparsePolynomial> found;
    auto verify = [&](const SparsePolynomial& f, const std::string& what) {
      for (const auto& e : mckay::check_congruence_lemma(g, ab, gradings, f)) c.require(e.holds, what + ": congruence");
      c.require(mckay::check_h_membership(g, ab, h, gradings, f).consistent(), what + ": membership");
    };
    for (const auto& chi : mckay::all_characters(ab.basis)) {
      const auto f = mckay::relative_invariant(g, ab, chi, static_cast<long>(g.order()));
      c.require(f.has_value(), name + ": no relative invariant within degree |G|");
      if (!f) continue;
      verify(*f, name + " " + f->render());
      found.push_back(*f);
    }
    if (found.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, found.size() - 1);
    std::uniform_int_distribution<int> factors(2, 3);
    for (int trial = 0; trial < 100; ++trial) {
      SparsePolynomial f = found[pick(rng)];
      const int k = factors(rng);
      for (int i = 1; i < k && f.degree() <= 6; ++i) f = f * found[pick(rng)];
      c.require(mckay::homogeneous_character(g, ab, f).has_value(), name + ": product is not homogeneous");
      verify(f, name + " " + f.render());
    }
  }
  return c.report(6);
}

bool structure_arithmetic(const std::vector<support::NamedGroup>& groups) {
  Criterion c("|Ab(G)| = |Hbar| |Ab(G/H)| and the terminal case");
  for (const auto& [name, g] : groups) {
    const auto r = mckay::terminalization_class_group(g);
    c.require(r.abelianization.order() == r.hbar.order() * r.torsion.order(), name + ": orders do not multiply");
    if (r.free_rank == 0) c.require(r.torsion == mckay::class_group_of_quotient(g), name + ": Cl(X) != Cl(V/G)");
  }
  c.require(mckay::terminalization_class_group(support::quaternion_sl4()).free_rank == 0,
            "Q8 diagonally in SL4 should have no junior classes");
  return c.report(7);
}

bool oracle_equivalence() {
  Criterion c("invariant factors and multiplicities against constructed ground truth");
  std::mt19937 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = support::random_abelian(rng, 2000);
    const auto g = mckay::FiniteMatrixGroup::close(a.generators);
    c.require(mckay::abelian_invariants(g).invariant_factors == support::gcd_lcm_normal_form(a.cyclic_orders),
              "abelian group " + std::to_string(trial));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = support::random_diagonal(rng);
    std::vector<long> expected(d.order, 0);
    for (long e : d.exponents) ++expected[e];
    c.require(mckay::eigen_multiplicities(d.matrix, d.order) == expected, "diagonal matrix " + d.matrix.render());
  }
  return c.report(8);
}

bool numeric_cross_check(const std::vector<support::NamedGroup>& groups) {
  Criterion c("exact identities confirmed at the complex embedding");
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const long n = std::vector<long>{3, 4, 5, 7, 8, 9, 12, 15, 20}[trial % 9];
    const auto x = support::random_cyclotomic(rng, n), y = support::random_cyclotomic(rng, 12);
    c.require(support::close(support::evaluate(x * y), support::evaluate(x) * support::evaluate(y)), "product");
    c.require(support::close(support::evaluate(x + y), support::evaluate(x) + support::evaluate(y)), "sum");
    if (!x.is_zero()) c.require(support::close(support::evaluate(x.inverse()), 1.0 / support::evaluate(x)), "inverse");
  }
  for (const auto& [name, g] : groups) {
    for (ElementId a = 0; a < g.order(); ++a) {
      const auto ma = support::evaluate(g.element(a));
      c.require(support::close(support::determinant(ma), 1.0), name + ": determinant");
      const ElementId b = (a * 5 + 1) % g.order();
      c.require(support::close(support::evaluate(g.element(g.multiply(a, b))),
                               support::multiply(ma, support::evaluate(g.element(b)))),
                name + ": product");
      c.require(support::numeric_multiplicities(ma, g.element_order(a)) == mckay::eigen_multiplicities(g, a),
                name + ": multiplicities");
    }
    for (ElementId rep : mckay::junior_classes(g).representatives) {
      const auto d = mckay::grading_data(g, rep);
      const auto mb = support::multiply(support::evaluate(g.element(rep)), support::evaluate(d.basis));
      const auto b = support::evaluate(d.basis);
      for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j)
          c.require(support::close(mb[i][j], b[i][j] * support::unit_root(d.order, d.weights[j])), name + ": eigenbasis");
    }
    const auto ab = mckay::abelianize(g);
    for (const auto& chi : mckay::all_characters(ab.basis)) {
      const auto f = mckay::relative_invariant(g, ab, chi, static_cast<long>(g.order()));
      if (!f) continue;
      for (ElementId x = 0; x < g.order(); x += 7) {
        const auto v = support::random_point(rng, g.dim());
        const auto value = support::evaluate(mckay::character_value(ab.basis, chi, ab.quotient.coset_of(x)));
        const auto lhs = support::evaluate(*f, support::apply(support::evaluate(g.element(g.inverse(x))), v));
        c.require(support::close(lhs, value * support::evaluate(*f, v), 1e-9), name + ": semi-invariance");
      }
    }
  }
  return c.report(9);
}

}  // namespace

int main() {
  bool ok = true;
  try {
    ok = cyclic6_golden() && ok;
    ok = icosahedral_golden() && ok;
    ok = ade_cyclic_series() && ok;
    ok = quaternion_case() && ok;
    const auto groups = support::sl_catalog(true);
    ok = galois_invariance(groups) && ok;
    ok = graded_invariants(groups) && ok;
    ok = structure_arithmetic(groups) && ok;
    ok = oracle_equivalence() && ok;
    ok = numeric_cross_check(groups) && ok;
  } catch (const std::exception& e) {
    std::cout << "FAIL aborted: " << e.what() << "\n";
    return 1;
  }
  std::cout << (ok ? "all criteria passed" : "some criteria failed") << "\n";
  return ok ? 0 : 1;
}
