#include <functional>

#include "doctest.h"
#include "test_util.hpp"

using namespace fdalg;
using namespace fdalg::testing;

namespace {

// Number of paths avoiding every forbidden subpath; the dimension of a
// monomial quotient, counted without any linear algebra.
std::size_t count_monomial_paths(std::size_t vertices, const std::vector<Arrow>& arrows,
                                 const std::vector<std::vector<std::size_t>>& forbidden) {
  std::size_t count = 0;
  std::vector<std::size_t> word;
  auto contains_forbidden = [&] {
    for (const auto& f : forbidden)
      if (word.size() >= f.size() && std::equal(f.begin(), f.end(), word.end() - static_cast<long>(f.size())))
        return true;
    return false;
  };
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    ++count;
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      if (arrows[a].source != v) continue;
      word.push_back(a);
      if (!contains_forbidden()) walk(arrows[a].target);
      word.pop_back();
    }
  };
  for (std::size_t v = 0; v < vertices; ++v) walk(v);
  return count;
}

QuiverPresentation second_quiver(std::size_t n) {
  QuiverPresentation q;
  q.vertices = 4;
  // x: 1->2, y: 2->1, eta: 2->4, x': 3->4, y': 4->3 with vertices renumbered from 0.
  q.arrows = {{"x", 0, 1}, {"y", 1, 0}, {"eta", 1, 3}, {"x'", 2, 3}, {"y'", 3, 2}};
  std::vector<std::size_t> xy, xy2;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    xy.insert(xy.end(), {0, 1});
    xy2.insert(xy2.end(), {3, 4});
  }
  q.relations = {{{Rational(1), path(0, xy)}}, {{Rational(1), path(2, xy2)}}, {{Rational(1), path(0, {0, 2})}},
                 {{Rational(1), path(1, {2, 4})}}};
  q.cutoff = 2 * n + 1;
  return q;
}

void check_idempotents(const Algebra& a) {
  auto es = primitive_idempotents(a);
  SparseVec sum;
  for (std::size_t i = 0; i < es.size(); ++i) {
    CHECK(a.mul(es[i], es[i]) == es[i]);
    for (std::size_t j = 0; j < es.size(); ++j)
      if (i != j) CHECK(a.mul(es[i], es[j]).empty());
    sum = sparse_axpy(Q, sum, Rational(1), es[i]);
  }
  CHECK(sum == a.unit());
}

bool radical_power_vanishes(const Algebra& a, std::size_t k) {
  const std::vector<SparseVec> rad = radical(a).basis();
  std::vector<SparseVec> cur = rad;
  for (std::size_t p = 1; p < k; ++p) {
    EchelonBuilder eb(Q, a.dim());
    for (const auto& x : cur)
      for (const auto& r : rad) eb.add(a.mul(x, r));
    cur = eb.reduced_rows();
  }
  return cur.empty();
}

}  // namespace

TEST_CASE("structure constant constructor") {
  Algebra k = Algebra::from_structure_constants(Q, 1, {{0, 0, 0, Rational(1)}}, unit_vector(0));
  CHECK(k.dim() == 1);
  // e1 e1 = e0 but e0 e1 = 0: e0 is not a unit.
  CHECK_THROWS_AS(Algebra::from_structure_constants(Q, 2, {{0, 0, 0, Rational(1)}, {1, 1, 0, Rational(1)}},
                                                    unit_vector(0)),
                  AlgebraError);
  Algebra dual_numbers = Algebra::from_structure_constants(
      Q, 2, {{0, 0, 0, Rational(1)}, {0, 1, 1, Rational(1)}, {1, 0, 1, Rational(1)}}, unit_vector(0));
  CHECK(dual_numbers.product(1, 1).empty());
  // Non-associative: e1 e1 = e1, e1 e2 = e2, e2 e1 = 0, e2 e2 = e1 on top of a unit e0.
  std::vector<StructureConstant> bad{{0, 0, 0, Rational(1)}, {0, 1, 1, Rational(1)}, {1, 0, 1, Rational(1)},
                                     {0, 2, 2, Rational(1)}, {2, 0, 2, Rational(1)}, {1, 1, 1, Rational(1)},
                                     {1, 2, 2, Rational(1)}, {2, 2, 1, Rational(1)}};
  CHECK_THROWS_WITH_AS(Algebra::from_structure_constants(Q, 3, bad, unit_vector(0)),
                       doctest::Contains("associativity fails"), AlgebraError);
}

TEST_CASE("named families") {
  CHECK(nakayama(1).dim() == 1);
  Algebra n2 = nakayama(2);
  CHECK(n2.dim() == 2);
  CHECK(n2.product(1, 1).empty());
  Algebra n5 = nakayama(5);
  CHECK(n5.product(4, 1).empty());
  CHECK(n5.product(2, 2) == unit_vector(4));

  Algebra ls = liu_schulz(Rational(2));
  CHECK(ls.dim() == 8);
  // x1 x0 = -2 x0x1
  CHECK(ls.product(2, 1) == SparseVec{{4, Rational(-2)}});
  CHECK(ls.product(1, 1).empty());
  // x0 x1 x2 is the top monomial.
  CHECK(ls.mul(ls.product(1, 2), unit_vector(3)) == unit_vector(7));
  CHECK_THROWS_AS(liu_schulz(Rational(1)), AlgebraError);
  CHECK_THROWS_AS(liu_schulz(Rational(-1)), AlgebraError);
  CHECK_THROWS_AS(liu_schulz(Rational(0)), AlgebraError);

  CHECK(group_algebra(1).dim() == 1);
  Algebra c2 = group_algebra(2);
  CHECK(c2.product(1, 1) == unit_vector(0));
  Algebra c3 = group_algebra(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(c3.product(i, j) == c3.product(j, i));
}

TEST_CASE("opposite and tensor algebras") {
  Algebra c3 = group_algebra(3);
  Algebra c3op = opposite(c3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(c3op.product(i, j) == c3.product(i, j));
  Algebra ls = liu_schulz(Rational(2));
  Algebra lsop = opposite(ls);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) CHECK(lsop.product(i, j) == ls.product(j, i));
  CHECK(lsop.product(1, 2) == SparseVec{{4, Rational(-2)}});
  CHECK(opposite(lsop).same_as(ls));

  Algebra k = nakayama(1);
  Algebra t = tensor_algebra(k, ls);
  CHECK(t.dim() == 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) CHECK(t.product(i, j) == ls.product(i, j));
  Algebra n2 = nakayama(2);
  Algebra nn = tensor_algebra(n2, n2);
  CHECK(nn.dim() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(nn.product(i, j) == nn.product(j, i));
  // The unvalidated tensor product still passes the exhaustive check.
  std::vector<SparseVec> table;
  Algebra big = tensor_algebra(nakayama(3), ls);
  CHECK(big.dim() == 24);
  for (std::size_t i = 0; i < 24; ++i)
    for (std::size_t j = 0; j < 24; ++j) table.push_back(big.product(i, j));
  CHECK_NOTHROW(validate_algebra(Q, 24, table, big.unit()));
}

TEST_CASE("quiver quotients") {
  QuiverPresentation point;
  point.vertices = 1;
  CHECK(from_quiver(point).dim() == 1);

  for (std::size_t n = 1; n <= 5; ++n) {
    QuiverPresentation loop;
    loop.vertices = 1;
    loop.arrows = {{"x", 0, 0}};
    loop.relations = {{{Rational(1), path(0, std::vector<std::size_t>(n, 0))}}};
    loop.cutoff = n;
    Algebra a = from_quiver(loop);
    CHECK(a.dim() == n);
    // The loop acting on the regular module of nakayama(n) is an exact isomorphism.
    Algebra nak = nakayama(n);
    if (n == 1) continue;
    Module m = Module::from_generator_action(nak, n, {a.left_regular(a.generators()[0])});
    auto v = iso_test(regular_module(nak), m, 1, 20);
    CHECK(v.isomorphic());
  }

  QuiverPresentation loop;
  loop.vertices = 1;
  loop.arrows = {{"x", 0, 0}};
  loop.relations = {{{Rational(1), path(0, {0, 0, 0})}}};
  loop.cutoff = 2;
  CHECK_THROWS_AS(from_quiver(loop), AlgebraError);  // relation longer than cutoff
  loop.relations = {{{Rational(1), path(0, {0})}, {Rational(1), path(1, {})}}};
  CHECK_THROWS_AS(from_quiver(loop), AlgebraError);  // unknown vertex
  CHECK_THROWS_WITH(from_quiver(QuiverPresentation{1, {{"x", 0, 0}}, {}, 4}),
                    doctest::Contains("not stabilized at cutoff L=4"));

  for (std::size_t n = 2; n <= 5; ++n) {
    QuiverPresentation q = second_quiver(n);
    std::vector<std::vector<std::size_t>> forbidden;
    for (const auto& r : q.relations) forbidden.push_back(r[0].path.arrows);
    Algebra a = from_quiver(q);
    CHECK(a.dim() == count_monomial_paths(4, q.arrows, forbidden));
    if (n == 3) {
      CHECK(primitive_idempotents(a).size() == 4);
      check_idempotents(a);
    }
  }
}

TEST_CASE("radical and idempotents") {
  CHECK(radical(k_times_k()).dim() == 0);
  auto kk = primitive_idempotents(k_times_k());
  CHECK(kk.size() == 2);
  check_idempotents(k_times_k());
  for (std::size_t n = 1; n <= 6; ++n) {
    Algebra a = nakayama(n);
    Subspace r = radical(a);
    CHECK(r.dim() == n - 1);
    for (std::size_t i = 1; i < n; ++i) CHECK(r.contains(unit_vector(i)));
    CHECK(primitive_idempotents(a) == std::vector<SparseVec>{a.unit()});
  }
  Algebra ls = liu_schulz(Rational(2));
  CHECK(radical(ls).dim() == 7);
  CHECK(radical_power_vanishes(ls, 4));
  CHECK(!radical_power_vanishes(ls, 3));
  CHECK(primitive_idempotents(ls).size() == 1);

  Algebra p = two_point_path_algebra();
  CHECK(radical(p).dim() == 1);
  CHECK(primitive_idempotents(p).size() == 2);
  check_idempotents(p);

  Algebra mixed = tensor_algebra(k_times_k(), two_point_path_algebra());
  CHECK(primitive_idempotents(mixed).size() == 4);
  check_idempotents(mixed);
  CHECK(radical_power_vanishes(mixed, 2));

  CHECK_THROWS_WITH(radical(Algebra::from_products(Field::prime(5), 1, {unit_vector(0)}, unit_vector(0))),
                    doctest::Contains("radical requires characteristic 0"));
  // Q[x]/(x^2 + 1) is a field that does not split over Q.
  Algebra gauss = Algebra::from_structure_constants(
      Q, 2, {{0, 0, 0, Rational(1)}, {0, 1, 1, Rational(1)}, {1, 0, 1, Rational(1)}, {1, 1, 0, Rational(-1)}},
      unit_vector(0));
  CHECK_THROWS_WITH(primitive_idempotents(gauss), doctest::Contains("non-split semisimple quotient"));
  // 2x2 matrices: split, semisimple, two primitive idempotents in one class.
  std::vector<StructureConstant> mat2;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t l = 0; l < 2; ++l) mat2.push_back({i * 2 + j, j * 2 + l, i * 2 + l, Rational(1)});
  Algebra m2 = Algebra::from_structure_constants(Q, 4, mat2, SparseVec{{0, Rational(1)}, {3, Rational(1)}});
  CHECK(radical(m2).dim() == 0);
  CHECK(primitive_idempotents(m2).size() == 2);
  CHECK(m2.structure().num_classes() == 1);
  CHECK(m2.structure().simple_dim == std::vector<std::size_t>{2});
  check_idempotents(m2);
}

TEST_CASE("self-injectivity") {
  for (std::size_t n = 1; n <= 5; ++n) CHECK(is_self_injective(nakayama(n)));
  CHECK(is_self_injective(liu_schulz(Rational(2))));
  CHECK(is_self_injective(group_algebra(2)));
  // Q C_3 has the non-split factor Q(w).
  CHECK_THROWS_AS(is_self_injective(group_algebra(3)), AlgebraError);
  CHECK(!is_self_injective(two_point_path_algebra()));
}

TEST_CASE("property: random tensor products of small algebras are consistent") {
  std::mt19937_64 rng(0xC0FFEE);
  std::vector<Algebra> pool{nakayama(2), nakayama(3), group_algebra(2), k_times_k(), two_point_path_algebra(),
                            liu_schulz(Rational(3))};
  for (int t = 0; t < 6; ++t) {
    const Algebra& a = pool[rng() % pool.size()];
    const Algebra& b = pool[rng() % 5];
    Algebra ab = tensor_algebra(a, b);
    CHECK(ab.dim() == a.dim() * b.dim());
    check_idempotents(ab);
    CHECK(radical_power_vanishes(ab, ab.dim()));
    CHECK(ab.structure().num_classes() == a.structure().num_classes() * b.structure().num_classes());
    // The structure derived from the factors agrees with a direct computation.
    std::vector<SparseVec> table;
    for (std::size_t i = 0; i < ab.dim(); ++i)
      for (std::size_t j = 0; j < ab.dim(); ++j) table.push_back(ab.product(i, j));
    Algebra direct = Algebra::from_products(Q, ab.dim(), table, ab.unit());
    CHECK(radical(direct) == radical(ab));
    CHECK(primitive_idempotents(direct).size() == primitive_idempotents(ab).size());
  }
}
