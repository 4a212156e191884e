#include "doctest.h"
#include "fdalg/homology.hpp"
#include "test_util.hpp"

using namespace fdalg;
using namespace fdalg::testing;

namespace {

// dim Ext^1(M, N) from 0 -> Hom(M,N) -> Hom(P_0,N) -> Hom(Omega M,N) -> Ext^1(M,N) -> 0,
// using only Hom dimensions.
std::size_t ext1_dim_oracle(const Module& m, const Module& n) {
  ProjectiveCover pc = projective_cover(m);
  Module om = syzygy(m);
  return hom_basis(om, n).dim() + hom_basis(m, n).dim() - hom_basis(pc.projective.module, n).dim();
}

}  // namespace

TEST_CASE("resolutions") {
  Algebra ls = liu_schulz(Rational(2));
  auto rp = resolve(regular_module(ls), 6);
  CHECK(rp->terminated);
  CHECK(rp->length() == 0);

  Algebra n2 = nakayama(2);
  auto rk = resolve(simple_module(n2, 0), 6);
  CHECK(!rk->terminated);
  CHECK(rk->terms.size() == 7);
  verify_resolution(*rk);
  for (std::size_t i = 0; i < rk->terms.size(); ++i) CHECK(rk->terms[i].module.dim() == 2);
  // The differentials are multiplication by x: rank one, square zero.
  for (std::size_t i = 1; i < rk->terms.size(); ++i) {
    CHECK(rank(rk->differentials[i]) == 1);
    CHECK((rk->differentials[i] * rk->differentials[i]).is_zero());
  }

  auto ri = resolve(liu_schulz_ideal(ls, Rational(2), 0), 6);
  verify_resolution(*ri);
  for (std::size_t i = 0; i <= 6; ++i) {
    CHECK(ri->terms[i].module.dim() == 8);
    CHECK(ri->syzygies[i].module.dim() == 4);
  }

  Algebra p = two_point_path_algebra();
  for (std::size_t t = 0; t < 2; ++t) {
    auto r = resolve(simple_module(p, t), 6);
    CHECK(r->terminated);
    CHECK(r->length() <= 1);
    verify_resolution(*r);
  }
}

TEST_CASE("Ext spaces") {
  Algebra ls = liu_schulz(Rational(2));
  Module i5 = liu_schulz_ideal(ls, Rational(2), 5);
  CHECK(ext(i5, i5, 1).dim() == 1);
  CHECK(ext(i5, i5, 1).dim() == ext1_dim_oracle(i5, i5));
  for (std::size_t i = 1; i <= 3; ++i) CHECK(ext(regular_module(ls), i5, i).dim() == 0);
  CHECK(ext(i5, i5, 0).dim() == hom_basis(i5, i5).dim());

  for (std::size_t n = 2; n <= 5; ++n) {
    Algebra a = nakayama(n);
    Module k = truncated_module(a, 1);
    CHECK(ext(k, k, 1).dim() == 1);
    for (std::size_t r = 1; r <= n; ++r)
      for (std::size_t s = 1; s <= n; ++s) {
        Module xr = truncated_module(a, r), xs = truncated_module(a, s);
        auto res = resolve(xr, 4);
        CHECK(ext(res, xs, 0).dim() == hom_basis(xr, xs).dim());
        std::size_t e1 = ext(res, xs, 1).dim();
        CHECK(e1 == ext1_dim_oracle(xr, xs));
        // Dimension shift: Ext^i(M, N) = Ext^1(Omega^{i-1} M, N).
        for (std::size_t i = 2; i <= 3; ++i) {
          if (i - 2 >= res->syzygies.size()) {
            CHECK(ext(res, xs, i).dim() == 0);
            continue;
          }
          Module om = res->syzygies[i - 2].module;
          CHECK(ext(res, xs, i).dim() == (om.dim() == 0 ? 0 : ext(om, xs, 1).dim()));
        }
      }
  }

  // Representatives are cocycles whose maps vanish on the image of the next differential.
  Algebra n3 = nakayama(3);
  Module x1 = truncated_module(n3, 1), x2 = truncated_module(n3, 2);
  ExtSpace e = ext(x1, x2, 2);
  for (std::size_t k = 0; k < e.dim(); ++k) {
    Mat f = e.as_map(e.rep(k));
    CHECK(is_homomorphism(f, e.res->terms[2].module, x2));
    CHECK((f * e.res->differentials[3]).is_zero());
    CHECK(e.coords(e.rep(k)) == unit_vector(k));
  }
}

TEST_CASE("Yoneda products") {
  for (std::size_t n = 2; n <= 5; ++n) {
    Algebra a = nakayama(n);
    Module k = simple_module(a, 0);
    auto r = resolve(k, 4);
    ExtSpace e1 = ext(r, k, 1), e2 = ext(r, k, 2), e0 = ext(r, k, 0);
    REQUIRE(e1.dim() == 1);
    REQUIRE(e2.dim() == 1);
    // Hand lift: f_0 = id, f_1 = multiplication by x^{n-2}; the product is
    // nonzero exactly when x^{n-2} is a unit.
    SparseVec prod = yoneda_product(e1, unit_vector(0), e1, unit_vector(0), e2);
    CHECK(prod.empty() == (n >= 3));
    // The identity class is a two-sided unit.
    SparseVec id = e0.coords(hom_to_cochain(*r, Mat::identity(Q, 1), k));
    CHECK(yoneda_product(e0, id, e1, unit_vector(0), e1) == unit_vector(0));
    CHECK(yoneda_product(e1, unit_vector(0), e0, id, e1) == unit_vector(0));
  }

  // Associativity and bilinearity on Ext^*(M, M) for M = A + X_1 over nakayama(3).
  Algebra a = nakayama(3);
  Module m = direct_sum({regular_module(a), truncated_module(a, 1), truncated_module(a, 2)});
  auto r = resolve(m, 4);
  std::vector<ExtSpace> e;
  for (std::size_t i = 0; i <= 3; ++i) e.push_back(ext(r, m, i));
  std::mt19937_64 rng(0xC0FFEE);
  auto rand_class = [&](const ExtSpace& s) {
    std::vector<Rational> c(s.dim());
    for (auto& x : c) x = Rational(static_cast<long long>(rng() % 5) - 2);
    return sparse_from_dense(Q, c);
  };
  for (int t = 0; t < 12; ++t) {
    std::size_t i = rng() % 2, j = rng() % 2, l = rng() % 2;
    SparseVec f = rand_class(e[i]), g = rand_class(e[j]), h = rand_class(e[l]);
    SparseVec fg = yoneda_product(e[i], f, e[j], g, e[i + j]);
    SparseVec gh = yoneda_product(e[j], g, e[l], h, e[j + l]);
    CHECK(yoneda_product(e[i + j], fg, e[l], h, e[i + j + l]) == yoneda_product(e[i], f, e[j + l], gh, e[i + j + l]));
    SparseVec f2 = rand_class(e[i]);
    SparseVec lhs = yoneda_product(e[i], sparse_axpy(Q, f, Rational(3), f2), e[j], g, e[i + j]);
    SparseVec rhs = sparse_axpy(Q, fg, Rational(3), yoneda_product(e[i], f2, e[j], g, e[i + j]));
    CHECK(lhs == rhs);
  }
  // Lift independence: perturbing the cocycle by a coboundary leaves the product unchanged.
  for (std::size_t k = 0; k < e[1].dim() && e[1].coboundaries.dim() > 0; ++k) {
    SparseVec c = sparse_axpy(Q, e[1].rep(k), Rational(1), e[1].coboundaries.basis()[0]);
    ChainLift lift = lift_cochain(*e[2].res, 1, e[1].as_map(c), *e[1].res, 1);
    for (std::size_t q = 0; q < e[1].dim(); ++q)
      CHECK(yoneda_from_lift(lift, e[1], unit_vector(q), e[2]) ==
            yoneda_product(e[1], unit_vector(k), e[1], unit_vector(q), e[2]));
  }
}

TEST_CASE("dimension probes") {
  auto g0 = global_dimension_probe(k_times_k(), 6);
  CHECK(g0.kind == GlobalDimensionReport::Kind::Exact);
  CHECK(g0.value == 0);
  auto gp = global_dimension_probe(two_point_path_algebra(), 6);
  CHECK(gp.kind == GlobalDimensionReport::Kind::Exact);
  CHECK(gp.value == 1);
  for (std::size_t n = 2; n <= 4; ++n) {
    auto g = global_dimension_probe(nakayama(n), 6);
    CHECK(g.kind == GlobalDimensionReport::Kind::Infinite);
    // Omega(k) = X_{n-1}, which is k again when n = 2.
    CHECK(g.witness == (n == 2 ? "Omega^1(S_0) ~ Omega^0(S_0)" : "Omega^2(S_0) ~ Omega^0(S_0)"));
  }
  auto gls = global_dimension_probe(liu_schulz(Rational(2)), 3);
  CHECK(gls.kind != GlobalDimensionReport::Kind::Exact);

  CHECK(dominant_dimension(nakayama(3), 3).at_least);
  CHECK(dominant_dimension(liu_schulz(Rational(2)), 3).str() == ">= 3");
  auto dp = dominant_dimension(two_point_path_algebra(), 3);
  CHECK(!dp.at_least);
  CHECK(dp.value == 1);
}

TEST_CASE("Ext vanishing conditions") {
  Algebra n2 = nakayama(2);
  Module k = simple_module(n2, 0);
  auto bad = ext_vanishing_check(k, k, {1});
  CHECK(!bad[0].holds());
  auto proj = ext_vanishing_check(k, regular_module(n2), {1, 2});
  for (const auto& c : proj) CHECK(c.holds());
}
