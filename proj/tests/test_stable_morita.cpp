#include "doctest.h"
#include "fdalg/stable_morita.hpp"
#include "test_util.hpp"

using namespace fdalg;
using namespace fdalg::testing;

namespace {

// Sum of Ext dimensions over the blocks of G^Phi(X, Y), from direct Ext calls.
std::size_t green_pair_dim(const Module& x, const Module& y, const std::vector<std::size_t>& phi) {
  std::size_t total = 0;
  for (auto i : phi)
    for (auto j : phi)
      if (j >= i && std::find(phi.begin(), phi.end(), j - i) != phi.end()) total += ext(x, y, j - i).dim();
  return total;
}

Module a_plus(const Algebra& a, const Module& x) { return direct_sum({regular_module(a), x}); }

// x + A^k for a local algebra a.
Module plus_free(const Module& x, std::size_t k) {
  std::vector<Module> parts{x};
  for (std::size_t i = 0; i < k; ++i) parts.push_back(regular_module(x.algebra()));
  return direct_sum(parts);
}

bool is_algebra_map(const Mat& f, const Algebra& s, const Algebra& t) {
  if (f.apply(s.unit()) != t.unit()) return false;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j)
      if (f.apply(s.product(i, j)) != t.mul(f.column(i), f.column(j))) return false;
  return true;
}

// A (x)_k A with the outer actions.
Bimodule free_bimodule(const Algebra& a) {
  std::vector<Mat> l, r;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    l.push_back(kron(a.left_regular(i), Mat::identity(Q, a.dim())));
    r.push_back(kron(Mat::identity(Q, a.dim()), a.right_regular(i)));
  }
  return Bimodule::from_actions(a, a, a.dim() * a.dim(), l, r);
}

}  // namespace

TEST_CASE("Ext-tensor dimension identity") {
  auto check = [](const Module& x, const Bimodule& y, const Bimodule& p) {
    REQUIRE(is_projective(p.left_module()));
    Module yp = tensor_over(y, p).left_module();
    for (std::size_t i = 0; i <= 2; ++i) {
      ExtSpace e = ext(x, y.left_module(), i);
      std::size_t rhs = tensor_space(ext_right_module(e, y), p.left_module()).dim();
      CHECK(ext(x, yp, i).dim() == rhs);
    }
  };
  Algebra a = nakayama(3);
  Bimodule om = bimodule_syzygy_generator(a), reg = Bimodule::regular(a), fr = free_bimodule(a);
  for (const Module& x : {simple_module(a, 0), truncated_module(a, 2), regular_module(a)})
    for (const Bimodule& y : {reg, om})
      for (const Bimodule& p : {reg, om, fr}) check(x, y, p);

  Algebra b = two_point_path_algebra();
  for (std::size_t t = 0; t < 2; ++t) check(simple_module(b, t), Bimodule::regular(b), free_bimodule(b));

  // The right action on Ext is the one induced by the target.
  ExtSpace e = ext(simple_module(a, 0), a_plus(a, simple_module(a, 0)), 0);
  Module er = ext_right_module(ext(simple_module(a, 0), reg.left_module(), 0), reg);
  CHECK(er.dim() == 1);
  CHECK(er.act(1).is_zero());
  CHECK_THROWS_AS(ext_right_module(e, reg), HomologyError);
}

TEST_CASE("identity certificates") {
  for (const Algebra& a : {nakayama(3), liu_schulz(Rational(2)), two_point_path_algebra()}) {
    Bimodule r = Bimodule::regular(a);
    Certificate c = check_certificate(a, a, r, r);
    REQUIRE(c.valid());
    CHECK(c.mn->complement.dim() == 0);
    CHECK(c.nm->complement.dim() == 0);
    CHECK(recheck(c));
  }
}

TEST_CASE("bimodule syzygy of A") {
  Algebra n2 = nakayama(2), n3 = nakayama(3);
  Bimodule o2 = bimodule_syzygy_generator(n2), o3 = bimodule_syzygy_generator(n3);
  CHECK(o2.dim() == 2);
  CHECK(o3.dim() == 6);
  CHECK_THROWS_AS(bimodule_syzygy_generator(two_point_path_algebra()), StableMoritaError);
  for (const auto& [a, o] : {std::pair{n2, o2}, std::pair{n3, o3}}) {
    Certificate c = check_certificate(a, a, o, o);
    REQUIRE(c.valid());
    CHECK(recheck(c));
    // Omega (x) Omega = Omega^2_{A^e}(A) + projective, and Omega^2(A) = A for k[x]/(x^n).
    CHECK(c.mn->complement.dim() == o.dim() * o.dim() / a.dim() - a.dim());
  }
  // The syzygy of the identity bimodule is projective on each side but not as a bimodule.
  CHECK(is_projective(o3.left_module()));
  CHECK(is_projective(o3.right_module()));
  CHECK(!is_bimodule_projective(o3));
}

TEST_CASE("negative certificates") {
  Algebra a = nakayama(3);
  Bimodule r = Bimodule::regular(a);
  // A + A/rad A: the top is not projective on either side.
  Subspace rad = radical(a);
  QuotientResult q = quotient_module(r.left_module(), rad);
  QuotientResult qr = quotient_module(r.right_module(), rad);
  Bimodule top = Bimodule::from_actions(a, a, q.module.dim(), q.module.actions(), qr.module.actions());
  Bimodule bad = bimodule_direct_sum({r, top});
  Certificate c1 = check_certificate(a, a, bad, bad);
  CHECK(c1.status == Certificate::Status::Invalid);
  CHECK(c1.failure == "M is not projective as a left module");
  CHECK(!recheck(c1));
  // A + A is projective on both sides, but (A + A) (x) (A + A) = A^4 leaves A^3, not a projective bimodule.
  Bimodule two = bimodule_direct_sum({r, r});
  Certificate c2 = check_certificate(a, a, two, two);
  CHECK(c2.status == Certificate::Status::Invalid);
  CHECK(c2.failure == "complement in M (x) N is not a projective bimodule");
}

TEST_CASE("transport") {
  Algebra a = nakayama(3);
  Bimodule r = Bimodule::regular(a);
  Bimodule om = bimodule_syzygy_generator(a);
  std::uint64_t seed = 0xC0FFEE;
  for (std::size_t k = 1; k <= 3; ++k) {
    Module x = truncated_module(a, k);
    CHECK(iso_test(transport(r, x), x, seed, 30).isomorphic());
    // N (x) X_r is the kernel of A^r = A (x) X_r -> X_r, that is Omega(X_r) + A^{r-1}.
    Module t = transport(om, x);
    CHECK(t.dim() == 3 * k - k);
    Module expect = k < 3 ? plus_free(truncated_module(a, 3 - k), k - 1) : plus_free(regular_module(a), k - 2);
    CHECK(iso_test(t, expect, seed, 30).isomorphic());
    // Omega (x) Omega (x) X = X + projective.
    Module tt = transport(om, t);
    CHECK(iso_test(tt, plus_free(x, (tt.dim() - x.dim()) / 3), seed, 30).isomorphic());
  }
  Module x1 = truncated_module(a, 1), x2 = truncated_module(a, 2);
  CHECK(iso_test(transport(om, direct_sum({x1, x2})), direct_sum({transport(om, x1), transport(om, x2)}), seed, 30)
            .isomorphic());
  // Functoriality on maps.
  HomBasis h12 = hom_basis(x1, x2), h22 = hom_basis(x2, x2);
  for (const auto& f : h12.basis)
    for (const auto& g : h22.basis) {
      Mat tf = transport_map(om, x1, x2, f), tg = transport_map(om, x2, x2, g);
      CHECK(transport_map(om, x1, x2, g * f) == tg * tf);
      CHECK(is_homomorphism(tf, transport(om, x1), transport(om, x2)));
    }
  CHECK(transport_map(om, x2, x2, Mat::identity(Q, 2)).is_identity());
}

TEST_CASE("functor on Ext") {
  Algebra a = nakayama(3);
  Bimodule om = bimodule_syzygy_generator(a);
  Module x = a_plus(a, truncated_module(a, 1));
  Module y = transport(om, x);
  auto rx = resolve(x, 3), ry = resolve(y, 3);
  for (std::size_t d = 1; d <= 2; ++d) {
    ExtSpace src = ext(rx, x, d), dst = ext(ry, y, d);
    Mat f = ext_functor(om, src, dst);
    // A stable equivalence induces isomorphisms on Ext in positive degrees.
    CHECK(src.dim() == dst.dim());
    CHECK(rank(f) == src.dim());
  }
  // On the identity bimodule the functor is an isomorphism in every degree.
  Bimodule r = Bimodule::regular(a);
  Module ry2 = transport(r, x);
  auto rr = resolve(ry2, 2);
  for (std::size_t d = 0; d <= 1; ++d) {
    Mat f = ext_functor(r, ext(rx, x, d), ext(rr, ry2, d));
    CHECK(f.rows() == f.cols());
    CHECK(rank(f) == f.cols());
  }
}

TEST_CASE("generators") {
  Algebra a = nakayama(3);
  CHECK(is_generator(a_plus(a, truncated_module(a, 1))).generator);
  auto g = is_generator(truncated_module(a, 2));
  CHECK(!g.generator);
  CHECK(g.missing_class == std::size_t{0});
  Algebra p = two_point_path_algebra();
  CHECK(!is_generator(simple_module(p, 0)).generator);
  CHECK(is_generator(regular_module(p)).generator);
  Algebra ls = liu_schulz(Rational(2));
  Module x = direct_sum({regular_module(ls), liu_schulz_ideal(ls, Rational(2), 0), liu_schulz_ideal(ls, Rational(2), 5)});
  auto gx = is_generator(x);
  REQUIRE(gx.generator);
  for (std::size_t t = 0; t < gx.splittings.size(); ++t)
    CHECK((gx.splittings[t].second * gx.splittings[t].first).is_identity());
  Certificate c = check_certificate(a, a, Bimodule::regular(a), Bimodule::regular(a));
  CHECK_THROWS_AS(theorem1_bimodules(c, truncated_module(a, 1), {0, 1}), StableMoritaError);
}

TEST_CASE("U and V in the identity case") {
  Algebra a = nakayama(3);
  Bimodule r = Bimodule::regular(a);
  Certificate c = check_certificate(a, a, r, r);
  Module x = a_plus(a, truncated_module(a, 2));
  Theorem1Data d = theorem1_bimodules(c, x, {0});
  std::size_t e = hom_basis(x, x).dim();
  CHECK(d.lambda.algebra.dim() == e);
  CHECK(d.gamma.algebra.dim() == e);
  CHECK(d.u.dim() == e);
  CHECK(d.v.dim() == e);
  CHECK(is_algebra_map(d.f_map, d.lambda.algebra, d.gamma.algebra));
  CHECK(rank(d.f_map) == e);
  Certificate t = verify_theorem1(d);
  REQUIRE(t.valid());
  CHECK(t.mn->complement.dim() == 0);
  CHECK(t.nm->complement.dim() == 0);
  CHECK(recheck(t));
}

TEST_CASE("U and V bimodules for the syzygy of A") {
  for (std::size_t n = 2; n <= 3; ++n) {
    Algebra a = nakayama(n);
    Bimodule om = bimodule_syzygy_generator(a);
    Certificate c = check_certificate(a, a, om, om);
    REQUIRE(c.valid());
    Module x = a_plus(a, truncated_module(a, 1));
    for (const auto& phi : std::vector<std::vector<std::size_t>>{{0}, {0, 1}}) {
      Theorem1Data d = theorem1_bimodules(c, x, phi);
      if (phi.size() == 2) CHECK(d.lambda.algebra.dim() == 2 * n + 7);
      CHECK(d.gamma.algebra.dim() == green_pair_dim(d.y, d.y, phi));
      CHECK(d.u.dim() == green_pair_dim(x, d.mny, phi));
      CHECK(d.v.dim() == d.gamma.algebra.dim());
      CHECK(is_algebra_map(d.f_map, d.lambda.algebra, d.gamma.algebra));
      Certificate t = verify_theorem1(d);
      REQUIRE(t.valid());
      CHECK(recheck(t));
      CHECK(t.mn->tensor.dim() == d.lambda.algebra.dim() + t.mn->complement.dim());
      CHECK(t.nm->tensor.dim() == d.gamma.algebra.dim() + t.nm->complement.dim());

      // Through the Morita leg G(N (x) X) ~ G(A + Omega(X_1)).
      Module z = a_plus(a, syzygy(truncated_module(a, 1)));
      GreenAlgebra gz = green_algebra(z, phi);
      Certificate mc = green_morita_certificate(d.gamma, gz);
      REQUIRE(mc.valid());
      CHECK(mc.mn->complement.dim() == 0);
      CHECK(mc.nm->complement.dim() == 0);
      Certificate total = compose(t, mc);
      REQUIRE(total.valid());
      CHECK(recheck(total));
      CHECK(total.b.dim() == green_pair_dim(z, z, phi));
    }
  }
}

TEST_CASE("syzygy orbits") {
  Algebra a = nakayama(3);
  auto p = orbit_fingerprint(regular_module(a), 3);
  for (std::size_t i = 1; i <= 3; ++i) CHECK(p.syzygies[i].dim() == 0);

  auto o = orbit_fingerprint(truncated_module(a, 1), 4);
  REQUIRE(o.syzygies.size() == 5);
  CHECK(o.verdicts[0][1].isomorphic());  // Omega^2 vs Omega^0
  CHECK(o.verdicts[1][1].isomorphic());  // Omega^3 vs Omega^1
  CHECK(o.verdicts[0][0].kind == IsoVerdict::Kind::NotIsomorphic);
  CHECK(is_homomorphism(o.verdicts[0][1].forward, o.syzygies[0], o.syzygies[2]));

  Algebra ls = liu_schulz(Rational(2));
  auto f = orbit_fingerprint(liu_schulz_ideal(ls, Rational(2), 0), 8);
  for (std::size_t i = 0; i <= 8; ++i) {
    CHECK(f.syzygies[i].dim() == 4);
    CHECK(iso_test(f.syzygies[i], liu_schulz_ideal(ls, Rational(2), static_cast<int>(i)), 0xC0FFEE, 30).isomorphic());
  }
  CHECK(f.certified_isos() == 0);
  CHECK(f.undecided() == 0);
}
