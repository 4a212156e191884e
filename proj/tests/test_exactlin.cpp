#include <random>

#include "doctest.h"
#include "fdalg/exactlin.hpp"

using namespace fdalg;

namespace {

const Field Q = Field::rationals();

Mat random_mat(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<std::vector<long long>> rows(r, std::vector<long long>(c));
  for (auto& row : rows)
    for (auto& x : row) x = d(rng);
  if (r == 0) return Mat(Q, 0, c);
  return Mat::from_ints(Q, rows);
}

// Plain dense determinant by cofactor expansion; independent of the elimination code.
Rational det_cofactor(const std::vector<std::vector<Rational>>& m) {
  std::size_t n = m.size();
  if (n == 0) return Rational(1);
  if (n == 1) return m[0][0];
  Rational s;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Rational>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    Rational t = m[0][j] * det_cofactor(minor);
    s = (j % 2 == 0) ? s + t : s - t;
  }
  return s;
}

}  // namespace

TEST_CASE("rational arithmetic stays canonical across the big/small boundary") {
  Rational a(1, 3), b(1, 6);
  CHECK((a + b) == Rational(1, 2));
  CHECK((a * b) == Rational(1, 18));
  CHECK((a - a).is_zero());
  Rational big(1);
  for (int i = 0; i < 5; ++i) big = big * Rational(1LL << 40);
  CHECK(!big.is_small());
  Rational back = big;
  for (int i = 0; i < 5; ++i) back = back / Rational(1LL << 40);
  CHECK(back.is_small());
  CHECK(back == Rational(1));
  CHECK(Rational::parse("-6/4") == Rational(-3, 2));
  CHECK(Rational::parse("123456789012345678901234567890/3").str() == "41152263004115226300411522630");
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("x"));
}

TEST_CASE("prime field reduction") {
  Field f = Field::prime(7);
  CHECK(f.reduce(Rational(-1)) == Rational(6));
  CHECK(f.reduce(Rational(1, 3)) == Rational(5));
  CHECK(f.mul(Rational(3), f.inv(Rational(3))) == Rational(1));
  CHECK_THROWS(Field::prime(9));
  CHECK_THROWS(f.reduce(Rational(1, 7)));
}

TEST_CASE("rref examples") {
  auto r = rref(Mat::identity(Q, 2));
  CHECK(r.reduced == Mat::identity(Q, 2));
  CHECK(r.pivots == std::vector<std::size_t>{0, 1});

  auto dep = rref(Mat::from_ints(Q, {{1, 2}, {2, 4}}));
  CHECK(dep.rank() == 1);
  CHECK(dep.pivots == std::vector<std::size_t>{0});

  // Over F_2: rows (1,1), (1,2)=(1,0); subtracting gives (0,1), so rank 2.
  Field f2 = Field::prime(2);
  CHECK(rank(Mat::from_ints(f2, {{1, 1}, {1, 2}})) == 2);
  CHECK(rank(Mat::from_ints(f2, {{1, 1}, {1, 3}})) == 1);
}

TEST_CASE("mixed fields are rejected") {
  Mat a = Mat::identity(Q, 2);
  Mat b = Mat::identity(Field::prime(5), 2);
  CHECK_THROWS_AS(a * b, FieldMismatch);
  CHECK_THROWS_AS(kron(a, b), FieldMismatch);
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(Mat::identity(Q, 3)).cols() == 0);
  Mat z(Q, 3, 3);
  Mat kz = kernel_basis(z);
  CHECK(kz.cols() == 3);
  CHECK(rank(kz) == 3);
  Mat m = Mat::from_ints(Q, {{1, 2, 3}});
  Mat k = kernel_basis(m);
  CHECK(k.cols() == 2);
  CHECK((m * k).is_zero());
}

TEST_CASE("solve examples") {
  Mat b = Mat::from_ints(Q, {{4}, {-2}, {7}});
  auto x = solve(Mat::identity(Q, 3), b);
  REQUIRE(x);
  CHECK(*x == b);
  Mat m = Mat::from_ints(Q, {{1, 2}, {2, 4}});
  CHECK(!solve(m, Mat::from_ints(Q, {{1}, {3}})));
  auto y = solve(m, Mat::from_ints(Q, {{1}, {2}}));
  REQUIRE(y);
  CHECK((y->at(0, 0) + Rational(2) * y->at(1, 0)) == Rational(1));
}

TEST_CASE("kron examples") {
  CHECK(kron(Mat::identity(Q, 2), Mat::identity(Q, 3)) == Mat::identity(Q, 6));
  Mat m = Mat::from_ints(Q, {{1, -2, 0}, {3, 5, 7}});
  CHECK(kron(Mat::from_ints(Q, {{2}}), m) == m.scaled(Rational(2)));
  Mat n = Mat::from_ints(Q, {{0, 1}, {0, 0}});
  Mat k = kron(n, n);
  CHECK(k.rows() == 4);
  CHECK(k.nnz() == 1);
  CHECK(k.at(0, 3) == Rational(1));
}

TEST_CASE("property: rank-nullity, row space, mixed product, inverse") {
  std::mt19937_64 rng(0xC0FFEE);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
    Mat m = random_mat(rng, r, c, -2, 2);
    auto rr = rref(m);
    Mat k = kernel_basis(m);
    CHECK(k.cols() == c - rr.rank());
    CHECK((m * k).is_zero());
    // Row spaces agree: each side's rows solve against the other's.
    Mat rt = rr.reduced.select_rows([&] {
      std::vector<std::size_t> idx(rr.rank());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      return idx;
    }());
    if (rr.rank() > 0) {
      CHECK(solve(rt.transpose(), m.transpose()));
      CHECK(solve(m.transpose(), rt.transpose()));
    }
    // Pivot entries are 1 and pivot columns are unit vectors.
    for (std::size_t i = 0; i < rr.rank(); ++i) {
      CHECK(rr.reduced.at(i, rr.pivots[i]) == Rational(1));
      CHECK(rr.reduced.column(rr.pivots[i]).size() == 1);
    }
  }
  for (int t = 0; t < 40; ++t) {
    std::size_t p = 1 + rng() % 3, q = 1 + rng() % 3, s = 1 + rng() % 3, u = 1 + rng() % 3, v = 1 + rng() % 3,
                w = 1 + rng() % 3;
    Mat a = random_mat(rng, p, q), c = random_mat(rng, q, s);
    Mat b = random_mat(rng, u, v), d = random_mat(rng, v, w);
    CHECK(kron(a, b) * kron(c, d) == kron(a * c, b * d));
  }
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 1 + rng() % 4;
    Mat a = random_mat(rng, n, n);
    Rational det = det_cofactor(a.to_dense());
    auto inv = inverse(a);
    CHECK(inv.has_value() == !det.is_zero());
    if (inv) {
      CHECK((a * *inv).is_identity());
      CHECK((*inv * a).is_identity());
    }
    CHECK((rank(a) == n) == !det.is_zero());
  }
}

TEST_CASE("subspace operations") {
  std::vector<SparseVec> v{{{0, 1}, {1, 1}}, {{1, 1}, {2, 1}}};
  Subspace s = Subspace::span(Q, 3, v);
  CHECK(s.dim() == 2);
  CHECK(s.contains(SparseVec{{0, 1}, {2, -1}}));
  CHECK(!s.contains(unit_vector(0)));
  Subspace t = Subspace::span(Q, 3, {unit_vector(0), unit_vector(2)});
  CHECK(s.intersect(t).dim() == 1);
  CHECK(s.sum(t) == Subspace::whole(Q, 3));
  CHECK(s.complement_positions().size() == 1);
  auto c = s.coords(SparseVec{{0, 2}, {1, 5}, {2, 3}});
  Mat bm = s.basis_matrix();
  CHECK(bm.apply(sparse_from_dense(Q, c)) == SparseVec{{0, 2}, {1, 5}, {2, 3}});
  CHECK(modular_rank(Mat::from_ints(Q, {{1, 2}, {3, 4}}), 2) == std::optional<std::size_t>(1));
}
