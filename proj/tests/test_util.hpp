#pragma once

#include <random>

#include "fdalg/module.hpp"

namespace fdalg::testing {

inline const Field Q = Field::rationals();

inline Mat random_invertible(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-2, 2);
  for (;;) {
    std::vector<std::vector<long long>> rows(n, std::vector<long long>(n));
    for (auto& r : rows)
      for (auto& x : r) x = d(rng);
    Mat m = Mat::from_ints(Q, rows);
    if (rank(m) == n) return m;
  }
}

// Transport of a module structure along a change of basis t.
inline Module conjugate(const Module& m, const Mat& t) {
  Mat ti = *inverse(t);
  std::vector<Mat> act;
  for (const auto& x : m.actions()) act.push_back(t * x * ti);
  return Module::from_action(m.algebra(), m.dim(), std::move(act));
}

// Paths of the path algebra written as arrow lists; vertex is the source.
inline Path path(std::size_t v, std::vector<std::size_t> arrows = {}) { return Path{v, std::move(arrows)}; }

inline Algebra two_point_path_algebra() {
  QuiverPresentation q;
  q.vertices = 2;
  q.arrows = {{"a", 0, 1}};
  q.cutoff = 2;
  return from_quiver(q);
}

inline Algebra k_times_k() {
  return Algebra::from_structure_constants(Q, 2, {{0, 0, 0, Rational(1)}, {1, 1, 1, Rational(1)}},
                                           SparseVec{{0, Rational(1)}, {1, Rational(1)}});
}

}  // namespace fdalg::testing
