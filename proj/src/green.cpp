#include "fdalg/green.hpp"

#include <algorithm>
#include <set>

namespace fdalg {

Admissibility is_admissible(std::vector<std::size_t> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  Admissibility r;
  if (s.empty() || s[0] != 0) {
    r.reason = "0 is not in the set";
    return r;
  }
  std::set<std::size_t> in(s.begin(), s.end());
  for (auto p : s)
    for (auto q : s)
      for (auto t : s)
        if (in.count(p + q + t) && in.count(p + q) != in.count(q + t)) {
          r.witness = std::array<std::size_t, 3>{p, q, t};
          r.reason = "p+q+r = " + std::to_string(p + q + t) + " is in the set but exactly one of p+q = " +
                     std::to_string(p + q) + ", q+r = " + std::to_string(q + t) + " is";
          return r;
        }
  r.admissible = true;
  return r;
}

std::vector<std::size_t> admissible_set(std::vector<std::size_t> s) {
  auto a = is_admissible(s);
  if (!a.admissible) throw GreenError("set is not admissible: " + a.reason);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::size_t GreenSpace::block_dim(std::size_t i, std::size_t j) const {
  if (!has_block(i, j)) return 0;
  return ext.at(j - i).dim();
}

std::string GreenSpace::label(std::size_t b) const {
  const auto& g = basis.at(b);
  return "[" + std::to_string(g.i) + "," + std::to_string(g.j) + "]" + std::to_string(g.k);
}

GreenSpace green_space(const Module& x, const Module& y, const std::vector<std::size_t>& phi0,
                       std::shared_ptr<const Resolution> res_x) {
  std::vector<std::size_t> phi = phi0;
  std::sort(phi.begin(), phi.end());
  phi.erase(std::unique(phi.begin(), phi.end()), phi.end());
  if (phi.empty() || phi[0] != 0) throw GreenError("the index set must contain 0");
  GreenSpace g;
  g.phi = phi;
  g.x = x;
  g.y = y;
  g.res_x = deepen(res_x, phi.back() + 1);
  std::set<std::size_t> in(phi.begin(), phi.end());
  for (auto d : phi) g.ext.emplace(d, ext(g.res_x, y, d));
  for (auto i : phi)
    for (auto j : phi) {
      if (j < i || !in.count(j - i)) continue;
      g.block_offset[{i, j}] = g.basis.size();
      for (std::size_t k = 0; k < g.ext.at(j - i).dim(); ++k) g.basis.push_back({i, j, k});
    }
  return g;
}

std::vector<std::vector<SparseVec>> green_products(const GreenSpace& l, const GreenSpace& r, const GreenSpace& o) {
  std::vector<std::vector<SparseVec>> out(l.dim(), std::vector<SparseVec>(r.dim()));
  for (std::size_t a = 0; a < l.dim(); ++a) {
    const GreenIndex& ga = l.basis[a];
    std::size_t d1 = ga.j - ga.i;
    std::size_t depth = 0;
    bool any = false;
    for (const auto& gb : r.basis)
      if (gb.i == ga.j && o.has_block(ga.i, gb.j)) {
        depth = std::max(depth, gb.j - gb.i);
        any = true;
      }
    if (!any) continue;
    const ExtSpace& e1 = l.ext.at(d1);
    ChainLift lift = lift_cochain(*o.res_x, d1, e1.as_map(e1.rep(ga.k)), *r.res_x, depth);
    for (std::size_t b = 0; b < r.dim(); ++b) {
      const GreenIndex& gb = r.basis[b];
      if (gb.i != ga.j || !o.has_block(ga.i, gb.j)) continue;
      std::size_t d2 = gb.j - gb.i;
      SparseVec c = yoneda_from_lift(lift, r.ext.at(d2), unit_vector(gb.k), o.ext.at(d1 + d2));
      out[a][b] = sparse_shift(c, o.index(ga.i, gb.j, 0));
    }
  }
  return out;
}

SparseVec GreenAlgebra::diagonal_idempotent(std::size_t i) const {
  return sparse_shift(identity_class, space.index(i, i, 0));
}

namespace {

struct Table {
  std::vector<SparseVec> table;
  SparseVec unit;
  SparseVec identity_class;
  std::vector<std::string> labels;
};

Table green_table(const GreenSpace& s) {
  auto prod = green_products(s, s, s);
  Table t;
  std::size_t n = s.dim();
  t.table.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t.table.push_back(std::move(prod[a][b]));
  const ExtSpace& e0 = s.ext.at(0);
  t.identity_class = e0.coords(hom_to_cochain(*s.res_x, Mat::identity(s.x.field(), s.x.dim()), s.x));
  for (auto i : s.phi) t.unit = sparse_axpy(s.x.field(), t.unit, Rational(1), sparse_shift(t.identity_class, s.index(i, i, 0)));
  for (std::size_t b = 0; b < n; ++b) t.labels.push_back(s.label(b));
  return t;
}

}  // namespace

GreenAlgebra green_algebra(const Module& x, const std::vector<std::size_t>& phi0) {
  std::vector<std::size_t> phi = admissible_set(phi0);
  GreenAlgebra g;
  g.space = green_space(x, x, phi, resolve(x, phi.back() + 1));
  if (g.space.dim() == 0) throw GreenError("green algebra of the zero module");
  Table t = green_table(g.space);
  g.identity_class = t.identity_class;
  g.algebra = Algebra::from_products(x.field(), g.space.dim(), std::move(t.table), t.unit, std::move(t.labels), true);
  return g;
}

AssociativityReport associativity_probe(const Module& x, const std::vector<std::size_t>& phi) {
  std::size_t top = *std::max_element(phi.begin(), phi.end());
  GreenSpace s = green_space(x, x, phi, resolve(x, top + 1));
  Table t = green_table(s);
  std::size_t n = s.dim();
  Field f = x.field();
  AssociativityReport rep;
  rep.dim = n;
  auto mul = [&](const SparseVec& u, const SparseVec& v) {
    SparseVec r;
    for (const auto& p : u)
      for (const auto& q : v) r = sparse_axpy(f, r, f.mul(p.val, q.val), t.table[p.idx * n + q.idx]);
    return r;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const SparseVec& ab = t.table[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        if (mul(ab, unit_vector(c)) != mul(unit_vector(a), t.table[b * n + c])) {
          rep.associative = false;
          rep.triple = {a, b, c};
          rep.description = "(" + s.label(a) + " " + s.label(b) + ") " + s.label(c) + " != " + s.label(a) + " (" +
                            s.label(b) + " " + s.label(c) + ")";
          return rep;
        }
      }
    }
  return rep;
}

GreenBimodule green_bimodule(const GreenAlgebra& gx, const GreenAlgebra& gy) {
  if (gx.space.phi != gy.space.phi) throw GreenError("green_bimodule: index sets differ");
  GreenBimodule gb;
  gb.left = gx;
  gb.right = gy;
  gb.space = green_space(gx.space.x, gy.space.x, gx.space.phi, gx.space.res_x);
  auto lp = green_products(gx.space, gb.space, gb.space);
  auto rp = green_products(gb.space, gy.space, gb.space);
  Field f = gx.space.x.field();
  std::size_t n = gb.space.dim();
  std::vector<Mat> la, ra;
  for (std::size_t a = 0; a < gx.space.dim(); ++a) la.push_back(Mat::from_columns(f, n, lp[a]));
  for (std::size_t h = 0; h < gy.space.dim(); ++h) {
    std::vector<SparseVec> cols;
    for (std::size_t b = 0; b < n; ++b) cols.push_back(rp[b][h]);
    ra.push_back(Mat::from_columns(f, n, cols));
  }
  gb.bimodule = Bimodule::from_actions(gx.algebra, gy.algebra, n, std::move(la), std::move(ra), true);
  return gb;
}

GreenBimodule green_bimodule(const Module& x, const Module& y, const std::vector<std::size_t>& phi) {
  return green_bimodule(green_algebra(x, phi), green_algebra(y, phi));
}

bool radical_shape_check(const GreenAlgebra& g) {
  const GreenSpace& s = g.space;
  Field f = s.x.field();
  std::size_t e0 = s.block_dim(0, 0);
  std::size_t off = s.index(0, 0, 0);
  std::vector<SparseVec> table;
  for (std::size_t a = 0; a < e0; ++a)
    for (std::size_t b = 0; b < e0; ++b) {
      SparseVec v;
      for (const auto& e : g.algebra.product(off + a, off + b)) v.push_back({static_cast<std::uint32_t>(e.idx - off), e.val});
      table.push_back(std::move(v));
    }
  Algebra end = Algebra::from_products(f, e0, std::move(table), g.identity_class, {}, false);
  Subspace rad_end = radical(end);
  std::vector<SparseVec> expect;
  for (auto i : s.phi)
    for (const auto& r : rad_end.basis()) expect.push_back(sparse_shift(r, s.index(i, i, 0)));
  for (std::size_t b = 0; b < s.dim(); ++b)
    if (s.basis[b].i < s.basis[b].j) expect.push_back(unit_vector(b));
  return radical(g.algebra) == Subspace::span(f, s.dim(), expect);
}

}  // namespace fdalg
