#include "fdalg/graded.hpp"

namespace fdalg {

std::optional<std::size_t> Grading::combine(std::size_t a, std::size_t b) const {
  if (kind == Kind::Cyclic) return (a + b) % bound;
  if (a + b > bound) return std::nullopt;
  return a + b;
}

std::optional<std::size_t> Grading::block_degree(std::size_t row, std::size_t col) const {
  if (kind == Kind::Cyclic) return (row + bound - col) % bound;
  if (col < row) return std::nullopt;
  return col - row;
}

std::string Grading::str() const {
  return (kind == Kind::Truncated ? "truncated at " : "cyclic of order ") + std::to_string(bound);
}

namespace {

void check_homogeneous(const SparseVec& v, const std::vector<std::size_t>& degree, std::optional<std::size_t> expect,
                       const std::string& what) {
  for (const auto& e : v) {
    if (!expect) throw GradedError(what + ": product past the truncation is nonzero");
    if (degree[e.idx] != *expect)
      throw GradedError(what + ": component " + std::to_string(e.idx) + " has degree " + std::to_string(degree[e.idx]) +
                        ", expected " + std::to_string(*expect));
  }
}

void check_degrees(const Grading& g, const std::vector<std::size_t>& degree, std::size_t dim, const char* what) {
  if (g.kind == Grading::Kind::Cyclic && g.bound == 0) throw GradedError(std::string(what) + ": group order must be positive");
  if (degree.size() != dim) throw GradedError(std::string(what) + ": one degree per basis vector is required");
  for (auto d : degree)
    if (!g.admits(d)) throw GradedError(std::string(what) + ": degree " + std::to_string(d) + " is out of range");
}

std::size_t count_in(const std::vector<std::size_t>& degree, std::size_t d) {
  return static_cast<std::size_t>(std::count(degree.begin(), degree.end(), d));
}

}  // namespace

GradedAlgebra GradedAlgebra::make(const Algebra& a, Grading g, std::vector<std::size_t> degree) {
  check_degrees(g, degree, a.dim(), "graded algebra");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      check_homogeneous(a.product(i, j), degree, g.combine(degree[i], degree[j]),
                        "product e" + std::to_string(i) + " e" + std::to_string(j));
  check_homogeneous(a.unit(), degree, 0, "unit");
  return {a, g, std::move(degree)};
}

std::size_t GradedAlgebra::dim_in(std::size_t d) const { return count_in(degree, d); }

GradedAlgebra graded_nakayama(std::size_t n, std::size_t top) {
  if (top + 1 < n) throw GradedError("graded_nakayama: truncation below the top degree");
  std::vector<std::size_t> deg(n);
  for (std::size_t i = 0; i < n; ++i) deg[i] = i;
  return GradedAlgebra::make(nakayama(n), Grading::truncated(top), deg);
}

GradedAlgebra graded_group_algebra(std::size_t m) {
  std::vector<std::size_t> deg(m);
  for (std::size_t i = 0; i < m; ++i) deg[i] = i;
  return GradedAlgebra::make(group_algebra(m), Grading::cyclic(m), deg);
}

GradedAlgebra trivially_graded(const Algebra& a, Grading g) {
  return GradedAlgebra::make(a, g, std::vector<std::size_t>(a.dim(), 0));
}

GradedBimodule GradedBimodule::make(const Bimodule& m, const GradedAlgebra& left, const GradedAlgebra& right,
                                    std::vector<std::size_t> degree) {
  require_same_algebra(m.left_algebra(), left.algebra, "graded bimodule (left)");
  require_same_algebra(m.right_algebra(), right.algebra, "graded bimodule (right)");
  if (!(left.grading == right.grading)) throw GradedError("graded bimodule: left and right gradings differ");
  const Grading& g = left.grading;
  check_degrees(g, degree, m.dim(), "graded bimodule");
  for (std::size_t p = 0; p < m.dim(); ++p) {
    for (std::size_t a = 0; a < left.algebra.dim(); ++a)
      check_homogeneous(m.left_act(a).apply(unit_vector(p)), degree, g.combine(left.degree[a], degree[p]),
                        "left action e" + std::to_string(a) + " m" + std::to_string(p));
    for (std::size_t b = 0; b < right.algebra.dim(); ++b)
      check_homogeneous(m.right_act(b).apply(unit_vector(p)), degree, g.combine(degree[p], right.degree[b]),
                        "right action m" + std::to_string(p) + " e" + std::to_string(b));
  }
  return {m, left, right, std::move(degree)};
}

GradedBimodule GradedBimodule::regular(const GradedAlgebra& a) {
  return make(Bimodule::regular(a.algebra), a, a, a.degree);
}

GradedBimodule GradedBimodule::shifted(std::size_t s) const {
  const Grading& g = left.grading;
  std::vector<std::size_t> d = degree;
  for (auto& x : d) {
    if (g.kind == Grading::Kind::Cyclic) {
      x = (x + g.bound - s % g.bound) % g.bound;
    } else {
      if (x < s) throw GradedError("shift by " + std::to_string(s) + " leaves a negative degree");
      x -= s;
    }
  }
  return make(bimodule, left, right, std::move(d));
}

std::size_t GradedBimodule::dim_in(std::size_t d) const { return count_in(degree, d); }

std::vector<std::size_t> homogeneous_degrees(const std::vector<SparseVec>& vs, const std::vector<std::size_t>& degree) {
  std::vector<std::size_t> out;
  for (const auto& v : vs) {
    if (v.empty()) throw GradedError("zero vector has no degree");
    std::size_t d = degree[v.front().idx];
    for (const auto& e : v)
      if (degree[e.idx] != d) throw GradedError("basis vector is not homogeneous");
    out.push_back(d);
  }
  return out;
}

GradedBimodule graded_bimodule_syzygy(const GradedAlgebra& ga, std::size_t shift) {
  const Algebra& a = ga.algebra;
  const auto& st = a.structure();
  if (st.num_classes() != 1 || st.simple_dim[0] != 1) throw GradedError("graded_bimodule_syzygy: algebra is not local");
  Field f = a.field();
  std::size_t d = a.dim();
  Mat id = Mat::identity(f, d);
  std::vector<Mat> l, r;
  for (std::size_t i = 0; i < d; ++i) {
    l.push_back(kron(a.left_regular(i), id));
    r.push_back(kron(id, a.right_regular(i)));
  }
  Bimodule aa = Bimodule::from_actions(a, a, d * d, std::move(l), std::move(r), true);
  std::vector<std::size_t> deg(d * d);
  std::vector<SparseVec> mult_cols;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t c = ga.degree[i] + ga.degree[j];
      deg[i * d + j] = ga.grading.kind == Grading::Kind::Cyclic ? c % ga.grading.bound : c;
      mult_cols.push_back(a.product(i, j));
    }
  Mat mult = Mat::from_columns(f, d, mult_cols);
  // Kernel degree by degree, so the basis is homogeneous.
  EchelonBuilder eb(f, d * d);
  std::size_t top = *std::max_element(deg.begin(), deg.end());
  for (std::size_t k = 0; k <= top; ++k) {
    std::vector<std::size_t> pos;
    for (std::size_t p = 0; p < d * d; ++p)
      if (deg[p] == k) pos.push_back(p);
    if (pos.empty()) continue;
    Mat ker = kernel_basis(mult.select_cols(pos));
    for (const auto& v : ker.columns()) {
      SparseVec w;
      for (const auto& e : v) w.push_back({static_cast<std::uint32_t>(pos[e.idx]), e.val});
      eb.add(w);
    }
  }
  Subspace k = Subspace::from_builder(eb);
  Bimodule out;
  bimodule_submodule_space(aa, k, &out);
  std::vector<std::size_t> kd = homogeneous_degrees(k.basis(), deg);
  for (auto& x : kd) {
    if (ga.grading.kind == Grading::Kind::Cyclic) {
      x = (x + ga.grading.bound - shift % ga.grading.bound) % ga.grading.bound;
    } else {
      if (x < shift) throw GradedError("graded_bimodule_syzygy: shift leaves a negative degree");
      x -= shift;
    }
  }
  return GradedBimodule::make(out, ga, ga, std::move(kd));
}

GradedBimodule graded_tensor(const GradedBimodule& m, const GradedBimodule& n) {
  TensorSpace ts = tensor_space(m.bimodule.right_module(), n.bimodule.left_module());
  Bimodule t = tensor_over(m.bimodule, n.bimodule);
  const Grading& g = m.left.grading;
  std::vector<std::size_t> deg;
  for (auto pos : ts.basis) {
    auto c = g.combine(m.degree[pos / ts.dim_n], n.degree[pos % ts.dim_n]);
    if (!c) throw GradedError("graded_tensor: a basis tensor lies past the truncation");
    deg.push_back(*c);
  }
  return GradedBimodule::make(t, m.left, n.right, std::move(deg));
}

std::string BarAlgebra::label(std::size_t b) const {
  const auto& x = basis.at(b);
  return "(" + std::to_string(x.row) + "," + std::to_string(x.col) + ")" + source.algebra.labels().at(x.source);
}

namespace {

// Bar basis for a graded carrier; offsets index blocks by (row, col).
std::vector<BarIndex> bar_basis(const Grading& g, const std::vector<std::size_t>& degree,
                                std::map<std::pair<std::size_t, std::size_t>, std::size_t>& offset,
                                std::vector<std::size_t>& rank_in_degree) {
  rank_in_degree.assign(degree.size(), 0);
  std::map<std::size_t, std::size_t> seen;
  for (std::size_t p = 0; p < degree.size(); ++p) rank_in_degree[p] = seen[degree[p]]++;
  std::vector<BarIndex> out;
  for (std::size_t r = 0; r < g.blocks(); ++r)
    for (std::size_t c = 0; c < g.blocks(); ++c) {
      auto d = g.block_degree(r, c);
      if (!d) continue;
      offset[{r, c}] = out.size();
      for (std::size_t p = 0; p < degree.size(); ++p)
        if (degree[p] == *d) out.push_back({r, c, p});
    }
  return out;
}

SparseVec place(const SparseVec& v, std::size_t offset, const std::vector<std::size_t>& rank_in_degree) {
  SparseVec out;
  for (const auto& e : v) out.push_back({static_cast<std::uint32_t>(offset + rank_in_degree[e.idx]), e.val});
  std::sort(out.begin(), out.end(), [](const Entry& x, const Entry& y) { return x.idx < y.idx; });
  return out;
}

}  // namespace

BarAlgebra bar_algebra(const GradedAlgebra& ga) {
  BarAlgebra b;
  b.source = ga;
  std::vector<std::size_t> rank;
  b.basis = bar_basis(ga.grading, ga.degree, b.block_offset, rank);
  std::size_t n = b.basis.size();
  const Algebra& a = ga.algebra;
  std::vector<SparseVec> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const BarIndex &bx = b.basis[x], &by = b.basis[y];
      if (bx.col != by.row) continue;
      table[x * n + y] = place(a.product(bx.source, by.source), b.block_offset.at({bx.row, by.col}), rank);
    }
  SparseVec unit;
  for (std::size_t r = 0; r < ga.grading.blocks(); ++r) {
    SparseVec u = place(a.unit(), b.block_offset.at({r, r}), rank);
    unit.insert(unit.end(), u.begin(), u.end());
  }
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n; ++x) labels.push_back(b.label(x));
  b.algebra = Algebra::from_products(a.field(), n, std::move(table), unit, std::move(labels), true);
  return b;
}

BarBimodule bar_bimodule(const GradedBimodule& gm, const BarAlgebra& left, const BarAlgebra& right) {
  require_same_algebra(left.source.algebra, gm.left.algebra, "bar_bimodule (left)");
  require_same_algebra(right.source.algebra, gm.right.algebra, "bar_bimodule (right)");
  const Grading& g = gm.left.grading;
  BarBimodule out;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> offset;
  std::vector<std::size_t> rank;
  out.basis = bar_basis(g, gm.degree, offset, rank);
  std::size_t n = out.basis.size();
  Field f = gm.bimodule.field();
  auto block_of = [&](std::size_t r, std::size_t c) -> std::optional<std::size_t> {
    auto it = offset.find({r, c});
    if (it == offset.end()) return std::nullopt;
    return it->second;
  };
  std::vector<Mat> la, ra;
  for (const auto& bx : left.basis) {
    std::vector<SparseVec> cols(n);
    for (std::size_t p = 0; p < n; ++p) {
      const BarIndex& bp = out.basis[p];
      if (bx.col != bp.row) continue;
      auto off = block_of(bx.row, bp.col);
      SparseVec v = gm.bimodule.left_act(bx.source).apply(unit_vector(bp.source));
      if (!v.empty()) cols[p] = place(v, *off, rank);
    }
    la.push_back(Mat::from_columns(f, n, cols));
  }
  for (const auto& by : right.basis) {
    std::vector<SparseVec> cols(n);
    for (std::size_t p = 0; p < n; ++p) {
      const BarIndex& bp = out.basis[p];
      if (bp.col != by.row) continue;
      auto off = block_of(bp.row, by.col);
      SparseVec v = gm.bimodule.right_act(by.source).apply(unit_vector(bp.source));
      if (!v.empty()) cols[p] = place(v, *off, rank);
    }
    ra.push_back(Mat::from_columns(f, n, cols));
  }
  out.bimodule = Bimodule::from_actions(left.algebra, right.algebra, n, std::move(la), std::move(ra), true);
  return out;
}

namespace {

GradedSplit graded_split(const GradedBimodule& t, const GradedAlgebra& a, std::uint64_t seed, std::size_t trials) {
  GradedSplit s;
  SplitGrading sg{t.degree, a.degree};
  s.decomposition = split_regular_summand(t.bimodule, seed, trials, nullptr, &sg);
  if (!s.decomposition) return s;
  const Decomposition& d = *s.decomposition;
  std::size_t da = a.algebra.dim();
  std::vector<SparseVec> cols;
  for (std::size_t c = da; c < d.iso.cols(); ++c) cols.push_back(d.iso.column(c));
  s.complement = GradedBimodule::make(d.complement, a, a, homogeneous_degrees(cols, t.degree));
  return s;
}

std::optional<IsoVerdict> compare_bimodules(const Bimodule& x, const Bimodule& y, std::uint64_t seed) {
  if (x.dim() == 0 && y.dim() == 0) {
    IsoVerdict v;
    v.kind = IsoVerdict::Kind::Isomorphic;
    return v;
  }
  return iso_test(x.enveloping_module(), y.enveloping_module(), seed, 30);
}

}  // namespace

BarReport bar_certificate(const GradedAlgebra& a, const GradedAlgebra& b, const GradedBimodule& m,
                          const GradedBimodule& n, std::uint64_t seed, std::size_t trials) {
  if (!(a.grading == b.grading)) throw GradedError("bar_certificate: gradings differ");
  BarReport r;
  r.ungraded = check_certificate(a.algebra, b.algebra, m.bimodule, n.bimodule, seed, trials);
  if (!r.ungraded.valid()) {
    r.graded_failure = "ungraded certificate: " + r.ungraded.str();
  } else {
    std::optional<GradedBimodule> tmn, tnm;
    try {
      tmn = graded_tensor(m, n);
      tnm = graded_tensor(n, m);
    } catch (const GradedError& e) {
      r.graded_failure = e.what();
    }
    if (tmn && tnm) {
      r.mn = graded_split(*tmn, a, seed, trials);
      r.nm = graded_split(*tnm, b, seed + 1, trials);
      if (!r.mn.decomposition) r.graded_failure = "no degree-preserving regular summand in M (x) N";
      else if (!r.nm.decomposition) r.graded_failure = "no degree-preserving regular summand in N (x) M";
      else if (!r.mn.decomposition->complement_projective || !r.nm.decomposition->complement_projective)
        r.graded_failure = "graded complement is not projective";
      else r.graded_valid = true;
    }
  }
  r.a_bar = bar_algebra(a);
  r.b_bar = bar_algebra(b);
  r.m_bar = bar_bimodule(m, r.a_bar, r.b_bar);
  r.n_bar = bar_bimodule(n, r.b_bar, r.a_bar);
  r.bar = check_certificate(r.a_bar.algebra, r.b_bar.algebra, r.m_bar.bimodule, r.n_bar.bimodule, seed, trials);
  if (r.bar.valid() && r.graded_valid) {
    BarBimodule pb = bar_bimodule(*r.mn.complement, r.a_bar, r.a_bar);
    BarBimodule qb = bar_bimodule(*r.nm.complement, r.b_bar, r.b_bar);
    r.p_match = compare_bimodules(pb.bimodule, r.bar.mn->complement, seed);
    r.q_match = compare_bimodules(qb.bimodule, r.bar.nm->complement, seed + 1);
  }
  return r;
}

}  // namespace fdalg
