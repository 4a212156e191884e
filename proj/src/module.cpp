#include "fdalg/module.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace fdalg {

// ---------------------------------------------------------------------------
// Module basics

Module Module::from_action(const Algebra& a, std::size_t dim, std::vector<Mat> action, bool validate) {
  if (action.size() != a.dim()) throw ModuleError("module needs one action matrix per algebra basis element");
  for (const auto& m : action) {
    require_same_field(m.field(), a.field(), "Module");
    if (m.rows() != dim || m.cols() != dim) throw ModuleError("action matrix has wrong shape");
  }
  Module r;
  auto d = std::make_shared<Data>();
  d->alg = a;
  d->dim = dim;
  d->action = std::move(action);
  r.d_ = d;
  if (validate) validate_module(r);
  return r;
}

Module Module::from_generator_action(const Algebra& a, std::size_t dim, const std::vector<Mat>& gens) {
  const auto& g = a.generators();
  if (gens.size() != g.size())
    throw ModuleError("expected " + std::to_string(g.size()) + " generator matrices, got " + std::to_string(gens.size()));
  for (const auto& m : gens)
    if (m.rows() != dim || m.cols() != dim) throw ModuleError("generator matrix has wrong shape");
  Field f = a.field();
  std::vector<SparseVec> vecs;
  std::vector<Mat> mats;
  EchelonBuilder eb(f, a.dim());
  if (eb.add(a.unit())) {
    vecs.push_back(a.unit());
    mats.push_back(Mat::identity(f, dim));
  }
  for (std::size_t k = 0; k < vecs.size() && vecs.size() < a.dim(); ++k)
    for (std::size_t t = 0; t < g.size(); ++t) {
      SparseVec v = a.mul(unit_vector(g[t]), vecs[k]);
      if (eb.add(v)) {
        vecs.push_back(v);
        mats.push_back(gens[t] * mats[k]);
      }
    }
  if (vecs.size() != a.dim()) throw ModuleError("internal: generator words do not span the algebra");
  auto inv = inverse(Mat::from_columns(f, a.dim(), vecs));
  std::vector<Mat> action(a.dim(), Mat(f, dim, dim));
  for (std::size_t k = 0; k < inv->rows(); ++k)
    for (const auto& e : inv->row(k)) action[e.idx] = action[e.idx] + mats[k].scaled(e.val);
  return from_action(a, dim, std::move(action), true);
}

const Algebra& Module::algebra() const { return d_->alg; }
Field Module::field() const { return d_->alg.field(); }
std::size_t Module::dim() const { return d_->dim; }
const Mat& Module::act(std::size_t i) const { return d_->action.at(i); }
const std::vector<Mat>& Module::actions() const { return d_->action; }

Mat Module::act_by(const SparseVec& a) const {
  Mat m(field(), dim(), dim());
  for (const auto& e : a) m = m + act(e.idx).scaled(e.val);
  return m;
}

SparseVec Module::apply(const SparseVec& a, const SparseVec& v) const {
  SparseVec r;
  for (const auto& e : a) r = sparse_axpy(field(), r, e.val, act(e.idx).apply(v));
  return r;
}

void validate_module(const Module& m) {
  const Algebra& a = m.algebra();
  if (!m.act_by(a.unit()).is_identity()) throw ModuleError("unit does not act as the identity");
  // Checking rho(g) rho(e_j) = rho(g e_j) for generators g determines every
  // product by induction on word length.
  for (auto g : a.generators())
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (m.act(g) * m.act(j) != m.act_by(a.product(g, j)))
        throw ModuleError("action does not respect the product e" + std::to_string(g) + "*e" + std::to_string(j));
}

Module regular_module(const Algebra& a) {
  std::vector<Mat> act;
  for (std::size_t i = 0; i < a.dim(); ++i) act.push_back(a.left_regular(i));
  return Module::from_action(a, a.dim(), std::move(act), false);
}

Module zero_module(const Algebra& a) {
  return Module::from_action(a, 0, std::vector<Mat>(a.dim(), Mat(a.field(), 0, 0)), false);
}

Module truncated_module(const Algebra& nak, std::size_t r) {
  if (r == 0 || r > nak.dim()) throw ModuleError("truncated_module: r out of range");
  Field f = nak.field();
  Mat x(f, r, r);
  for (std::size_t i = 0; i + 1 < r; ++i) x.set(i + 1, i, Rational(1));
  std::vector<Mat> act{Mat::identity(f, r)};
  for (std::size_t i = 1; i < nak.dim(); ++i) act.push_back(act.back() * x);
  return Module::from_action(nak, r, act);
}

SparseVec liu_schulz_u(const Rational& q, int j) {
  Rational p(1);
  for (int i = 0; i < j; ++i) p = p * q;
  return SparseVec{{2, p}, {3, Rational(1)}};
}

Module liu_schulz_ideal(const Algebra& a, const Rational& q, int j) {
  return cyclic_submodule(regular_module(a), liu_schulz_u(q, j)).module;
}

Mat block_diagonal(const std::vector<Mat>& maps) {
  std::size_t r = 0, c = 0;
  for (const auto& m : maps) {
    r += m.rows();
    c += m.cols();
  }
  Field f = maps.empty() ? Field{} : maps[0].field();
  Mat out(f, r, c);
  std::size_t ro = 0, co = 0;
  for (const auto& m : maps) {
    for (std::size_t i = 0; i < m.rows(); ++i) out.set_row(ro + i, sparse_shift(m.row(i), co));
    ro += m.rows();
    co += m.cols();
  }
  return out;
}

Module direct_sum(const std::vector<Module>& ms) {
  if (ms.empty()) throw ModuleError("direct_sum of no modules");
  const Algebra& a = ms[0].algebra();
  std::size_t dim = 0;
  for (const auto& m : ms) {
    require_same_algebra(a, m.algebra(), "direct_sum");
    dim += m.dim();
  }
  std::vector<Mat> act;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    std::vector<Mat> blocks;
    for (const auto& m : ms) blocks.push_back(m.act(i));
    act.push_back(block_diagonal(blocks));
  }
  return Module::from_action(a, dim, std::move(act), false);
}

SubmoduleResult submodule(const Module& m, const Subspace& w) {
  const Algebra& a = m.algebra();
  std::vector<Mat> act;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    std::vector<SparseVec> cols;
    for (const auto& b : w.basis()) {
      SparseVec img = m.act(i).apply(b);
      if (!w.contains(img)) throw ModuleError("subspace is not a submodule");
      cols.push_back(w.coords_sparse(img));
    }
    act.push_back(Mat::from_columns(m.field(), w.dim(), cols));
  }
  return {Module::from_action(a, w.dim(), std::move(act), false), w.basis_matrix()};
}

namespace {

Subspace closure(const Module& m, const std::vector<SparseVec>& vs) {
  EchelonBuilder eb(m.field(), m.dim());
  std::vector<SparseVec> queue;
  for (const auto& v : vs)
    if (eb.add(v)) queue.push_back(v);
  const auto& gens = m.algebra().generators();
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (auto g : gens) {
      SparseVec w = m.act(g).apply(queue[k]);
      if (eb.add(w)) queue.push_back(std::move(w));
    }
  return Subspace::from_builder(eb);
}

// Elements r_i with rad(A) = sum A r_i.
const std::vector<SparseVec>& radical_left_generators(const Algebra& a) {
  return a.cached<std::vector<SparseVec>>("radical_left_generators", [&] {
    const Subspace& rad = a.structure().radical;
    std::vector<SparseVec> gens;
    EchelonBuilder ideal(a.field(), a.dim());
    for (const auto& r : rad.basis()) {
      if (ideal.reduce(r).empty()) continue;
      gens.push_back(r);
      for (std::size_t k = 0; k < a.dim(); ++k) ideal.add(a.mul(unit_vector(k), r));
    }
    return gens;
  });
}

bool has_structure(const Algebra& a) {
  if (!a.field().is_rational()) return false;
  try {
    a.structure();
    return true;
  } catch (const AlgebraError&) {
    return false;
  }
}

}  // namespace

SubmoduleResult generated_submodule(const Module& m, const std::vector<SparseVec>& vs) {
  return submodule(m, closure(m, vs));
}

SubmoduleResult cyclic_submodule(const Module& m, const SparseVec& v) { return generated_submodule(m, {v}); }

QuotientResult quotient_module(const Module& m, const Subspace& w) {
  const Algebra& a = m.algebra();
  auto comp = w.complement_positions();
  std::vector<Mat> act;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    std::vector<SparseVec> cols;
    for (auto c : comp) cols.push_back(w.quotient_coords(m.act(i).column(c)));
    act.push_back(Mat::from_columns(m.field(), comp.size(), cols));
  }
  std::vector<SparseVec> pcols;
  for (std::size_t j = 0; j < m.dim(); ++j) pcols.push_back(w.quotient_coords(unit_vector(j)));
  return {Module::from_action(a, comp.size(), std::move(act), false), Mat::from_columns(m.field(), comp.size(), pcols),
          w};
}

Subspace radical_subspace(const Module& m) {
  std::vector<SparseVec> vs;
  for (const auto& r : radical_left_generators(m.algebra())) {
    Mat x = m.act_by(r);
    for (auto& c : x.columns())
      if (!c.empty()) vs.push_back(std::move(c));
  }
  return closure(m, vs);
}

bool is_homomorphism(const Mat& f, const Module& m, const Module& n) {
  if (!m.algebra().same_as(n.algebra())) return false;
  if (f.rows() != n.dim() || f.cols() != m.dim()) return false;
  for (auto g : m.algebra().generators())
    if (f * m.act(g) != n.act(g) * f) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Hom spaces

SparseVec Blocking::to_adapted(const SparseVec& v) const {
  SparseVec out;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    SparseVec part = blocks[i].coords_sparse(projectors[i].apply(v));
    for (auto& e : part) out.push_back({static_cast<std::uint32_t>(e.idx + offset), e.val});
    offset += blocks[i].dim();
  }
  return out;
}

Blocking make_blocking(Field f, std::size_t dim, const std::vector<Mat>& projectors) {
  Blocking b;
  std::vector<SparseVec> cols;
  for (const auto& p : projectors) {
    Subspace s = Subspace::column_space(p);
    if (s.dim() == 0) continue;
    for (const auto& v : s.basis()) {
      cols.push_back(v);
      b.block_of.push_back(b.blocks.size());
    }
    b.blocks.push_back(std::move(s));
    b.projectors.push_back(p);
  }
  if (b.block_of.size() != dim) throw ModuleError("internal: projectors do not decompose the space");
  b.basis = Mat::from_columns(f, dim, cols);
  return b;
}

SparseVec HomBasis::coords(const Mat& f) const {
  SparseVec out;
  std::map<std::size_t, SparseVec> colcache;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    std::size_t r = positions[k] / src_dim, c = positions[k] % src_dim;
    Rational v;
    if (src_blocks) {
      auto it = colcache.find(c);
      if (it == colcache.end()) it = colcache.emplace(c, tgt_blocks->to_adapted(f.apply(src_blocks->basis.column(c)))).first;
      v = sparse_at(it->second, r);
    } else {
      v = f.at(r, c);
    }
    if (!v.is_zero()) out.push_back({static_cast<std::uint32_t>(k), v});
  }
  return out;
}

Mat HomBasis::combine(const std::vector<Rational>& c) const {
  Field f = basis.empty() ? Field{} : basis[0].field();
  Mat m(f, tgt_dim, src_dim);
  for (std::size_t k = 0; k < c.size() && k < basis.size(); ++k)
    if (!c[k].is_zero()) m = m + basis[k].scaled(c[k]);
  return m;
}

HomBasis intertwiners(Field f, std::size_t sd, std::size_t td, const std::vector<std::pair<const Mat*, const Mat*>>& pairs,
                      std::shared_ptr<const Blocking> sb, std::shared_ptr<const Blocking> tb) {
  HomBasis h;
  h.src_dim = sd;
  h.tgt_dim = td;
  bool blocked = sb && tb;
  if (blocked) {
    h.src_blocks = sb;
    h.tgt_blocks = tb;
  }
  // Unknown index for adapted position (r, c), or -1.
  std::vector<std::int64_t> unknown(sd * td, -1);
  std::vector<std::size_t> pos;
  for (std::size_t r = 0; r < td; ++r)
    for (std::size_t c = 0; c < sd; ++c)
      if (!blocked || sb->block_of[c] == tb->block_of[r]) {
        unknown[r * sd + c] = static_cast<std::int64_t>(pos.size());
        pos.push_back(r * sd + c);
      }
  EchelonBuilder eb(f, pos.size());
  std::vector<Rational> acc(pos.size());
  std::vector<char> mark(pos.size(), 0);
  std::vector<std::uint32_t> touched;
  for (const auto& [x0, y0] : pairs) {
    Mat x = *x0, y = *y0;
    if (blocked) {
      std::vector<SparseVec> xc, yc;
      for (std::size_t c = 0; c < sd; ++c) xc.push_back(sb->to_adapted(x0->apply(sb->basis.column(c))));
      for (std::size_t c = 0; c < td; ++c) yc.push_back(tb->to_adapted(y0->apply(tb->basis.column(c))));
      x = Mat::from_columns(f, sd, xc);
      y = Mat::from_columns(f, td, yc);
    }
    auto xcols = x.columns();
    for (std::size_t r = 0; r < td; ++r)
      for (std::size_t c = 0; c < sd; ++c) {
        // (f x - y f)[r][c]
        auto add = [&](std::int64_t u, const Rational& v) {
          if (u < 0) return;
          auto k = static_cast<std::uint32_t>(u);
          if (!mark[k]) {
            mark[k] = 1;
            touched.push_back(k);
            acc[k] = v;
          } else {
            acc[k] = f.add(acc[k], v);
          }
        };
        for (const auto& e : xcols[c]) add(unknown[r * sd + e.idx], e.val);
        for (const auto& e : y.row(r)) add(unknown[e.idx * sd + c], f.neg(e.val));
        if (touched.empty()) continue;
        std::sort(touched.begin(), touched.end());
        SparseVec row;
        for (auto k : touched) {
          if (!acc[k].is_zero()) row.push_back({k, acc[k]});
          acc[k] = Rational();
          mark[k] = 0;
        }
        touched.clear();
        if (!row.empty()) eb.add(row);
      }
  }
  Mat eqs = Mat::from_rows(f, pos.size(), eb.reduced_rows());
  Mat ker = kernel_basis(eqs);
  // Free unknowns are the coordinates of the kernel basis.
  std::vector<char> is_pivot(pos.size(), 0);
  for (std::size_t i = 0; i < eqs.rows(); ++i) is_pivot[eqs.row(i).front().idx] = 1;
  for (std::size_t k = 0; k < pos.size(); ++k)
    if (!is_pivot[k]) h.positions.push_back(pos[k]);
  std::vector<SparseVec> src_inv;
  if (blocked)
    for (std::size_t j = 0; j < sd; ++j) src_inv.push_back(sb->to_adapted(unit_vector(j)));
  for (const auto& col : ker.columns()) {
    Mat fa(f, td, sd);
    for (const auto& e : col) fa.set(pos[e.idx] / sd, pos[e.idx] % sd, e.val);
    if (blocked) {
      std::vector<SparseVec> cols;
      for (std::size_t j = 0; j < sd; ++j) cols.push_back(tb->basis.apply(fa.apply(src_inv[j])));
      fa = Mat::from_columns(f, td, cols);
    }
    h.basis.push_back(std::move(fa));
  }
  return h;
}

namespace {

std::shared_ptr<const Blocking> module_blocking(const Module& m) {
  if (!has_structure(m.algebra()) || m.dim() == 0) return nullptr;
  std::vector<Mat> proj;
  for (const auto& e : m.algebra().structure().idempotents) proj.push_back(m.act_by(e));
  return std::make_shared<const Blocking>(make_blocking(m.field(), m.dim(), proj));
}

}  // namespace

HomBasis hom_basis(const Module& m, const Module& n) {
  require_same_algebra(m.algebra(), n.algebra(), "hom_basis");
  std::vector<std::pair<const Mat*, const Mat*>> pairs;
  for (auto g : m.algebra().generators()) pairs.emplace_back(&m.act(g), &n.act(g));
  std::shared_ptr<const Blocking> sb, tb;
  if (m.dim() * n.dim() > 64) {
    sb = module_blocking(m);
    tb = module_blocking(n);
  }
  return intertwiners(m.field(), m.dim(), n.dim(), pairs, sb, tb);
}

// ---------------------------------------------------------------------------
// isomorphism testing

std::string IsoVerdict::str() const {
  switch (kind) {
    case Kind::Isomorphic:
      return "isomorphic (certified)";
    case Kind::NotIsomorphic:
      return "not isomorphic (" + reason + ")";
    default:
      return "undecided after " + std::to_string(trials) + " trials";
  }
}

std::optional<std::pair<Mat, Mat>> find_invertible(const HomBasis& h, std::uint64_t seed, std::size_t trials,
                                                   std::size_t* used) {
  if (h.src_dim != h.tgt_dim || h.dim() == 0) return std::nullopt;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    if (used) *used = t + 1;
    long long bound = 1 + static_cast<long long>(t / 4);
    std::uniform_int_distribution<long long> dist(-bound, bound);
    std::vector<Rational> c(h.dim());
    for (auto& x : c) x = Rational(dist(rng));
    if (t == 0)
      for (auto& x : c) x = Rational(1);
    Mat f = h.combine(c);
    auto mr = modular_rank(f, 2147483647u);
    if (mr && *mr < f.rows()) continue;
    auto g = inverse(f);
    if (!g) continue;
    if (!(f * *g).is_identity() || !(*g * f).is_identity()) throw ModuleError("internal: inverse check failed");
    return std::make_pair(std::move(f), std::move(*g));
  }
  return std::nullopt;
}

IsoVerdict iso_test(const Module& m, const Module& n, std::uint64_t seed, std::size_t trials) {
  require_same_algebra(m.algebra(), n.algebra(), "iso_test");
  IsoVerdict v;
  if (m.dim() != n.dim()) {
    v.kind = IsoVerdict::Kind::NotIsomorphic;
    v.reason = "dimension " + std::to_string(m.dim()) + " vs " + std::to_string(n.dim());
    return v;
  }
  if (m.actions() == n.actions()) {
    v.kind = IsoVerdict::Kind::Isomorphic;
    v.forward = v.backward = Mat::identity(m.field(), m.dim());
    return v;
  }
  const Algebra& a = m.algebra();
  if (has_structure(a)) {
    for (std::size_t t = 0; t < a.structure().num_classes(); ++t) {
      Module s = simple_module(a, t);
      std::size_t hm = hom_basis(s, m).dim(), hn = hom_basis(s, n).dim();
      if (hm != hn) {
        v.kind = IsoVerdict::Kind::NotIsomorphic;
        v.reason = "dim Hom(S_" + std::to_string(t) + ", -) is " + std::to_string(hm) + " vs " + std::to_string(hn);
        return v;
      }
    }
  }
  HomBasis mn = hom_basis(m, n);
  std::size_t mm = hom_basis(m, m).dim(), nm = hom_basis(n, m).dim(), nn = hom_basis(n, n).dim();
  if (mm != mn.dim()) {
    v.kind = IsoVerdict::Kind::NotIsomorphic;
    v.reason = "dim Hom(M, M) = " + std::to_string(mm) + " but dim Hom(M, N) = " + std::to_string(mn.dim());
    return v;
  }
  if (nm != nn) {
    v.kind = IsoVerdict::Kind::NotIsomorphic;
    v.reason = "dim Hom(N, M) = " + std::to_string(nm) + " but dim Hom(N, N) = " + std::to_string(nn);
    return v;
  }
  std::size_t used = 0;
  auto cert = find_invertible(mn, seed, trials, &used);
  v.trials = used;
  if (cert) {
    if (!is_homomorphism(cert->first, m, n) || !is_homomorphism(cert->second, n, m))
      throw ModuleError("internal: certificate is not a homomorphism");
    v.kind = IsoVerdict::Kind::Isomorphic;
    v.forward = std::move(cert->first);
    v.backward = std::move(cert->second);
  }
  return v;
}

// ---------------------------------------------------------------------------
// duals, tops, socles, projectives

Module dual(const Module& m) {
  std::vector<Mat> act;
  for (const auto& x : m.actions()) act.push_back(x.transpose());
  return Module::from_action(opposite(m.algebra()), m.dim(), std::move(act), false);
}

TopSocle top_and_socle(const Module& m) {
  TopSocle ts;
  ts.top = quotient_module(m, radical_subspace(m));
  Mat stacked(m.field(), 0, m.dim());
  for (const auto& r : radical_left_generators(m.algebra())) stacked = stacked.vstack(m.act_by(r));
  Subspace soc = Subspace::span(m.field(), m.dim(), kernel_basis(stacked).columns());
  ts.socle = submodule(m, soc);
  return ts;
}

const IndecomposableProjective& indecomposable_projective(const Algebra& a, std::size_t cls) {
  const auto& all = a.cached<std::vector<IndecomposableProjective>>("indecomposable_projectives", [&] {
    const auto& st = a.structure();
    std::vector<IndecomposableProjective> out;
    for (std::size_t t = 0; t < st.num_classes(); ++t) {
      IndecomposableProjective p;
      p.idempotent = st.idempotents[st.class_rep[t]];
      std::vector<SparseVec> vs;
      for (std::size_t i = 0; i < a.dim(); ++i) vs.push_back(a.mul(unit_vector(i), p.idempotent));
      p.span = Subspace::span(a.field(), a.dim(), vs);
      p.module = submodule(regular_module(a), p.span).module;
      p.generator = p.span.coords_sparse(p.idempotent);
      out.push_back(std::move(p));
    }
    return out;
  });
  return all.at(cls);
}

ProjectiveModule projective_sum(const Algebra& a, const std::vector<std::size_t>& classes) {
  ProjectiveModule p;
  p.classes = classes;
  std::vector<Module> parts;
  std::size_t off = 0;
  for (auto t : classes) {
    const auto& ip = indecomposable_projective(a, t);
    p.offsets.push_back(off);
    off += ip.module.dim();
    parts.push_back(ip.module);
  }
  p.module = parts.empty() ? zero_module(a) : direct_sum(parts);
  return p;
}

SparseVec ProjectiveModule::generator(std::size_t s) const {
  return sparse_shift(indecomposable_projective(module.algebra(), classes[s]).generator, offsets[s]);
}

Mat ProjectiveModule::map_to(const Module& target, const std::vector<SparseVec>& values) const {
  const Algebra& a = module.algebra();
  std::vector<SparseVec> cols;
  for (std::size_t s = 0; s < classes.size(); ++s) {
    const auto& ip = indecomposable_projective(a, classes[s]);
    std::vector<SparseVec> img(a.dim());
    std::vector<char> have(a.dim(), 0);
    for (const auto& w : ip.span.basis()) {
      SparseVec c;
      for (const auto& e : w) {
        if (!have[e.idx]) {
          img[e.idx] = target.act(e.idx).apply(values[s]);
          have[e.idx] = 1;
        }
        c = sparse_axpy(target.field(), c, e.val, img[e.idx]);
      }
      cols.push_back(std::move(c));
    }
  }
  return Mat::from_columns(target.field(), target.dim(), cols);
}

std::vector<SparseVec> ProjectiveModule::components(const SparseVec& x) const {
  const Algebra& a = module.algebra();
  std::vector<SparseVec> out;
  for (std::size_t s = 0; s < classes.size(); ++s) {
    const auto& ip = indecomposable_projective(a, classes[s]);
    SparseVec c;
    for (const auto& e : x)
      if (e.idx >= offsets[s] && e.idx < offsets[s] + ip.span.dim())
        c.push_back({static_cast<std::uint32_t>(e.idx - offsets[s]), e.val});
    SparseVec elem;
    for (const auto& e : c) elem = sparse_axpy(a.field(), elem, e.val, ip.span.basis()[e.idx]);
    out.push_back(std::move(elem));
  }
  return out;
}

std::vector<std::size_t> top_multiplicities(const Module& m) {
  const Algebra& a = m.algebra();
  const auto& st = a.structure();
  Subspace rad = radical_subspace(m);
  std::vector<std::size_t> mult;
  for (std::size_t t = 0; t < st.num_classes(); ++t) {
    Mat e = m.act_by(st.idempotents[st.class_rep[t]]);
    EchelonBuilder eb(m.field(), m.dim());
    for (const auto& c : e.columns()) eb.add(rad.quotient_coords(c));
    mult.push_back(eb.dim());
  }
  return mult;
}

ProjectiveCover projective_cover(const Module& m) {
  const Algebra& a = m.algebra();
  const auto& st = a.structure();
  Subspace rad = radical_subspace(m);
  std::vector<std::size_t> classes;
  std::vector<SparseVec> values;
  for (std::size_t t = 0; t < st.num_classes(); ++t) {
    Mat e = m.act_by(st.idempotents[st.class_rep[t]]);
    EchelonBuilder eb(m.field(), m.dim());
    for (auto& c : e.columns()) {
      if (c.empty()) continue;
      if (eb.add(rad.quotient_coords(c))) {
        classes.push_back(t);
        values.push_back(std::move(c));
      }
    }
  }
  ProjectiveCover pc;
  pc.projective = projective_sum(a, classes);
  pc.epi = pc.projective.map_to(m, values);
  if (rank(pc.epi) != m.dim()) throw ModuleError("internal: projective cover map is not surjective");
  return pc;
}

SubmoduleResult syzygy_with_inclusion(const Module& m) {
  ProjectiveCover pc = projective_cover(m);
  Subspace ker = Subspace::span(m.field(), pc.projective.module.dim(), kernel_basis(pc.epi).columns());
  return submodule(pc.projective.module, ker);
}

Module syzygy(const Module& m) { return syzygy_with_inclusion(m).module; }

bool is_projective(const Module& m) {
  if (m.dim() == 0) return true;
  auto mult = top_multiplicities(m);
  std::size_t cover = 0;
  for (std::size_t t = 0; t < mult.size(); ++t)
    cover += mult[t] * indecomposable_projective(m.algebra(), t).module.dim();
  return cover == m.dim();
}

InjectiveEnvelope injective_envelope(const Module& m) {
  Module dm = dual(m);
  ProjectiveCover pc = projective_cover(dm);
  InjectiveEnvelope ie;
  ie.module = dual(pc.projective.module);
  ie.mono = pc.epi.transpose();
  return ie;
}

Module simple_module(const Algebra& a, std::size_t cls) {
  const auto& all = a.cached<std::vector<Module>>("simple_modules", [&] {
    std::vector<Module> out;
    for (std::size_t t = 0; t < a.structure().num_classes(); ++t) {
      const Module& p = indecomposable_projective(a, t).module;
      out.push_back(quotient_module(p, radical_subspace(p)).module);
    }
    return out;
  });
  return all.at(cls);
}

Module nakayama_transform(const Module& m) {
  const Algebra& a = m.algebra();
  Module reg = regular_module(a);
  HomBasis h = hom_basis(m, reg);
  // Hom(M, A) is a right A-module via (f b)(x) = f(x) b; its dual is a left module.
  std::vector<Mat> act;
  for (std::size_t b = 0; b < a.dim(); ++b) {
    std::vector<SparseVec> cols;
    for (const auto& f : h.basis) cols.push_back(h.coords(a.right_regular(b) * f));
    act.push_back(Mat::from_columns(a.field(), h.dim(), cols).transpose());
  }
  return Module::from_action(a, h.dim(), std::move(act), true);
}

bool is_self_injective(const Algebra& a) {
  return is_projective(dual(regular_module(opposite(a))));
}

// ---------------------------------------------------------------------------
// bimodules

Bimodule Bimodule::from_actions(const Algebra& left, const Algebra& right, std::size_t dim, std::vector<Mat> left_action,
                                std::vector<Mat> right_action, bool validate) {
  require_same_field(left.field(), right.field(), "Bimodule");
  Bimodule b;
  b.left_ = Module::from_action(left, dim, std::move(left_action), validate);
  b.right_ = Module::from_action(opposite(right), dim, std::move(right_action), validate);
  b.right_alg_ = right;
  if (validate) validate_bimodule(b);
  return b;
}

Bimodule Bimodule::regular(const Algebra& a) {
  std::vector<Mat> l, r;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    l.push_back(a.left_regular(i));
    r.push_back(a.right_regular(i));
  }
  return from_actions(a, a, a.dim(), std::move(l), std::move(r), false);
}

void validate_bimodule(const Bimodule& b) {
  validate_module(b.left_module());
  validate_module(b.right_module());
  for (auto g : b.left_algebra().generators())
    for (auto h : b.right_algebra().generators())
      if (b.left_act(g) * b.right_act(h) != b.right_act(h) * b.left_act(g))
        throw ModuleError("left and right actions do not commute");
}

Module Bimodule::enveloping_module() const {
  const Algebra& a = left_algebra();
  Algebra bop = opposite(right_algebra());
  std::string key = "enveloping:" + std::to_string(reinterpret_cast<std::uintptr_t>(bop.id()));
  const Algebra& env = a.cached<Algebra>(key, [&] { return tensor_algebra(a, bop); });
  std::vector<Mat> act;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < bop.dim(); ++j) act.push_back(left_act(i) * right_act(j));
  return Module::from_action(env, dim(), std::move(act), false);
}

Bimodule bimodule_direct_sum(const std::vector<Bimodule>& bs) {
  if (bs.empty()) throw ModuleError("bimodule_direct_sum of no bimodules");
  std::vector<Module> l, r;
  for (const auto& b : bs) {
    l.push_back(b.left_module());
    r.push_back(b.right_module());
  }
  Module ls = direct_sum(l), rs = direct_sum(r);
  return Bimodule::from_actions(bs[0].left_algebra(), bs[0].right_algebra(), ls.dim(), ls.actions(), rs.actions(), false);
}

SubmoduleResult bimodule_submodule_space(const Bimodule& b, const Subspace& w, Bimodule* out) {
  auto l = submodule(b.left_module(), w);
  auto r = submodule(b.right_module(), w);
  if (out)
    *out = Bimodule::from_actions(b.left_algebra(), b.right_algebra(), w.dim(), l.module.actions(), r.module.actions(),
                                  false);
  return l;
}

namespace {

std::shared_ptr<const Blocking> bimodule_blocking(const Bimodule& m) {
  if (!has_structure(m.left_algebra()) || !has_structure(m.right_algebra()) || m.dim() == 0) return nullptr;
  std::vector<Mat> lp, proj;
  for (const auto& e : m.left_algebra().structure().idempotents) lp.push_back(m.left_module().act_by(e));
  for (const auto& f : m.right_algebra().structure().idempotents) {
    Mat rf = m.right_module().act_by(f);
    for (const auto& l : lp) proj.push_back(l * rf);
  }
  return std::make_shared<const Blocking>(make_blocking(m.field(), m.dim(), proj));
}

}  // namespace

HomBasis hom_bimodule(const Bimodule& m, const Bimodule& n) {
  require_same_algebra(m.left_algebra(), n.left_algebra(), "hom_bimodule");
  require_same_algebra(m.right_algebra(), n.right_algebra(), "hom_bimodule");
  std::vector<std::pair<const Mat*, const Mat*>> pairs;
  for (auto g : m.left_algebra().generators()) pairs.emplace_back(&m.left_act(g), &n.left_act(g));
  for (auto g : m.right_algebra().generators()) pairs.emplace_back(&m.right_act(g), &n.right_act(g));
  std::shared_ptr<const Blocking> sb, tb;
  if (m.dim() * n.dim() > 64) {
    sb = bimodule_blocking(m);
    tb = bimodule_blocking(n);
  }
  return intertwiners(m.field(), m.dim(), n.dim(), pairs, sb, tb);
}

bool is_bimodule_map(const Mat& f, const Bimodule& m, const Bimodule& n) {
  if (f.rows() != n.dim() || f.cols() != m.dim()) return false;
  for (auto g : m.left_algebra().generators())
    if (f * m.left_act(g) != n.left_act(g) * f) return false;
  for (auto g : m.right_algebra().generators())
    if (f * m.right_act(g) != n.right_act(g) * f) return false;
  return true;
}

std::vector<std::vector<std::size_t>> bimodule_top_multiplicities(const Bimodule& b) {
  const auto& sa = b.left_algebra().structure();
  const auto& sb = b.right_algebra().structure();
  EchelonBuilder rad(b.field(), b.dim());
  for (const auto& r : sa.radical.basis())
    for (const auto& c : b.left_module().act_by(r).columns())
      if (!c.empty()) rad.add(c);
  for (const auto& r : sb.radical.basis())
    for (const auto& c : b.right_module().act_by(r).columns())
      if (!c.empty()) rad.add(c);
  Subspace rs = Subspace::from_builder(rad);
  std::vector<std::vector<std::size_t>> mult(sa.num_classes(), std::vector<std::size_t>(sb.num_classes()));
  for (std::size_t i = 0; i < sa.num_classes(); ++i) {
    Mat e = b.left_module().act_by(sa.idempotents[sa.class_rep[i]]);
    for (std::size_t j = 0; j < sb.num_classes(); ++j) {
      Mat p = e * b.right_module().act_by(sb.idempotents[sb.class_rep[j]]);
      EchelonBuilder eb(b.field(), b.dim());
      for (const auto& c : p.columns())
        if (!c.empty()) eb.add(rs.quotient_coords(c));
      mult[i][j] = eb.dim();
    }
  }
  return mult;
}

bool is_bimodule_projective(const Bimodule& b) {
  if (b.dim() == 0) return true;
  auto mult = bimodule_top_multiplicities(b);
  const Algebra& bop = opposite(b.right_algebra());
  std::size_t cover = 0;
  for (std::size_t i = 0; i < mult.size(); ++i)
    for (std::size_t j = 0; j < mult[i].size(); ++j)
      cover += mult[i][j] * indecomposable_projective(b.left_algebra(), i).module.dim() *
               indecomposable_projective(bop, j).module.dim();
  return cover == b.dim();
}

// ---------------------------------------------------------------------------
// tensor products

namespace {

SparseVec kron_vec(Field f, const SparseVec& x, const SparseVec& y, std::size_t ny) {
  SparseVec r;
  for (const auto& p : x)
    for (const auto& q : y) r.push_back({static_cast<std::uint32_t>(p.idx * ny + q.idx), f.mul(p.val, q.val)});
  return r;
}

}  // namespace

SparseVec TensorSpace::pure(const SparseVec& m, const SparseVec& n) const {
  return project(kron_vec(relations.field(), m, n, dim_n));
}

Mat TensorSpace::induced(const Mat& x, const Mat& y) const {
  Field f = relations.field();
  auto xc = x.columns();
  auto yc = y.columns();
  std::vector<SparseVec> cols;
  for (auto pos : basis) cols.push_back(project(kron_vec(f, xc[pos / dim_n], yc[pos % dim_n], dim_n)));
  return Mat::from_columns(f, dim(), cols);
}

TensorSpace tensor_space(const Module& m_right, const Module& n_left) {
  const Algebra& b = n_left.algebra();
  if (!m_right.algebra().same_as(opposite(b))) throw ModuleError("tensor_space: right and left algebras differ");
  Field f = b.field();
  TensorSpace ts;
  ts.dim_m = m_right.dim();
  ts.dim_n = n_left.dim();
  EchelonBuilder eb(f, ts.dim_m * ts.dim_n);
  for (auto g : b.generators()) {
    auto rc = m_right.act(g).columns();
    auto lc = n_left.act(g).columns();
    for (std::size_t i = 0; i < ts.dim_m; ++i)
      for (std::size_t j = 0; j < ts.dim_n; ++j) {
        SparseVec v = kron_vec(f, rc[i], unit_vector(j), ts.dim_n);
        v = sparse_axpy(f, v, Rational(-1), kron_vec(f, unit_vector(i), lc[j], ts.dim_n));
        if (!v.empty()) eb.add(v);
      }
  }
  ts.relations = Subspace::from_builder(eb);
  ts.basis = ts.relations.complement_positions();
  return ts;
}

Module tensor_over(const Bimodule& m, const Module& n) {
  TensorSpace ts = tensor_space(m.right_module(), n);
  Mat id = Mat::identity(n.field(), n.dim());
  std::vector<Mat> act;
  for (std::size_t i = 0; i < m.left_algebra().dim(); ++i) act.push_back(ts.induced(m.left_act(i), id));
  return Module::from_action(m.left_algebra(), ts.dim(), std::move(act), false);
}

Bimodule tensor_over(const Bimodule& m, const Bimodule& n) {
  TensorSpace ts = tensor_space(m.right_module(), n.left_module());
  Mat im = Mat::identity(m.field(), m.dim()), in = Mat::identity(n.field(), n.dim());
  std::vector<Mat> l, r;
  for (std::size_t i = 0; i < m.left_algebra().dim(); ++i) l.push_back(ts.induced(m.left_act(i), in));
  for (std::size_t j = 0; j < n.right_algebra().dim(); ++j) r.push_back(ts.induced(im, n.right_act(j)));
  return Bimodule::from_actions(m.left_algebra(), n.right_algebra(), ts.dim(), std::move(l), std::move(r), false);
}

}  // namespace fdalg
