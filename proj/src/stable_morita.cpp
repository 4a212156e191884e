#include "fdalg/stable_morita.hpp"

#include <random>

namespace fdalg {

namespace {

SparseVec kron_vec(Field f, const SparseVec& x, const SparseVec& y, std::size_t ny) {
  SparseVec r;
  for (const auto& p : x)
    for (const auto& q : y) r.push_back({static_cast<std::uint32_t>(p.idx * ny + q.idx), f.mul(p.val, q.val)});
  return r;
}

// id_N (x) f between two tensor spaces over the same N.
Mat tensor_map(const TensorSpace& s, const TensorSpace& t, const Mat& f) {
  Field fld = s.relations.field();
  auto fc = f.columns();
  std::vector<SparseVec> cols;
  cols.reserve(s.dim());
  for (auto pos : s.basis) cols.push_back(t.project(kron_vec(fld, unit_vector(pos / s.dim_n), fc[pos % s.dim_n], t.dim_n)));
  return Mat::from_columns(fld, t.dim(), cols);
}

Mat zero_map(Field f, std::size_t rows, std::size_t cols) { return Mat::zero(f, rows, cols); }

Mat degree_operator(Field f, const std::vector<std::size_t>& deg) {
  Mat d(f, deg.size(), deg.size());
  for (std::size_t i = 0; i < deg.size(); ++i)
    if (deg[i] != 0) d.set(i, i, Rational(static_cast<long long>(deg[i])));
  return d;
}

bool invertible(const Mat& m) {
  if (m.rows() != m.cols()) return false;
  auto mr = modular_rank(m, 2147483647u);
  if (mr && *mr < m.rows()) return false;
  return rank(m) == m.rows();
}

// Central elements z of t (a z = z a); each gives the bimodule map a -> a z.
std::vector<Mat> maps_from_regular(const Bimodule& t, const SplitGrading* grading) {
  const Algebra& a = t.left_algebra();
  Field f = t.field();
  Mat stack(f, 0, t.dim());
  for (auto g : a.generators()) stack = stack.vstack(t.left_act(g) - t.right_act(g));
  if (grading) {
    // z = image of 1 must sit in degree 0.
    std::vector<SparseVec> rows;
    for (std::size_t p = 0; p < t.dim(); ++p)
      if (grading->tensor[p] != 0) rows.push_back(unit_vector(p));
    stack = stack.vstack(Mat::from_rows(f, t.dim(), rows));
  }
  Mat ker = kernel_basis(stack);
  std::vector<Mat> out;
  for (const auto& z : ker.columns()) {
    std::vector<SparseVec> cols;
    for (std::size_t b = 0; b < a.dim(); ++b) cols.push_back(t.left_act(b).apply(z));
    out.push_back(Mat::from_columns(f, t.dim(), cols));
  }
  return out;
}

Mat combine(const std::vector<Mat>& basis, const std::vector<Rational>& c, Field f, std::size_t rows,
            std::size_t cols) {
  Mat r = zero_map(f, rows, cols);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!c[i].is_zero()) r = r + basis[i].scaled(c[i]);
  return r;
}

std::optional<Decomposition> finish_split(const Bimodule& t, const Mat& f, const Mat& g) {
  const Algebra& a = t.left_algebra();
  Field fld = t.field();
  Mat comp = g * f;
  auto ci = inverse(comp);
  if (!ci) return std::nullopt;
  Mat gr = *ci * g;
  Mat ker = kernel_basis(gr);
  Subspace kspace = Subspace::span(fld, t.dim(), ker.columns());
  Decomposition d;
  d.tensor = t;
  auto sub = bimodule_submodule_space(t, kspace, &d.complement);
  d.iso = f.hstack(sub.inclusion);
  auto inv = inverse(d.iso);
  if (!inv) return std::nullopt;
  d.inverse = std::move(*inv);
  Bimodule sum = bimodule_direct_sum({Bimodule::regular(a), d.complement});
  if (!is_bimodule_map(d.iso, sum, t)) throw StableMoritaError("internal: split map is not a bimodule map");
  d.complement_projective = is_bimodule_projective(d.complement);
  return d;
}

}  // namespace

std::string Certificate::str() const {
  switch (status) {
    case Status::Valid:
      return "valid";
    case Status::Inconclusive:
      return "inconclusive: " + failure;
    default:
      return "invalid: " + failure;
  }
}

std::optional<Decomposition> split_regular_summand(const Bimodule& t, std::uint64_t seed, std::size_t trials,
                                                   std::size_t* used, const SplitGrading* grading) {
  const Algebra& a = t.left_algebra();
  require_same_algebra(a, t.right_algebra(), "split_regular_summand");
  Field fld = t.field();
  std::vector<Mat> h1 = maps_from_regular(t, grading);
  if (h1.empty()) return std::nullopt;
  HomBasis h2;
  if (grading) {
    Bimodule r = Bimodule::regular(a);
    Mat dt = degree_operator(fld, grading->tensor), da = degree_operator(fld, grading->algebra);
    std::vector<std::pair<const Mat*, const Mat*>> pairs;
    for (auto g : a.generators()) pairs.emplace_back(&t.left_act(g), &r.left_act(g));
    for (auto g : a.generators()) pairs.emplace_back(&t.right_act(g), &r.right_act(g));
    pairs.emplace_back(&dt, &da);
    h2 = intertwiners(fld, t.dim(), a.dim(), pairs);
  } else {
    h2 = hom_bimodule(t, Bimodule::regular(a));
  }
  if (h2.dim() == 0) return std::nullopt;
  std::size_t count = 0;
  auto attempt = [&](const Mat& f, const Mat& g) -> std::optional<Decomposition> {
    ++count;
    if (used) *used = count;
    if (!invertible(g * f)) return std::nullopt;
    auto d = finish_split(t, f, g);
    if (d) d->trials = count;
    return d;
  };
  if (h1.size() * h2.dim() <= 4096)
    for (const auto& f : h1)
      for (const auto& g : h2.basis)
        if (auto d = attempt(f, g)) return d;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < trials; ++k) {
    long long bound = 1 + static_cast<long long>(k / 4);
    std::uniform_int_distribution<long long> dist(-bound, bound);
    std::vector<Rational> c1(h1.size()), c2(h2.dim());
    for (auto& x : c1) x = Rational(dist(rng));
    for (auto& x : c2) x = Rational(dist(rng));
    if (auto d = attempt(combine(h1, c1, fld, t.dim(), a.dim()), h2.combine(c2))) return d;
  }
  return std::nullopt;
}

Certificate check_certificate(const Algebra& a, const Algebra& b, const Bimodule& m, const Bimodule& n,
                              std::uint64_t seed, std::size_t trials) {
  require_same_algebra(m.left_algebra(), a, "check_certificate (M left)");
  require_same_algebra(m.right_algebra(), b, "check_certificate (M right)");
  require_same_algebra(n.left_algebra(), b, "check_certificate (N left)");
  require_same_algebra(n.right_algebra(), a, "check_certificate (N right)");
  Certificate c;
  c.a = a;
  c.b = b;
  c.m = m;
  c.n = n;
  c.m_left_projective = is_projective(m.left_module());
  c.m_right_projective = is_projective(m.right_module());
  c.n_left_projective = is_projective(n.left_module());
  c.n_right_projective = is_projective(n.right_module());
  auto fail = [&](Certificate::Status s, std::string why) {
    c.status = s;
    c.failure = std::move(why);
    return c;
  };
  if (!c.m_left_projective) return fail(Certificate::Status::Invalid, "M is not projective as a left module");
  if (!c.m_right_projective) return fail(Certificate::Status::Invalid, "M is not projective as a right module");
  if (!c.n_left_projective) return fail(Certificate::Status::Invalid, "N is not projective as a left module");
  if (!c.n_right_projective) return fail(Certificate::Status::Invalid, "N is not projective as a right module");

  using Failure = std::optional<std::pair<Certificate::Status, std::string>>;
  auto side = [&](const Bimodule& x, const Bimodule& y, const char* name, std::uint64_t s,
                  std::optional<Decomposition>& out) -> Failure {
    Bimodule t = tensor_over(x, y);
    std::size_t base = t.left_algebra().dim();
    if (t.dim() < base)
      return std::make_pair(Certificate::Status::Invalid, std::string(name) + " has dimension " +
                                                              std::to_string(t.dim()) + " < " + std::to_string(base));
    std::size_t used = 0;
    out = split_regular_summand(t, s, trials, &used);
    if (!out)
      return std::make_pair(Certificate::Status::Inconclusive, std::string("no regular summand found in ") + name +
                                                                   " after " + std::to_string(used) + " trials");
    if (!out->complement_projective)
      return std::make_pair(Certificate::Status::Invalid, std::string("complement in ") + name +
                                                              " is not a projective bimodule");
    return std::nullopt;
  };
  if (auto e = side(m, n, "M (x) N", seed, c.mn)) return fail(e->first, e->second);
  if (auto e = side(n, m, "N (x) M", seed + 1, c.nm)) return fail(e->first, e->second);
  c.status = Certificate::Status::Valid;
  return c;
}

bool recheck(const Certificate& c) {
  if (!c.valid() || !c.mn || !c.nm) return false;
  if (!is_projective(c.m.left_module()) || !is_projective(c.m.right_module()) || !is_projective(c.n.left_module()) ||
      !is_projective(c.n.right_module()))
    return false;
  auto check = [](const Decomposition& d, const Algebra& alg) {
    Bimodule sum = bimodule_direct_sum({Bimodule::regular(alg), d.complement});
    return is_bimodule_map(d.iso, sum, d.tensor) && (d.iso * d.inverse).is_identity() &&
           (d.inverse * d.iso).is_identity() && is_bimodule_projective(d.complement);
  };
  return check(*c.mn, c.a) && check(*c.nm, c.b);
}

Bimodule bimodule_from_enveloping(const Module& e, const Algebra& left, const Algebra& right) {
  std::size_t db = right.dim();
  Field f = left.field();
  std::vector<Mat> l, r;
  for (std::size_t i = 0; i < left.dim(); ++i) l.push_back(e.act_by(kron_vec(f, unit_vector(i), right.unit(), db)));
  for (std::size_t j = 0; j < db; ++j) r.push_back(e.act_by(kron_vec(f, left.unit(), unit_vector(j), db)));
  return Bimodule::from_actions(left, right, e.dim(), std::move(l), std::move(r), true);
}

Bimodule bimodule_syzygy_generator(const Algebra& a) {
  if (!is_self_injective(a)) throw StableMoritaError("bimodule_syzygy_generator: algebra is not self-injective");
  Module env = Bimodule::regular(a).enveloping_module();
  return bimodule_from_enveloping(syzygy(env), a, a);
}

Module transport(const Bimodule& n, const Module& x) { return tensor_over(n, x); }

Mat transport_map(const Bimodule& n, const Module& x, const Module& x2, const Mat& f) {
  return tensor_map(tensor_space(n.right_module(), x), tensor_space(n.right_module(), x2), f);
}

Mat ext_functor(const Bimodule& n, const ExtSpace& src, const ExtSpace& dst) {
  Field fld = n.field();
  Mat out = zero_map(fld, dst.dim(), src.dim());
  if (src.dim() == 0 || dst.dim() == 0) return out;
  std::size_t d = src.degree;
  if (dst.degree != d) throw StableMoritaError("ext_functor: degree mismatch");
  const Resolution& p = *src.res;
  const Resolution& q = *dst.res;
  const Module& rn = n.right_module();
  TensorSpace tsx = tensor_space(rn, p.module);
  if (tsx.dim() != q.module.dim()) throw StableMoritaError("ext_functor: target resolution does not resolve N (x) X");
  std::vector<TensorSpace> ts;
  std::vector<Module> tp;
  for (std::size_t k = 0; k <= d; ++k) {
    ts.push_back(tensor_space(rn, p.terms[k].module));
    tp.push_back(tensor_over(n, p.terms[k].module));
  }
  // Comparison map Q -> N (x) P over the identity of N (x) X.
  Mat prev;
  for (std::size_t k = 0; k <= d; ++k) {
    Mat td = k == 0 ? tensor_map(ts[0], tsx, p.differentials[0]) : tensor_map(ts[k], ts[k - 1], p.differentials[k]);
    LinearSolver solver(td);
    const ProjectiveModule& qk = q.terms[k];
    std::vector<SparseVec> values;
    for (std::size_t s = 0; s < qk.summands(); ++s) {
      SparseVec w = k == 0 ? q.differentials[0].apply(qk.generator(s))
                           : prev.apply(q.differentials[k].apply(qk.generator(s)));
      auto z = solver.solve(w);
      if (!z) throw StableMoritaError("internal: comparison map does not lift");
      const auto& e = indecomposable_projective(n.left_algebra(), qk.classes[s]).idempotent;
      values.push_back(tp[k].apply(e, *z));
    }
    prev = qk.map_to(tp[k], values);
  }
  TensorSpace tsy = tensor_space(rn, src.target);
  std::size_t nd = dst.target.dim();
  if (tsy.dim() != nd) throw StableMoritaError("ext_functor: target is not N (x) X'");
  const ProjectiveModule& qd = q.terms[d];
  for (std::size_t k = 0; k < src.dim(); ++k) {
    Mat comp = tensor_map(ts[d], tsy, src.as_map(src.rep(k))) * prev;
    SparseVec c;
    for (std::size_t s = 0; s < qd.summands(); ++s)
      for (auto& x : comp.apply(qd.generator(s))) c.push_back({static_cast<std::uint32_t>(x.idx + s * nd), x.val});
    for (const auto& e : dst.coords(c)) out.set(e.idx, k, e.val);
  }
  return out;
}

GeneratorReport is_generator(const Module& x) {
  const Algebra& a = x.algebra();
  GeneratorReport rep;
  for (std::size_t t = 0; t < a.structure().num_classes(); ++t) {
    const Module& p = indecomposable_projective(a, t).module;
    HomBasis in = hom_basis(p, x), out = hom_basis(x, p);
    std::optional<std::pair<Mat, Mat>> found;
    // End(P_t) is local, so some pair of basis maps composes to a unit when P_t splits off.
    for (const auto& f : in.basis) {
      for (const auto& g : out.basis) {
        Mat c = g * f;
        if (!invertible(c)) continue;
        found = std::make_pair(f, *inverse(c) * g);
        break;
      }
      if (found) break;
    }
    if (!found) {
      rep.missing_class = t;
      return rep;
    }
    rep.splittings.push_back(std::move(*found));
  }
  rep.generator = true;
  return rep;
}

namespace {

// Matrix (cols indexed by src.space basis) of the functor on every block.
Mat green_functor(const Bimodule& n, const GreenSpace& src, const GreenSpace& dst) {
  Field fld = n.field();
  Mat out = zero_map(fld, dst.dim(), src.dim());
  std::map<std::size_t, Mat> per_degree;
  for (const auto& [deg, e] : src.ext) per_degree.emplace(deg, ext_functor(n, e, dst.ext.at(deg)));
  for (std::size_t b = 0; b < src.dim(); ++b) {
    const GreenIndex& g = src.basis[b];
    const Mat& m = per_degree.at(g.j - g.i);
    std::size_t off = dst.index(g.i, g.j, 0);
    for (const auto& e : m.column(g.k)) out.set(off + e.idx, b, e.val);
  }
  return out;
}

}  // namespace

Theorem1Data theorem1_bimodules(const Certificate& cert, const Module& x, const std::vector<std::size_t>& phi0) {
  if (!cert.valid()) throw StableMoritaError("theorem1_bimodules: certificate is not valid");
  require_same_algebra(x.algebra(), cert.a, "theorem1_bimodules");
  auto gen = is_generator(x);
  if (!gen.generator)
    throw StableMoritaError("theorem1_bimodules: module is not a generator (projective class " +
                            std::to_string(*gen.missing_class) + " is not a summand)");
  std::vector<std::size_t> phi = admissible_set(phi0);
  std::size_t depth = phi.back() + 1;
  Theorem1Data d;
  d.input = cert;
  d.x = x;
  d.y = transport(cert.n, x);
  d.mny = transport(cert.m, d.y);
  d.lambda = green_algebra(x, phi);
  d.gamma = green_algebra(d.y, phi);
  Field fld = x.field();

  // U = G(X, M N X) with the right action through M (x) -.
  d.u_space = green_space(x, d.mny, phi, d.lambda.space.res_x);
  GreenSpace h = green_space(d.mny, d.mny, phi, resolve(d.mny, depth));
  d.g_map = green_functor(cert.m, d.gamma.space, h);
  std::size_t du = d.u_space.dim();
  auto lp = green_products(d.lambda.space, d.u_space, d.u_space);
  auto rp = green_products(d.u_space, h, d.u_space);
  std::vector<Mat> ul, ur;
  for (std::size_t a = 0; a < d.lambda.space.dim(); ++a) ul.push_back(Mat::from_columns(fld, du, lp[a]));
  for (std::size_t b = 0; b < d.gamma.space.dim(); ++b) {
    SparseVec gb = d.g_map.column(b);
    std::vector<SparseVec> cols(du);
    for (std::size_t u = 0; u < du; ++u)
      for (const auto& e : gb) cols[u] = sparse_axpy(fld, cols[u], e.val, rp[u][e.idx]);
    ur.push_back(Mat::from_columns(fld, du, cols));
  }
  d.u = Bimodule::from_actions(d.lambda.algebra, d.gamma.algebra, du, std::move(ul), std::move(ur), true);

  // V = Gamma with the right action through N (x) -.
  d.f_map = green_functor(cert.n, d.lambda.space, d.gamma.space);
  std::vector<Mat> vl, vr;
  for (std::size_t b = 0; b < d.gamma.algebra.dim(); ++b) vl.push_back(d.gamma.algebra.left_regular(b));
  for (std::size_t a = 0; a < d.lambda.algebra.dim(); ++a) vr.push_back(d.gamma.algebra.right_mult(d.f_map.column(a)));
  d.v = Bimodule::from_actions(d.gamma.algebra, d.lambda.algebra, d.gamma.algebra.dim(), std::move(vl), std::move(vr),
                               true);
  return d;
}

Certificate verify_theorem1(const Theorem1Data& d, std::uint64_t seed, std::size_t trials) {
  return check_certificate(d.lambda.algebra, d.gamma.algebra, d.u, d.v, seed, trials);
}

Certificate green_morita_certificate(const GreenAlgebra& g1, const GreenAlgebra& g2, std::uint64_t seed,
                                     std::size_t trials) {
  GreenBimodule m = green_bimodule(g1, g2), n = green_bimodule(g2, g1);
  return check_certificate(g1.algebra, g2.algebra, m.bimodule, n.bimodule, seed, trials);
}

Certificate compose(const Certificate& c1, const Certificate& c2, std::uint64_t seed, std::size_t trials) {
  require_same_algebra(c1.b, c2.a, "compose");
  return check_certificate(c1.a, c2.b, tensor_over(c1.m, c2.m), tensor_over(c2.n, c1.n), seed, trials);
}

std::size_t OrbitFingerprint::certified_isos() const {
  std::size_t c = 0;
  for (const auto& row : verdicts)
    for (const auto& v : row) c += v.isomorphic();
  return c;
}

std::size_t OrbitFingerprint::undecided() const {
  std::size_t c = 0;
  for (const auto& row : verdicts)
    for (const auto& v : row) c += v.kind == IsoVerdict::Kind::Undecided;
  return c;
}

OrbitFingerprint orbit_fingerprint(const Module& w, std::size_t r, std::uint64_t seed, std::size_t trials) {
  const Algebra& a = w.algebra();
  OrbitFingerprint o;
  o.base = w;
  o.syzygies.push_back(w);
  for (std::size_t i = 1; i <= r; ++i) {
    const Module& prev = o.syzygies.back();
    o.syzygies.push_back(prev.dim() == 0 ? prev : syzygy(prev));
  }
  std::vector<Module> simples;
  for (std::size_t t = 0; t < a.structure().num_classes(); ++t) simples.push_back(simple_module(a, t));
  for (const auto& m : o.syzygies) {
    std::vector<std::size_t> inv{m.dim(), m.dim() == 0 ? 0 : hom_basis(m, m).dim()};
    for (const auto& s : simples) inv.push_back(m.dim() == 0 ? 0 : hom_basis(s, m).dim());
    for (const auto& s : simples) inv.push_back(m.dim() == 0 ? 0 : hom_basis(m, s).dim());
    o.invariants.push_back(std::move(inv));
  }
  o.verdicts.resize(o.syzygies.size());
  for (std::size_t i = 0; i < o.syzygies.size(); ++i)
    for (std::size_t j = i + 1; j < o.syzygies.size(); ++j) {
      const Module &x = o.syzygies[i], &y = o.syzygies[j];
      IsoVerdict v;
      if (x.dim() == 0 && y.dim() == 0) {
        v.kind = IsoVerdict::Kind::Isomorphic;
        v.forward = v.backward = Mat::zero(a.field(), 0, 0);
      } else {
        v = iso_test(x, y, seed + i * 1009 + j, trials);
      }
      o.verdicts[i].push_back(std::move(v));
    }
  return o;
}

}  // namespace fdalg
