#include "fdalg/homology.hpp"

#include <algorithm>

namespace fdalg {

namespace {

void extend(Resolution& r, std::size_t d) {
  if (r.terms.empty()) {
    ProjectiveCover pc = projective_cover(r.module);
    Subspace ker = Subspace::span(r.module.field(), pc.projective.module.dim(), kernel_basis(pc.epi).columns());
    r.terms.push_back(pc.projective);
    r.differentials.push_back(pc.epi);
    r.syzygies.push_back(submodule(pc.projective.module, ker));
    r.terminated = ker.dim() == 0;
  }
  while (!r.terminated && r.terms.size() <= d) {
    const SubmoduleResult& k = r.syzygies.back();
    ProjectiveCover pc = projective_cover(k.module);
    Subspace ker = Subspace::span(r.module.field(), pc.projective.module.dim(), kernel_basis(pc.epi).columns());
    Mat di = k.inclusion * pc.epi;
    r.terms.push_back(pc.projective);
    r.differentials.push_back(std::move(di));
    r.syzygies.push_back(submodule(pc.projective.module, ker));
    r.terminated = ker.dim() == 0;
  }
}

const SparseVec& class_idempotent(const Algebra& a, std::size_t t) {
  const auto& st = a.structure();
  return st.idempotents[st.class_rep[t]];
}

}  // namespace

const LinearSolver& Resolution::solver(std::size_t k) const {
  std::lock_guard<std::mutex> lock(mu);
  if (solvers.size() <= k) solvers.resize(k + 1);
  if (!solvers[k]) solvers[k] = std::make_shared<const LinearSolver>(differentials.at(k));
  return *solvers[k];
}

std::shared_ptr<const Resolution> resolve(const Module& m, std::size_t d) {
  auto r = std::make_shared<Resolution>();
  r->module = m;
  extend(*r, d);
  return r;
}

std::shared_ptr<const Resolution> deepen(const std::shared_ptr<const Resolution>& r, std::size_t d) {
  if (r->terminated || r->terms.size() > d) return r;
  auto n = std::make_shared<Resolution>();
  n->module = r->module;
  n->terms = r->terms;
  n->differentials = r->differentials;
  n->syzygies = r->syzygies;
  extend(*n, d);
  return n;
}

void verify_resolution(const Resolution& r) {
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    const Module& src = r.terms[i].module;
    const Module& tgt = i == 0 ? r.module : r.terms[i - 1].module;
    if (!is_homomorphism(r.differentials[i], src, tgt)) throw HomologyError("differential is not a homomorphism");
    if (i > 0 && !(r.differentials[i - 1] * r.differentials[i]).is_zero())
      throw HomologyError("consecutive differentials do not compose to zero");
    // Exactness: image of d_{i+1} equals the kernel of d_i.
    std::size_t ker = src.dim() - rank(r.differentials[i]);
    std::size_t img = i + 1 < r.terms.size() ? rank(r.differentials[i + 1]) : (r.terminated ? 0 : ker);
    if (ker != img) throw HomologyError("resolution is not exact at degree " + std::to_string(i));
    // Minimality: the image of d_{i+1} lies in rad P_i.
    if (i + 1 < r.terms.size()) {
      Subspace rad = radical_subspace(src);
      for (const auto& c : r.differentials[i + 1].columns())
        if (!rad.contains(c)) throw HomologyError("resolution is not minimal at degree " + std::to_string(i));
    }
  }
  if (rank(r.differentials[0]) != r.module.dim()) throw HomologyError("augmentation is not surjective");
}

// ---------------------------------------------------------------------------
// Ext

std::size_t ExtSpace::summands() const { return degree < res->terms.size() ? res->terms[degree].summands() : 0; }

SparseVec ExtSpace::cochain(const SparseVec& cls) const {
  SparseVec c;
  for (const auto& e : cls) c = sparse_axpy(target.field(), c, e.val, rep(e.idx));
  return c;
}

Mat ExtSpace::as_map(const SparseVec& cochain) const {
  const ProjectiveModule& p = res->terms.at(degree);
  std::size_t n = target.dim();
  std::vector<SparseVec> values(p.summands());
  for (const auto& e : cochain) values[e.idx / n].push_back({static_cast<std::uint32_t>(e.idx % n), e.val});
  return p.map_to(target, values);
}

namespace {

// Generator images d(gen_s) split into components over the previous term.
std::vector<std::vector<SparseVec>> differential_components(const Resolution& r, std::size_t i) {
  const ProjectiveModule& src = r.terms[i];
  const ProjectiveModule& tgt = r.terms[i - 1];
  std::vector<std::vector<SparseVec>> out;
  for (std::size_t s = 0; s < src.summands(); ++s) out.push_back(tgt.components(r.differentials[i].apply(src.generator(s))));
  return out;
}

}  // namespace

ExtSpace ext(const std::shared_ptr<const Resolution>& res0, const Module& n, std::size_t i) {
  require_same_algebra(res0->module.algebra(), n.algebra(), "ext");
  auto res = deepen(res0, i + 1);
  const Algebra& a = n.algebra();
  Field f = n.field();
  ExtSpace e;
  e.res = res;
  e.target = n;
  e.degree = i;
  std::size_t nd = n.dim();
  if (i >= res->terms.size()) {
    e.coboundaries = Subspace::span(f, 0, {});
    e.classes = e.coboundaries;
    return e;
  }
  const ProjectiveModule& p = res->terms[i];
  std::size_t amb = p.summands() * nd;

  std::vector<Subspace> corner(a.structure().num_classes());
  std::vector<char> have(corner.size(), 0);
  auto corner_of = [&](std::size_t t) -> const Subspace& {
    if (!have[t]) {
      corner[t] = Subspace::column_space(n.act_by(class_idempotent(a, t)));
      have[t] = 1;
    }
    return corner[t];
  };

  // Cocycles: parametrize v_s in e_t N and impose v o d_{i+1} = 0.
  std::vector<SparseVec> param_to_ambient;
  std::vector<SparseVec> eq_cols;
  std::vector<std::vector<SparseVec>> comps;
  if (i + 1 < res->terms.size()) comps = differential_components(*res, i + 1);
  for (std::size_t s = 0; s < p.summands(); ++s) {
    for (const auto& b : corner_of(p.classes[s]).basis()) {
      param_to_ambient.push_back(sparse_shift(b, s * nd));
      SparseVec col;
      for (std::size_t r = 0; r < comps.size(); ++r)
        if (!comps[r][s].empty()) {
          SparseVec img = n.apply(comps[r][s], b);
          for (auto& x : img) col.push_back({static_cast<std::uint32_t>(x.idx + r * nd), x.val});
        }
      eq_cols.push_back(std::move(col));
    }
  }
  std::vector<SparseVec> cocycles;
  Mat eqs = Mat::from_columns(f, comps.size() * nd, eq_cols);
  for (const auto& k : kernel_basis(eqs).columns()) {
    SparseVec v;
    for (const auto& x : k) v = sparse_axpy(f, v, x.val, param_to_ambient[x.idx]);
    cocycles.push_back(std::move(v));
  }

  // Coboundaries: psi o d_i for psi supported on one summand of P_{i-1}.
  std::vector<SparseVec> bvecs;
  if (i > 0) {
    auto dc = differential_components(*res, i);
    const ProjectiveModule& prev = res->terms[i - 1];
    for (std::size_t sp = 0; sp < prev.summands(); ++sp)
      for (const auto& w : corner_of(prev.classes[sp]).basis()) {
        SparseVec v;
        for (std::size_t s = 0; s < p.summands(); ++s)
          if (!dc[s][sp].empty())
            for (auto& x : n.apply(dc[s][sp], w)) v.push_back({static_cast<std::uint32_t>(x.idx + s * nd), x.val});
        if (!v.empty()) bvecs.push_back(std::move(v));
      }
  }
  e.coboundaries = Subspace::span(f, amb, bvecs);
  std::vector<SparseVec> nf;
  for (const auto& z : cocycles) nf.push_back(e.coboundaries.reduce(z));
  e.classes = Subspace::span(f, amb, nf);
  return e;
}

ExtSpace ext(const Module& m, const Module& n, std::size_t i) { return ext(resolve(m, i + 1), n, i); }

Module ext_right_module(const ExtSpace& e, const Bimodule& y) {
  if (y.dim() != e.target.dim() || !y.left_algebra().same_as(e.target.algebra()))
    throw HomologyError("ext_right_module: bimodule does not match the Ext target");
  const Algebra& op = y.right_module().algebra();
  std::vector<Mat> action;
  for (std::size_t b = 0; b < op.dim(); ++b) {
    if (e.dim() == 0) {
      action.push_back(Mat::zero(e.target.field(), 0, 0));
      continue;
    }
    Mat post = block_diagonal(std::vector<Mat>(e.summands(), y.right_act(b)));
    std::vector<SparseVec> cols;
    for (std::size_t k = 0; k < e.dim(); ++k) cols.push_back(e.coords(post.apply(e.rep(k))));
    action.push_back(Mat::from_columns(e.target.field(), e.dim(), cols));
  }
  return Module::from_action(op, e.dim(), std::move(action));
}

SparseVec hom_to_cochain(const Resolution& r, const Mat& f, const Module& n) {
  const ProjectiveModule& p = r.terms[0];
  SparseVec c;
  for (std::size_t s = 0; s < p.summands(); ++s)
    for (auto& x : f.apply(r.differentials[0].apply(p.generator(s))))
      c.push_back({static_cast<std::uint32_t>(x.idx + s * n.dim()), x.val});
  return c;
}

// ---------------------------------------------------------------------------
// Yoneda products

ChainLift lift_cochain(const Resolution& x, std::size_t i, const Mat& cocycle, const Resolution& y, std::size_t depth) {
  ChainLift out;
  out.degree = i;
  const Algebra& a = x.module.algebra();
  Mat prev = cocycle;  // P^X_{i+k-1} -> P^Y_{k-1}, or the cocycle itself for k = 0
  for (std::size_t k = 0; k <= depth; ++k) {
    if (i + k >= x.terms.size()) break;
    const ProjectiveModule& src = x.terms[i + k];
    if (k >= y.terms.size()) {
      out.maps.push_back(Mat(a.field(), 0, src.module.dim()));
      prev = out.maps.back();
      continue;
    }
    const ProjectiveModule& tgt = y.terms[k];
    std::vector<SparseVec> values;
    for (std::size_t s = 0; s < src.summands(); ++s) {
      SparseVec w = k == 0 ? prev.apply(src.generator(s)) : prev.apply(x.differentials[i + k].apply(src.generator(s)));
      auto sol = y.solver(k).solve(w);
      if (!sol) throw HomologyError("internal: chain map lifting system is inconsistent");
      values.push_back(tgt.module.apply(class_idempotent(a, src.classes[s]), *sol));
    }
    out.maps.push_back(src.map_to(tgt.module, values));
    prev = out.maps.back();
  }
  return out;
}

SparseVec yoneda_from_lift(const ChainLift& lift, const ExtSpace& gs, const SparseVec& g, const ExtSpace& out) {
  std::size_t j = gs.degree;
  if (out.degree != lift.degree + j) throw HomologyError("yoneda_product: output degree mismatch");
  if (j >= lift.maps.size() || out.dim() == 0 || j >= gs.res->terms.size()) return {};
  Mat comp = gs.as_map(gs.cochain(g)) * lift.maps[j];
  const ProjectiveModule& p = out.res->terms[out.degree];
  std::size_t nd = out.target.dim();
  SparseVec c;
  for (std::size_t s = 0; s < p.summands(); ++s)
    for (auto& x : comp.apply(p.generator(s))) c.push_back({static_cast<std::uint32_t>(x.idx + s * nd), x.val});
  return out.coords(c);
}

SparseVec yoneda_product(const ExtSpace& fs, const SparseVec& f, const ExtSpace& gs, const SparseVec& g,
                         const ExtSpace& out) {
  if (out.degree != fs.degree + gs.degree) throw HomologyError("yoneda_product: output degree mismatch");
  if (fs.degree >= out.res->terms.size() || fs.res->terms.size() <= fs.degree) return {};
  if (out.res->terms[fs.degree].classes != fs.res->terms[fs.degree].classes)
    throw HomologyError("yoneda_product: f and the output use different resolutions");
  ChainLift lift = lift_cochain(*out.res, fs.degree, fs.as_map(fs.cochain(f)), *gs.res, gs.degree);
  return yoneda_from_lift(lift, gs, g, out);
}

// ---------------------------------------------------------------------------
// probes

std::string GlobalDimensionReport::str() const {
  switch (kind) {
    case Kind::Exact:
      return std::to_string(value);
    case Kind::Infinite:
      return "infinite (" + witness + ")";
    default:
      return ">= " + std::to_string(value);
  }
}

GlobalDimensionReport global_dimension_probe(const Algebra& a, std::size_t cutoff) {
  GlobalDimensionReport rep;
  std::size_t best = 0;
  bool all_terminate = true;
  for (std::size_t t = 0; t < a.structure().num_classes(); ++t) {
    Module s = simple_module(a, t);
    auto r = resolve(s, cutoff);
    if (r->terminated) {
      rep.projective_dims.push_back(r->length());
      best = std::max(best, r->length());
      continue;
    }
    rep.projective_dims.push_back(std::nullopt);
    all_terminate = false;
    // Look for a certified repeat among S, Omega(S), ..., Omega^{cutoff+1}(S).
    std::vector<Module> orbit{s};
    for (const auto& k : r->syzygies) orbit.push_back(k.module);
    for (std::size_t hi = 1; hi < orbit.size(); ++hi)
      for (std::size_t lo = 0; lo < hi; ++lo) {
        if (orbit[hi].dim() != orbit[lo].dim()) continue;
        if (iso_test(orbit[hi], orbit[lo], 0x5EED + hi * 31 + lo, 30).isomorphic()) {
          rep.kind = GlobalDimensionReport::Kind::Infinite;
          rep.witness = "Omega^" + std::to_string(hi) + "(S_" + std::to_string(t) + ") ~ Omega^" + std::to_string(lo) +
                        "(S_" + std::to_string(t) + ")";
          return rep;
        }
      }
  }
  if (all_terminate) {
    rep.kind = GlobalDimensionReport::Kind::Exact;
    rep.value = best;
  } else {
    rep.kind = GlobalDimensionReport::Kind::AtLeast;
    rep.value = cutoff;
  }
  return rep;
}

std::string DominantDimensionReport::str() const { return (at_least ? ">= " : "") + std::to_string(value); }

DominantDimensionReport dominant_dimension(const Algebra& a, std::size_t cutoff) {
  DominantDimensionReport rep;
  Module c = regular_module(a);
  for (std::size_t k = 0; k < cutoff; ++k) {
    if (c.dim() == 0) {
      rep.at_least = true;
      rep.value = cutoff;
      return rep;
    }
    InjectiveEnvelope env = injective_envelope(c);
    if (!is_projective(env.module)) {
      rep.value = k;
      return rep;
    }
    c = quotient_module(env.module, Subspace::column_space(env.mono)).module;
  }
  rep.at_least = true;
  rep.value = cutoff;
  return rep;
}

std::vector<ExtCondition> ext_vanishing_check(const Module& m, const Module& y, const std::vector<std::size_t>& degrees) {
  Module oy = syzygy(y);
  auto rm = resolve(m, 1);
  auto ry = resolve(y, 1);
  std::vector<ExtCondition> out;
  for (auto d : degrees) {
    out.push_back({"Ext^" + std::to_string(d) + "(M, Omega(Y))", d, ext(rm, oy, d).dim()});
    out.push_back({"Ext^" + std::to_string(d) + "(Y, M)", d, ext(ry, m, d).dim()});
  }
  return out;
}

}  // namespace fdalg
