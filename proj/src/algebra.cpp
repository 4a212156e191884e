#include "fdalg/algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

namespace fdalg {

struct Algebra::Data {
  Field field;
  std::size_t dim = 0;
  std::vector<SparseVec> table;
  SparseVec unit;
  std::vector<std::string> labels;
  std::vector<std::size_t> generators;

  std::shared_ptr<const Data> opposite_of;
  std::shared_ptr<const Data> factor_a, factor_b;

  mutable std::mutex opp_mu;
  mutable std::weak_ptr<const Data> opp_cache;

  mutable std::once_flag reg_once;
  mutable std::vector<Mat> left_reg, right_reg;

  mutable std::mutex cache_mu;
  mutable std::map<std::string, std::shared_ptr<const void>> cache;

  mutable std::once_flag struct_once;
  mutable std::shared_ptr<const AlgebraStructure> structure;
  mutable std::exception_ptr struct_error;
};

namespace {

// Dense accumulator for products of sparse vectors.
class Accumulator {
 public:
  Accumulator(Field f, std::size_t n) : f_(f), acc_(n), mark_(n, 0) {}
  void add(const Rational& a, const SparseVec& v) {
    for (const auto& e : v) {
      if (!mark_[e.idx]) {
        mark_[e.idx] = 1;
        touched_.push_back(e.idx);
        acc_[e.idx] = f_.mul(a, e.val);
      } else {
        acc_[e.idx] = f_.add(acc_[e.idx], f_.mul(a, e.val));
      }
    }
  }
  SparseVec take() {
    std::sort(touched_.begin(), touched_.end());
    SparseVec r;
    for (auto j : touched_) {
      if (!acc_[j].is_zero()) r.push_back({j, std::move(acc_[j])});
      acc_[j] = Rational();
      mark_[j] = 0;
    }
    touched_.clear();
    return r;
  }

 private:
  Field f_;
  std::vector<Rational> acc_;
  std::vector<char> mark_;
  std::vector<std::uint32_t> touched_;
};

SparseVec table_mul(Field f, std::size_t n, const std::vector<SparseVec>& table, const SparseVec& a,
                    const SparseVec& b) {
  Accumulator acc(f, n);
  for (const auto& x : a)
    for (const auto& y : b) acc.add(f.mul(x.val, y.val), table[x.idx * n + y.idx]);
  return acc.take();
}

std::vector<std::size_t> greedy_generators(Field f, std::size_t n, const std::vector<SparseVec>& table,
                                           const SparseVec& unit) {
  EchelonBuilder span(f, n);
  std::vector<SparseVec> elems;
  std::vector<std::size_t> gens;
  auto push = [&](SparseVec v) {
    if (span.add(v)) elems.push_back(std::move(v));
  };
  auto left = [&](std::size_t g, const SparseVec& v) {
    Accumulator acc(f, n);
    for (const auto& e : v) acc.add(e.val, table[g * n + e.idx]);
    return acc.take();
  };
  push(unit);
  for (std::size_t c = 0; c < n && span.dim() < n; ++c) {
    if (span.reduce(unit_vector(c)).empty()) continue;
    gens.push_back(c);
    std::size_t old = elems.size();
    for (std::size_t k = 0; k < old; ++k) push(left(c, elems[k]));
    for (std::size_t k = old; k < elems.size(); ++k)
      for (auto g : gens) push(left(g, elems[k]));
  }
  if (span.dim() < n) throw AlgebraError("internal: generator search did not span the algebra");
  return gens;
}

std::string basis_name(const std::vector<std::string>& labels, std::size_t i) {
  return i < labels.size() ? labels[i] : "e" + std::to_string(i);
}

}  // namespace

void validate_algebra(Field f, std::size_t n, const std::vector<SparseVec>& table, const SparseVec& unit) {
  if (table.size() != n * n) throw AlgebraError("structure table has wrong size");
  for (const auto& v : table)
    for (const auto& e : v)
      if (e.idx >= n) throw AlgebraError("structure constant index out of range");
  for (std::size_t i = 0; i < n; ++i) {
    if (table_mul(f, n, table, unit, unit_vector(i)) != unit_vector(i))
      throw AlgebraError("unit law fails: 1*e" + std::to_string(i) + " != e" + std::to_string(i));
    if (table_mul(f, n, table, unit_vector(i), unit) != unit_vector(i))
      throw AlgebraError("unit law fails: e" + std::to_string(i) + "*1 != e" + std::to_string(i));
  }
  Accumulator lhs(f, n), rhs(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const SparseVec& p = table[i * n + j];
      for (std::size_t l = 0; l < n; ++l) {
        for (const auto& e : p) lhs.add(e.val, table[e.idx * n + l]);
        for (const auto& e : table[j * n + l]) rhs.add(e.val, table[i * n + e.idx]);
        if (lhs.take() != rhs.take())
          throw AlgebraError("associativity fails at basis triple (" + std::to_string(i) + ", " + std::to_string(j) +
                             ", " + std::to_string(l) + ")");
      }
    }
}

Algebra Algebra::from_products(Field f, std::size_t dim, std::vector<SparseVec> table, SparseVec unit,
                               std::vector<std::string> labels, bool validate) {
  if (dim == 0) throw AlgebraError("algebra must have positive dimension");
  for (auto& v : table)
    for (auto& e : v) e.val = f.reduce(e.val);
  for (auto& e : unit) e.val = f.reduce(e.val);
  if (validate) validate_algebra(f, dim, table, unit);
  auto d = std::make_shared<Data>();
  d->field = f;
  d->dim = dim;
  d->generators = greedy_generators(f, dim, table, unit);
  d->table = std::move(table);
  d->unit = std::move(unit);
  d->labels = std::move(labels);
  return Algebra(d);
}

Algebra Algebra::from_structure_constants(Field f, std::size_t dim, const std::vector<StructureConstant>& constants,
                                          const SparseVec& unit, std::vector<std::string> labels) {
  std::vector<std::vector<Rational>> dense(dim * dim, std::vector<Rational>(dim));
  for (const auto& c : constants) {
    if (c.i >= dim || c.j >= dim || c.k >= dim)
      throw AlgebraError("structure constant (" + std::to_string(c.i) + ", " + std::to_string(c.j) + ", " +
                         std::to_string(c.k) + ") out of range");
    auto& slot = dense[c.i * dim + c.j][c.k];
    slot = f.add(slot, f.reduce(c.c));
  }
  std::vector<SparseVec> table(dim * dim);
  for (std::size_t t = 0; t < dim * dim; ++t) table[t] = sparse_from_dense(f, dense[t]);
  return from_products(f, dim, std::move(table), unit, std::move(labels), true);
}

Field Algebra::field() const { return d_->field; }
std::size_t Algebra::dim() const { return d_->dim; }
const SparseVec& Algebra::unit() const { return d_->unit; }
const SparseVec& Algebra::product(std::size_t i, std::size_t j) const { return d_->table.at(i * d_->dim + j); }
const std::vector<std::string>& Algebra::labels() const { return d_->labels; }
const std::vector<std::size_t>& Algebra::generators() const { return d_->generators; }

SparseVec Algebra::mul(const SparseVec& a, const SparseVec& b) const {
  return table_mul(d_->field, d_->dim, d_->table, a, b);
}

const Mat& Algebra::left_regular(std::size_t i) const {
  std::call_once(d_->reg_once, [this] {
    std::size_t n = d_->dim;
    d_->left_reg.reserve(n);
    d_->right_reg.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<SparseVec> lc(n), rc(n);
      for (std::size_t k = 0; k < n; ++k) {
        lc[k] = d_->table[i * n + k];
        rc[k] = d_->table[k * n + i];
      }
      d_->left_reg.push_back(Mat::from_columns(d_->field, n, lc));
      d_->right_reg.push_back(Mat::from_columns(d_->field, n, rc));
    }
  });
  return d_->left_reg.at(i);
}

const Mat& Algebra::right_regular(std::size_t i) const {
  left_regular(0);
  return d_->right_reg.at(i);
}

Mat Algebra::left_mult(const SparseVec& a) const {
  Mat m(d_->field, d_->dim, d_->dim);
  for (const auto& e : a) m = m + left_regular(e.idx).scaled(e.val);
  return m;
}

Mat Algebra::right_mult(const SparseVec& a) const {
  Mat m(d_->field, d_->dim, d_->dim);
  for (const auto& e : a) m = m + right_regular(e.idx).scaled(e.val);
  return m;
}

Algebra Algebra::factor(int which) const {
  const auto& p = which == 0 ? d_->factor_a : d_->factor_b;
  return p ? Algebra(p) : Algebra();
}

Algebra Algebra::opposite_source() const { return d_->opposite_of ? Algebra(d_->opposite_of) : Algebra(); }

std::shared_ptr<const void> Algebra::cache_slot(const std::string& key,
                                                const std::function<std::shared_ptr<const void>()>& make) const {
  {
    std::lock_guard<std::mutex> lock(d_->cache_mu);
    auto it = d_->cache.find(key);
    if (it != d_->cache.end()) return it->second;
  }
  auto value = make();
  std::lock_guard<std::mutex> lock(d_->cache_mu);
  return d_->cache.emplace(key, std::move(value)).first->second;
}

bool Algebra::same_as(const Algebra& o) const {
  if (d_ == o.d_) return true;
  if (!d_ || !o.d_) return false;
  return d_->field == o.d_->field && d_->dim == o.d_->dim && d_->unit == o.d_->unit && d_->table == o.d_->table;
}

std::string Algebra::describe() const {
  return "algebra of dimension " + std::to_string(d_->dim) + " over " + d_->field.name();
}

void require_same_algebra(const Algebra& a, const Algebra& b, const char* where) {
  if (!a.same_as(b)) throw AlgebraError(std::string(where) + ": algebra mismatch");
}

// ---------------------------------------------------------------------------
// named families

Algebra nakayama(std::size_t n) {
  if (n == 0) throw AlgebraError("nakayama: n must be positive");
  Field q;
  std::vector<SparseVec> table(n * n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
    for (std::size_t j = 0; j < n; ++j)
      if (i + j < n) table[i * n + j] = unit_vector(i + j);
  }
  return Algebra::from_products(q, n, std::move(table), unit_vector(0), labels);
}

Algebra group_algebra(std::size_t m) {
  if (m == 0) throw AlgebraError("group_algebra: order must be positive");
  std::vector<SparseVec> table(m * m);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back("g" + std::to_string(i));
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = unit_vector((i + j) % m);
  }
  return Algebra::from_products(Field{}, m, std::move(table), unit_vector(0), labels);
}

Algebra liu_schulz(const Rational& q) {
  if (q.is_zero() || q == Rational(1) || q == Rational(-1))
    throw AlgebraError("liu_schulz: q must be nonzero and not a root of unity");
  const std::vector<std::vector<int>> monos = {{}, {0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}, {0, 1, 2}};
  const std::vector<std::string> labels = {"1", "x0", "x1", "x2", "x0x1", "x1x2", "x0x2", "x0x1x2"};
  // x_b x_a = swap(b, a) x_a x_b for b > a.
  auto swap_coef = [&](int b, int a) {
    if (b == 1 && a == 0) return -q;
    if (b == 2 && a == 1) return -q;
    return -q.inv();  // x2 x0 = -q^{-1} x0 x2
  };
  auto index_of = [&](const std::vector<int>& m) {
    for (std::size_t i = 0; i < monos.size(); ++i)
      if (monos[i] == m) return i;
    throw AlgebraError("internal: unknown monomial");
  };
  std::vector<SparseVec> table(64);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      std::vector<int> w = monos[i];
      w.insert(w.end(), monos[j].begin(), monos[j].end());
      Rational coef(1);
      bool zero = false;
      for (std::size_t pass = 0; pass < w.size() && !zero; ++pass)
        for (std::size_t k = 0; k + 1 < w.size(); ++k) {
          if (w[k] == w[k + 1]) {
            zero = true;
            break;
          }
          if (w[k] > w[k + 1]) {
            coef = coef * swap_coef(w[k], w[k + 1]);
            std::swap(w[k], w[k + 1]);
          }
        }
      for (std::size_t k = 0; k + 1 < w.size() && !zero; ++k)
        if (w[k] == w[k + 1]) zero = true;
      if (!zero) table[i * 8 + j] = {Entry{static_cast<std::uint32_t>(index_of(w)), coef}};
    }
  return Algebra::from_products(Field{}, 8, std::move(table), unit_vector(0), labels);
}

Algebra opposite(const Algebra& a) {
  const auto& d = a.d_;
  if (d->opposite_of) return Algebra(d->opposite_of);
  std::lock_guard<std::mutex> lock(d->opp_mu);
  if (auto cached = d->opp_cache.lock()) return Algebra(cached);
  std::size_t n = d->dim;
  std::vector<SparseVec> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = d->table[j * n + i];
  auto o = std::make_shared<Algebra::Data>();
  o->field = d->field;
  o->dim = n;
  o->generators = d->generators;  // reversed words of generators still generate
  o->table = std::move(table);
  o->unit = d->unit;
  o->labels = d->labels;
  o->opposite_of = d;
  d->opp_cache = o;
  return Algebra(o);
}

Algebra tensor_algebra(const Algebra& a, const Algebra& b) {
  require_same_field(a.field(), b.field(), "tensor_algebra");
  Field f = a.field();
  std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
  auto kron_vec = [&](const SparseVec& x, const SparseVec& y) {
    SparseVec r;
    for (const auto& p : x)
      for (const auto& q : y) r.push_back({static_cast<std::uint32_t>(p.idx * nb + q.idx), f.mul(p.val, q.val)});
    return r;
  };
  std::vector<SparseVec> table(n * n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t k = 0; k < na; ++k) {
      const SparseVec& ik = a.product(i, k);
      if (ik.empty()) continue;
      for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t l = 0; l < nb; ++l) table[(i * nb + j) * n + (k * nb + l)] = kron_vec(ik, b.product(j, l));
    }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      labels.push_back(basis_name(a.labels(), i) + "(x)" + basis_name(b.labels(), j));
  // Associativity and unit laws hold factorwise, so the exhaustive check is skipped.
  auto d = std::make_shared<Algebra::Data>();
  d->field = f;
  d->dim = n;
  d->unit = kron_vec(a.unit(), b.unit());
  d->generators = greedy_generators(f, n, table, d->unit);
  d->table = std::move(table);
  d->labels = std::move(labels);
  d->factor_a = a.d_;
  d->factor_b = b.d_;
  return Algebra(d);
}

// ---------------------------------------------------------------------------
// quivers

namespace {

struct QuiverPaths {
  const QuiverPresentation& q;
  std::vector<Path> paths;  // ascending (length, vertex, arrows)
  std::map<std::vector<std::size_t>, std::size_t> index;

  static std::vector<std::size_t> key(const Path& p) {
    if (p.arrows.empty()) return {SIZE_MAX, p.vertex};
    return p.arrows;
  }
  std::size_t source(const Path& p) const { return p.arrows.empty() ? p.vertex : q.arrows[p.arrows.front()].source; }
  std::size_t target(const Path& p) const { return p.arrows.empty() ? p.vertex : q.arrows[p.arrows.back()].target; }
  std::string name(const Path& p) const {
    if (p.arrows.empty()) return "e" + std::to_string(p.vertex);
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) s += (i ? "." : "") + q.arrows[p.arrows[i]].label;
    return s;
  }
  std::optional<Path> concat(const Path& a, const Path& b) const {
    if (target(a) != source(b)) return std::nullopt;
    Path r = a.arrows.empty() ? b : a;
    if (!a.arrows.empty()) r.arrows.insert(r.arrows.end(), b.arrows.begin(), b.arrows.end());
    return r;
  }

  explicit QuiverPaths(const QuiverPresentation& qp) : q(qp) {
    std::vector<Path> layer;
    for (std::size_t v = 0; v < q.vertices; ++v) layer.push_back(Path{v, {}});
    for (std::size_t len = 0; len <= q.cutoff; ++len) {
      for (const auto& p : layer) {
        index[key(p)] = paths.size();
        paths.push_back(p);
      }
      std::vector<Path> next;
      for (const auto& p : layer)
        for (std::size_t a = 0; a < q.arrows.size(); ++a)
          if (q.arrows[a].source == target(p)) {
            Path r{source(p), p.arrows};
            r.arrows.push_back(a);
            next.push_back(std::move(r));
          }
      layer = std::move(next);
    }
  }
};

}  // namespace

Algebra from_quiver(const QuiverPresentation& q) {
  if (q.vertices == 0) throw AlgebraError("quiver must have at least one vertex");
  for (const auto& a : q.arrows)
    if (a.source >= q.vertices || a.target >= q.vertices)
      throw AlgebraError("arrow '" + a.label + "' has an endpoint outside the vertex range");
  QuiverPaths qp(q);
  const std::size_t np = qp.paths.size();
  // Coordinates list long paths first so that elimination keeps short paths.
  auto coord = [&](std::size_t path_index) { return static_cast<std::uint32_t>(np - 1 - path_index); };
  auto path_len = [&](const Path& p) { return p.arrows.size(); };

  for (std::size_t r = 0; r < q.relations.size(); ++r) {
    const auto& rel = q.relations[r];
    if (rel.empty()) throw AlgebraError("relation " + std::to_string(r) + " is empty");
    std::size_t s = qp.source(rel[0].path), t = qp.target(rel[0].path);
    for (const auto& term : rel) {
      for (std::size_t k = 0; k < term.path.arrows.size(); ++k) {
        if (term.path.arrows[k] >= q.arrows.size()) throw AlgebraError("relation " + std::to_string(r) + " uses an unknown arrow");
        if (k > 0 && q.arrows[term.path.arrows[k - 1]].target != q.arrows[term.path.arrows[k]].source)
          throw AlgebraError("relation " + std::to_string(r) + " contains a non-composable path");
      }
      if (term.path.arrows.empty() && term.path.vertex >= q.vertices)
        throw AlgebraError("relation " + std::to_string(r) + " uses an unknown vertex");
      if (qp.source(term.path) != s || qp.target(term.path) != t)
        throw AlgebraError("relation " + std::to_string(r) + " mixes paths with different endpoints");
      if (path_len(term.path) > q.cutoff)
        throw AlgebraError("relation " + std::to_string(r) + " is longer than the cutoff");
    }
  }

  EchelonBuilder ideal(Field{}, np);
  for (const auto& rel : q.relations) {
    std::size_t maxlen = 0;
    for (const auto& t : rel) maxlen = std::max(maxlen, path_len(t.path));
    for (const auto& u : qp.paths) {
      if (path_len(u) + maxlen > q.cutoff) continue;
      for (const auto& v : qp.paths) {
        if (path_len(u) + maxlen + path_len(v) > q.cutoff) continue;
        std::map<std::uint32_t, Rational> acc;
        for (const auto& t : rel) {
          auto left = qp.concat(u, t.path);
          if (!left) continue;
          auto full = qp.concat(*left, v);
          if (!full) continue;
          auto c = coord(qp.index.at(QuiverPaths::key(*full)));
          acc[c] = acc[c] + t.coef;
        }
        SparseVec vec;
        for (auto& [c, val] : acc)
          if (!val.is_zero()) vec.push_back({c, val});
        if (!vec.empty()) ideal.add(vec);
      }
    }
  }
  Subspace I = Subspace::from_builder(ideal);
  std::vector<std::size_t> survivors;  // path indices, ascending
  for (std::size_t c : I.complement_positions()) survivors.push_back(np - 1 - c);
  std::sort(survivors.begin(), survivors.end());
  std::map<std::size_t, std::size_t> basis_of_path;
  for (std::size_t b = 0; b < survivors.size(); ++b) {
    basis_of_path[survivors[b]] = b;
    if (path_len(qp.paths[survivors[b]]) == q.cutoff && q.cutoff > 0)
      throw AlgebraError("not stabilized at cutoff L=" + std::to_string(q.cutoff) + ": path " +
                         qp.name(qp.paths[survivors[b]]) + " does not reduce");
  }
  const std::size_t n = survivors.size();
  Field f;
  auto normal_form = [&](std::size_t path_index) {
    SparseVec nf = I.reduce({Entry{coord(path_index), Rational(1)}});
    SparseVec out;
    for (const auto& e : nf) out.push_back({static_cast<std::uint32_t>(basis_of_path.at(np - 1 - e.idx)), e.val});
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.idx < b.idx; });
    return out;
  };
  // Reduce an arbitrary composable path, splitting it at the cutoff.
  std::function<SparseVec(const Path&)> reduce_path = [&](const Path& p) -> SparseVec {
    if (path_len(p) <= q.cutoff) return normal_form(qp.index.at(QuiverPaths::key(p)));
    Path head{qp.source(p), std::vector<std::size_t>(p.arrows.begin(), p.arrows.begin() + q.cutoff)};
    Path tail{qp.target(head), std::vector<std::size_t>(p.arrows.begin() + q.cutoff, p.arrows.end())};
    SparseVec out;
    for (const auto& e : normal_form(qp.index.at(QuiverPaths::key(head)))) {
      auto joined = qp.concat(qp.paths[survivors[e.idx]], tail);
      if (!joined) continue;
      out = sparse_axpy(f, out, e.val, reduce_path(*joined));
    }
    return out;
  };
  std::vector<SparseVec> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto c = qp.concat(qp.paths[survivors[i]], qp.paths[survivors[j]]);
      if (c) table[i * n + j] = reduce_path(*c);
    }
  SparseVec unit;
  for (std::size_t v = 0; v < q.vertices; ++v) {
    for (const auto& e : normal_form(v)) unit = sparse_axpy(f, unit, Rational(1), {e});
  }
  std::vector<std::string> labels;
  for (auto s : survivors) labels.push_back(qp.name(qp.paths[s]));
  try {
    return Algebra::from_products(f, n, std::move(table), unit, labels);
  } catch (const AlgebraError& e) {
    throw AlgebraError(std::string("quiver quotient is inconsistent at cutoff L=") + std::to_string(q.cutoff) + ": " +
                       e.what());
  }
}

// ---------------------------------------------------------------------------
// radical and idempotents

namespace {

struct Small {
  Field f;
  std::size_t n;
  std::vector<SparseVec> table;
  SparseVec mul(const SparseVec& a, const SparseVec& b) const { return table_mul(f, n, table, a, b); }
};

// Integer divisors of |v| for |v| <= 10^12, else empty.
std::vector<mpz_class> small_divisors(const mpz_class& v) {
  mpz_class a = abs(v);
  std::vector<mpz_class> out;
  if (a == 0 || a > mpz_class("1000000000000")) return out;
  unsigned long long x = a.get_ui();
  for (unsigned long long d = 1; d * d <= x; ++d)
    if (x % d == 0) {
      out.emplace_back(static_cast<unsigned long>(d));
      if (d * d != x) out.emplace_back(static_cast<unsigned long>(x / d));
    }
  return out;
}

std::optional<Rational> rational_root(const std::vector<Rational>& coef) {
  // coef[i] multiplies t^i.
  if (coef.empty()) return std::nullopt;
  if (coef[0].is_zero()) return Rational();
  mpz_class l = 1;
  for (const auto& c : coef) {
    mpz_class d = c.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<mpz_class> ic;
  for (const auto& c : coef) {
    mpq_class v = c.to_mpq() * l;
    ic.push_back(v.get_num());
  }
  auto ps = small_divisors(ic.front());
  auto qs = small_divisors(ic.back());
  for (const auto& p : ps)
    for (const auto& qd : qs)
      for (int sgn : {1, -1}) {
        mpq_class lam(p * sgn, qd);
        lam.canonicalize();
        mpq_class val = 0;
        for (std::size_t i = ic.size(); i-- > 0;) val = val * lam + ic[i];
        if (val == 0) return Rational(lam);
      }
  return std::nullopt;
}

// Finds a nontrivial idempotent of the corner algebra eSe, or nullopt when
// eSe is one-dimensional.
std::optional<SparseVec> split_corner(const Small& s, const SparseVec& e) {
  Field f = s.f;
  std::vector<SparseVec> corner_vecs;
  for (std::size_t i = 0; i < s.n; ++i) corner_vecs.push_back(s.mul(s.mul(e, unit_vector(i)), e));
  Subspace C = Subspace::span(f, s.n, corner_vecs);
  if (C.dim() <= 1) return std::nullopt;

  std::vector<SparseVec> candidates = C.basis();
  for (std::size_t i = 0; i < C.dim(); ++i)
    for (std::size_t j = i + 1; j < C.dim(); ++j) candidates.push_back(sparse_axpy(f, C.basis()[i], Rational(1), C.basis()[j]));
  std::mt19937_64 rng(0x5EED);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int t = 0; t < 64; ++t) {
    SparseVec z;
    for (const auto& b : C.basis()) z = sparse_axpy(f, z, Rational(dist(rng)), b);
    candidates.push_back(z);
  }

  for (const auto& z : candidates) {
    if (z.empty()) continue;
    std::vector<SparseVec> powers{e};
    EchelonBuilder eb(f, s.n);
    eb.add(e);
    for (;;) {
      SparseVec next = s.mul(powers.back(), z);
      powers.push_back(next);
      if (!eb.add(next)) break;
    }
    if (powers.size() <= 2) continue;  // z is a scalar multiple of e
    Mat k = kernel_basis(Mat::from_columns(f, s.n, powers));
    if (k.cols() != 1) continue;
    std::vector<Rational> coef = dense_from_sparse(k.column(0), powers.size());
    auto lam = rational_root(coef);
    if (!lam) continue;
    SparseVec w = sparse_axpy(f, z, -*lam, e);
    // L = C w is a proper nonzero left ideal of C; its right identity is the idempotent.
    std::vector<SparseVec> lvecs;
    for (const auto& c : C.basis()) lvecs.push_back(s.mul(c, w));
    Subspace L = Subspace::span(f, s.n, lvecs);
    if (L.dim() == 0 || L.dim() == C.dim()) continue;
    // Unknown x in L-coordinates: for each basis l_j, sum_k x_k l_j l_k = l_j.
    std::size_t m = L.dim();
    Mat sys(f, s.n * m, m);
    Mat rhs(f, s.n * m, 1);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k)
        for (const auto& x : s.mul(L.basis()[j], L.basis()[k])) sys.set(j * s.n + x.idx, k, x.val);
      for (const auto& x : L.basis()[j]) rhs.set(j * s.n + x.idx, 0, x.val);
    }
    auto sol = solve(sys, rhs);
    if (!sol) continue;
    SparseVec eps = L.basis_matrix().apply(sol->column(0));
    if (s.mul(eps, eps) != eps) continue;
    return eps;
  }
  throw AlgebraError("non-split semisimple quotient");
}

std::shared_ptr<AlgebraStructure> compute_structure(const Algebra& a) {
  Field f = a.field();
  if (!f.is_rational()) throw AlgebraError("radical requires characteristic 0");
  std::size_t n = a.dim();
  auto out = std::make_shared<AlgebraStructure>();

  // Trace form T(a, b) = tr(L_{ab}).
  std::vector<Rational> t(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) t[k] = t[k] + sparse_at(a.product(k, i), i);
  Mat gram(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    SparseVec row;
    for (std::size_t j = 0; j < n; ++j) {
      Rational v;
      for (const auto& e : a.product(i, j)) v = v + e.val * t[e.idx];
      if (!v.is_zero()) row.push_back({static_cast<std::uint32_t>(j), v});
    }
    gram.set_row(i, std::move(row));
  }
  out->radical = Subspace::span(f, n, kernel_basis(gram).columns());
  for (const auto& r : out->radical.basis())
    for (auto g : a.generators())
      if (!out->radical.contains(a.mul(unit_vector(g), r)) || !out->radical.contains(a.mul(r, unit_vector(g))))
        throw AlgebraError("internal: trace-form kernel is not an ideal");

  // Semisimple quotient on the complement coordinates.
  auto comp = out->radical.complement_positions();
  Small s{f, comp.size(), {}};
  s.table.resize(s.n * s.n);
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = 0; j < s.n; ++j) s.table[i * s.n + j] = out->radical.quotient_coords(a.product(comp[i], comp[j]));
  SparseVec sunit = out->radical.quotient_coords(a.unit());

  std::vector<SparseVec> work{sunit}, prim;
  while (!work.empty()) {
    SparseVec e = work.back();
    work.pop_back();
    auto eps = split_corner(s, e);
    if (!eps) {
      prim.push_back(e);
      continue;
    }
    work.push_back(sparse_axpy(f, e, Rational(-1), *eps));
    work.push_back(*eps);
  }

  // Lift through the radical.
  SparseVec used;
  for (std::size_t i = 0; i < prim.size(); ++i) {
    SparseVec lifted;
    if (i + 1 == prim.size()) {
      lifted = sparse_axpy(f, a.unit(), Rational(-1), used);
    } else {
      SparseVec x;
      for (const auto& e : prim[i]) x.push_back({static_cast<std::uint32_t>(comp[e.idx]), e.val});
      SparseVec rest = sparse_axpy(f, a.unit(), Rational(-1), used);
      x = a.mul(a.mul(rest, x), rest);
      for (int it = 0;; ++it) {
        SparseVec x2 = a.mul(x, x);
        if (x2 == x) break;
        if (it > 64) throw AlgebraError("internal: idempotent lifting did not converge");
        SparseVec x3 = a.mul(x2, x);
        x = sparse_axpy(f, sparse_scale(f, x2, Rational(3)), Rational(-2), x3);
      }
      lifted = x;
    }
    used = sparse_axpy(f, used, Rational(1), lifted);
    out->idempotents.push_back(lifted);
  }
  const auto& id = out->idempotents;
  for (std::size_t i = 0; i < id.size(); ++i)
    for (std::size_t j = 0; j < id.size(); ++j) {
      SparseVec p = a.mul(id[i], id[j]);
      if ((i == j && p != id[i]) || (i != j && !p.empty()))
        throw AlgebraError("internal: lifted idempotents are not orthogonal");
    }
  if (used != a.unit()) throw AlgebraError("internal: idempotents do not sum to 1");

  out->class_of.assign(prim.size(), SIZE_MAX);
  for (std::size_t i = 0; i < prim.size(); ++i) {
    if (out->class_of[i] != SIZE_MAX) continue;
    std::size_t c = out->class_rep.size();
    out->class_rep.push_back(i);
    out->class_of[i] = c;
    std::size_t count = 1;
    for (std::size_t j = i + 1; j < prim.size(); ++j) {
      if (out->class_of[j] != SIZE_MAX) continue;
      bool linked = false;
      for (std::size_t b = 0; b < s.n && !linked; ++b) linked = !s.mul(s.mul(prim[i], unit_vector(b)), prim[j]).empty();
      if (linked) {
        out->class_of[j] = c;
        ++count;
      }
    }
    out->simple_dim.push_back(count);
  }
  return out;
}

std::shared_ptr<AlgebraStructure> tensor_structure(const Algebra& t, const Algebra& a, const Algebra& b) {
  const auto& sa = a.structure();
  const auto& sb = b.structure();
  Field f = t.field();
  std::size_t na = a.dim(), nb = b.dim();
  auto out = std::make_shared<AlgebraStructure>();
  auto kron_vec = [&](const SparseVec& x, const SparseVec& y) {
    SparseVec r;
    for (const auto& p : x)
      for (const auto& q : y) r.push_back({static_cast<std::uint32_t>(p.idx * nb + q.idx), f.mul(p.val, q.val)});
    return r;
  };
  std::vector<SparseVec> rad;
  for (const auto& r : sa.radical.basis())
    for (std::size_t j = 0; j < nb; ++j) rad.push_back(kron_vec(r, unit_vector(j)));
  for (std::size_t i = 0; i < na; ++i)
    for (const auto& r : sb.radical.basis()) rad.push_back(kron_vec(unit_vector(i), r));
  out->radical = Subspace::span(f, na * nb, rad);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cls;
  for (std::size_t i = 0; i < sa.idempotents.size(); ++i)
    for (std::size_t j = 0; j < sb.idempotents.size(); ++j) {
      std::size_t idx = out->idempotents.size();
      out->idempotents.push_back(kron_vec(sa.idempotents[i], sb.idempotents[j]));
      auto key = std::make_pair(sa.class_of[i], sb.class_of[j]);
      auto it = cls.find(key);
      if (it == cls.end()) {
        it = cls.emplace(key, out->class_rep.size()).first;
        out->class_rep.push_back(idx);
        out->simple_dim.push_back(sa.simple_dim[key.first] * sb.simple_dim[key.second]);
      }
      out->class_of.push_back(it->second);
    }
  return out;
}

}  // namespace

const AlgebraStructure& Algebra::structure() const {
  std::call_once(d_->struct_once, [this] {
    try {
      if (d_->opposite_of) {
        d_->structure = std::make_shared<AlgebraStructure>(Algebra(d_->opposite_of).structure());
      } else if (d_->factor_a) {
        d_->structure = tensor_structure(*this, Algebra(d_->factor_a), Algebra(d_->factor_b));
      } else {
        d_->structure = compute_structure(*this);
      }
    } catch (...) {
      d_->struct_error = std::current_exception();
    }
  });
  if (d_->struct_error) std::rethrow_exception(d_->struct_error);
  return *d_->structure;
}

Subspace radical(const Algebra& a) { return a.structure().radical; }

std::vector<SparseVec> primitive_idempotents(const Algebra& a) { return a.structure().idempotents; }

}  // namespace fdalg
