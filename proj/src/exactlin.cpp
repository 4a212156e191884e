#include "fdalg/exactlin.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace fdalg {
namespace {

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<unsigned __int128>(r) * b % m);
    b = static_cast<std::int64_t>(static_cast<unsigned __int128>(b) * b % m);
    e >>= 1;
  }
  return r;
}

std::int64_t mpz_mod(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return static_cast<std::int64_t>(r.get_ui());
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p < 2 || p >= (1u << 31)) throw std::invalid_argument("prime field modulus must be in [2, 2^31)");
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("field modulus " + std::to_string(p) + " is not prime");
  return Field{p};
}

Rational Field::reduce(const Rational& x) const {
  if (p == 0) return x;
  std::int64_t n, d;
  if (x.is_small()) {
    n = x.small_num() % static_cast<std::int64_t>(p);
    if (n < 0) n += p;
    d = x.small_den() % static_cast<std::int64_t>(p);
  } else {
    n = mpz_mod(x.numerator(), p);
    d = mpz_mod(x.denominator(), p);
  }
  if (d == 0) throw std::domain_error("denominator vanishes in " + name());
  if (d == 1) return Rational(n);
  return Rational(static_cast<std::int64_t>(static_cast<unsigned __int128>(n) * mod_pow(d, p - 2, p) % p));
}

Rational Field::inv(const Rational& a) const {
  if (a.is_zero()) throw std::domain_error("division by zero in " + name());
  if (p == 0) return a.inv();
  return Rational(mod_pow(a.small_num(), p - 2, p));
}

void require_same_field(Field a, Field b, const char* where) {
  if (a != b) throw FieldMismatch(std::string(where) + ": field mismatch (" + a.name() + " vs " + b.name() + ")");
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_field(a.field, b.field, "Scalar+");
  Scalar r;
  r.field = a.field;
  r.value = a.field.add(a.value, b.value);
  return r;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_field(a.field, b.field, "Scalar*");
  Scalar r;
  r.field = a.field;
  r.value = a.field.mul(a.value, b.value);
  return r;
}

// ---------------------------------------------------------------------------
// sparse vectors

SparseVec unit_vector(std::size_t i) { return {Entry{static_cast<std::uint32_t>(i), Rational(1)}}; }

SparseVec sparse_from_dense(Field f, const std::vector<Rational>& dense) {
  SparseVec v;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    Rational x = f.reduce(dense[i]);
    if (!x.is_zero()) v.push_back({static_cast<std::uint32_t>(i), std::move(x)});
  }
  return v;
}

std::vector<Rational> dense_from_sparse(const SparseVec& v, std::size_t n) {
  std::vector<Rational> d(n);
  for (const auto& e : v) d.at(e.idx) = e.val;
  return d;
}

Rational sparse_at(const SparseVec& v, std::size_t i) {
  auto it = std::lower_bound(v.begin(), v.end(), i, [](const Entry& e, std::size_t k) { return e.idx < k; });
  if (it != v.end() && it->idx == i) return it->val;
  return Rational();
}

SparseVec sparse_axpy(Field f, const SparseVec& x, const Rational& a, const SparseVec& y) {
  if (a.is_zero() || y.empty()) return x;
  SparseVec r;
  r.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].idx < y[j].idx)) {
      r.push_back(x[i++]);
    } else if (i == x.size() || y[j].idx < x[i].idx) {
      r.push_back({y[j].idx, f.mul(a, y[j].val)});
      ++j;
    } else {
      Rational s = f.add(x[i].val, f.mul(a, y[j].val));
      if (!s.is_zero()) r.push_back({x[i].idx, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

SparseVec sparse_scale(Field f, const SparseVec& x, const Rational& a) {
  if (a.is_zero()) return {};
  SparseVec r;
  r.reserve(x.size());
  for (const auto& e : x) r.push_back({e.idx, f.mul(a, e.val)});
  return r;
}

Rational sparse_dot(Field f, const SparseVec& x, const SparseVec& y) {
  Rational s;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].idx < y[j].idx) {
      ++i;
    } else if (y[j].idx < x[i].idx) {
      ++j;
    } else {
      s = f.add(s, f.mul(x[i].val, y[j].val));
      ++i;
      ++j;
    }
  }
  return s;
}

SparseVec sparse_shift(const SparseVec& v, std::size_t offset) {
  SparseVec r = v;
  for (auto& e : r) e.idx += static_cast<std::uint32_t>(offset);
  return r;
}

// ---------------------------------------------------------------------------
// Mat

Mat Mat::identity(Field f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i] = unit_vector(i);
  return m;
}

Mat Mat::from_dense(Field f, const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  Mat m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ShapeError("from_dense: ragged rows");
    m.data_[i] = sparse_from_dense(f, rows[i]);
  }
  return m;
}

Mat Mat::from_ints(Field f, const std::vector<std::vector<long long>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  std::vector<std::vector<Rational>> r;
  for (const auto& row : rows) {
    std::vector<Rational> q;
    for (long long x : row) q.emplace_back(x);
    r.push_back(std::move(q));
  }
  return from_dense(f, r, cols);
}

Mat Mat::from_columns(Field f, std::size_t rows, const std::vector<SparseVec>& cols) {
  Mat m(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& e : cols[j]) {
      if (e.idx >= rows) throw ShapeError("from_columns: index out of range");
      m.data_[e.idx].push_back({static_cast<std::uint32_t>(j), e.val});
    }
  return m;
}

Mat Mat::from_rows(Field f, std::size_t cols, std::vector<SparseVec> rows) {
  Mat m(f, rows.size(), cols);
  m.data_ = std::move(rows);
  return m;
}

Rational Mat::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw ShapeError("Mat::at out of range");
  return sparse_at(data_[i], j);
}

void Mat::set(std::size_t i, std::size_t j, const Rational& v) {
  if (i >= rows_ || j >= cols_) throw ShapeError("Mat::set out of range");
  Rational x = field_.reduce(v);
  auto& r = data_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t k) { return e.idx < k; });
  if (it != r.end() && it->idx == j) {
    if (x.is_zero())
      r.erase(it);
    else
      it->val = std::move(x);
  } else if (!x.is_zero()) {
    r.insert(it, Entry{static_cast<std::uint32_t>(j), std::move(x)});
  }
}

std::vector<SparseVec> Mat::columns() const {
  std::vector<SparseVec> c(cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : data_[i]) c[e.idx].push_back({static_cast<std::uint32_t>(i), e.val});
  return c;
}

SparseVec Mat::column(std::size_t j) const {
  SparseVec c;
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational x = sparse_at(data_[i], j);
    if (!x.is_zero()) c.push_back({static_cast<std::uint32_t>(i), std::move(x)});
  }
  return c;
}

Mat Mat::transpose() const {
  Mat t(field_, cols_, rows_);
  t.data_ = columns();
  return t;
}

Mat Mat::scaled(const Rational& a) const {
  Mat m(field_, rows_, cols_);
  Rational x = field_.reduce(a);
  for (std::size_t i = 0; i < rows_; ++i) m.data_[i] = sparse_scale(field_, data_[i], x);
  return m;
}

SparseVec Mat::apply(const SparseVec& v) const {
  SparseVec r;
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational s = sparse_dot(field_, data_[i], v);
    if (!s.is_zero()) r.push_back({static_cast<std::uint32_t>(i), std::move(s)});
  }
  return r;
}

SparseVec Mat::apply_transpose(const SparseVec& v) const {
  std::vector<Rational> acc(cols_);
  std::vector<std::uint32_t> touched;
  std::vector<char> mark(cols_, 0);
  for (const auto& e : v) {
    for (const auto& x : data_[e.idx]) {
      acc[x.idx] = field_.add(acc[x.idx], field_.mul(e.val, x.val));
      if (!mark[x.idx]) {
        mark[x.idx] = 1;
        touched.push_back(x.idx);
      }
    }
  }
  std::sort(touched.begin(), touched.end());
  SparseVec r;
  for (auto j : touched)
    if (!acc[j].is_zero()) r.push_back({j, acc[j]});
  return r;
}

Mat Mat::select_rows(const std::vector<std::size_t>& idx) const {
  Mat m(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) m.data_[i] = data_.at(idx[i]);
  return m;
}

Mat Mat::select_cols(const std::vector<std::size_t>& idx) const {
  std::vector<std::int64_t> where(cols_, -1);
  for (std::size_t j = 0; j < idx.size(); ++j) where.at(idx[j]) = static_cast<std::int64_t>(j);
  Mat m(field_, rows_, idx.size());
  bool sorted = std::is_sorted(idx.begin(), idx.end());
  for (std::size_t i = 0; i < rows_; ++i) {
    SparseVec r;
    for (const auto& e : data_[i])
      if (where[e.idx] >= 0) r.push_back({static_cast<std::uint32_t>(where[e.idx]), e.val});
    if (!sorted) std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.idx < b.idx; });
    m.data_[i] = std::move(r);
  }
  return m;
}

Mat Mat::hstack(const Mat& o) const {
  require_same_field(field_, o.field_, "hstack");
  if (rows_ != o.rows_) throw ShapeError("hstack: row mismatch");
  Mat m(field_, rows_, cols_ + o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    m.data_[i] = data_[i];
    for (const auto& e : o.data_[i]) m.data_[i].push_back({static_cast<std::uint32_t>(e.idx + cols_), e.val});
  }
  return m;
}

Mat Mat::vstack(const Mat& o) const {
  require_same_field(field_, o.field_, "vstack");
  if (cols_ != o.cols_) throw ShapeError("vstack: column mismatch");
  Mat m(field_, rows_ + o.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) m.data_[i] = data_[i];
  for (std::size_t i = 0; i < o.rows_; ++i) m.data_[rows_ + i] = o.data_[i];
  return m;
}

bool Mat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const SparseVec& r) { return r.empty(); });
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    if (data_[i].size() != 1 || data_[i][0].idx != i || !data_[i][0].val.is_one()) return false;
  return true;
}

std::size_t Mat::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

std::vector<std::vector<Rational>> Mat::to_dense() const {
  std::vector<std::vector<Rational>> d(rows_);
  for (std::size_t i = 0; i < rows_; ++i) d[i] = dense_from_sparse(data_[i], cols_);
  return d;
}

std::string Mat::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    auto d = dense_from_sparse(data_[i], cols_);
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << d[j];
  }
  os << "]";
  return os.str();
}

Mat operator*(const Mat& a, const Mat& b) {
  require_same_field(a.field_, b.field_, "Mat*");
  if (a.cols_ != b.rows_) throw ShapeError("Mat*: shape mismatch");
  Field f = a.field_;
  Mat m(f, a.rows_, b.cols_);
  std::vector<Rational> acc(b.cols_);
  std::vector<char> mark(b.cols_, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    touched.clear();
    for (const auto& e : a.data_[i]) {
      for (const auto& x : b.data_[e.idx]) {
        if (!mark[x.idx]) {
          mark[x.idx] = 1;
          touched.push_back(x.idx);
          acc[x.idx] = f.mul(e.val, x.val);
        } else {
          acc[x.idx] = f.add(acc[x.idx], f.mul(e.val, x.val));
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    SparseVec r;
    for (auto j : touched) {
      if (!acc[j].is_zero()) r.push_back({j, std::move(acc[j])});
      acc[j] = Rational();
      mark[j] = 0;
    }
    m.data_[i] = std::move(r);
  }
  return m;
}

Mat operator+(const Mat& a, const Mat& b) {
  require_same_field(a.field_, b.field_, "Mat+");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("Mat+: shape mismatch");
  Mat m(a.field_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) m.data_[i] = sparse_axpy(a.field_, a.data_[i], Rational(1), b.data_[i]);
  return m;
}

Mat operator-(const Mat& a, const Mat& b) {
  require_same_field(a.field_, b.field_, "Mat-");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("Mat-: shape mismatch");
  Mat m(a.field_, a.rows_, a.cols_);
  Rational minus_one = a.field_.reduce(Rational(-1));
  for (std::size_t i = 0; i < a.rows_; ++i) m.data_[i] = sparse_axpy(a.field_, a.data_[i], minus_one, b.data_[i]);
  return m;
}

bool operator==(const Mat& a, const Mat& b) {
  if (a.field_ != b.field_ || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    if (a.data_[i].size() != b.data_[i].size()) return false;
    for (std::size_t k = 0; k < a.data_[i].size(); ++k)
      if (a.data_[i][k].idx != b.data_[i][k].idx || a.data_[i][k].val != b.data_[i][k].val) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// elimination

EchelonBuilder::EchelonBuilder(Field f, std::size_t n) : field_(f), n_(n), pivot_row_(n, -1), acc_(n), mark_(n, 0) {}

SparseVec EchelonBuilder::reduce(const SparseVec& v) const {
  // Dense accumulator plus a min-heap of live columns.
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
  std::vector<std::uint32_t> touched;
  for (const auto& e : v) {
    if (e.idx >= n_) throw ShapeError("EchelonBuilder: vector longer than ambient space");
    acc_[e.idx] = e.val;
    mark_[e.idx] = 1;
    heap.push(e.idx);
    touched.push_back(e.idx);
  }
  SparseVec out;
  while (!heap.empty()) {
    std::uint32_t c = heap.top();
    heap.pop();
    while (!heap.empty() && heap.top() == c) heap.pop();
    if (acc_[c].is_zero()) continue;
    std::int64_t r = pivot_row_[c];
    if (r < 0) {
      out.push_back({c, acc_[c]});
      continue;
    }
    Rational factor = field_.neg(acc_[c]);
    for (const auto& e : rows_[static_cast<std::size_t>(r)]) {
      if (!mark_[e.idx]) {
        mark_[e.idx] = 1;
        touched.push_back(e.idx);
        acc_[e.idx] = field_.mul(factor, e.val);
        heap.push(e.idx);
      } else {
        bool was_zero = acc_[e.idx].is_zero();
        acc_[e.idx] = field_.add(acc_[e.idx], field_.mul(factor, e.val));
        if (was_zero && e.idx > c) heap.push(e.idx);
      }
    }
  }
  for (auto t : touched) {
    acc_[t] = Rational();
    mark_[t] = 0;
  }
  return out;
}

bool EchelonBuilder::add(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  Rational inv = field_.inv(r.front().val);
  if (!r.front().val.is_one()) r = sparse_scale(field_, r, inv);
  pivot_row_[r.front().idx] = static_cast<std::int64_t>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

std::vector<SparseVec> EchelonBuilder::reduced_rows() const {
  // Back-substitution from the largest pivot down; rows with larger pivots are
  // final by the time they are used.
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows_[a].front().idx > rows_[b].front().idx; });
  std::vector<SparseVec> done(rows_.size());
  std::vector<std::int64_t> final_row(n_, -1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const SparseVec& row = rows_[order[k]];
    std::uint32_t p = row.front().idx;
    bool needs = false;
    for (std::size_t t = 1; t < row.size(); ++t)
      if (final_row[row[t].idx] >= 0) {
        needs = true;
        break;
      }
    SparseVec r = row;
    if (needs) {
      SparseVec acc = row;
      for (std::size_t t = 1; t < row.size(); ++t) {
        std::int64_t fr = final_row[row[t].idx];
        if (fr < 0) continue;
        Rational coeff = sparse_at(acc, row[t].idx);
        if (coeff.is_zero()) continue;
        acc = sparse_axpy(field_, acc, field_.neg(coeff), done[static_cast<std::size_t>(fr)]);
      }
      r = std::move(acc);
    }
    done[k] = std::move(r);
    final_row[p] = static_cast<std::int64_t>(k);
  }
  std::reverse(done.begin(), done.end());
  return done;
}

RrefResult rref(const Mat& m) {
  EchelonBuilder b(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) b.add(m.row(i));
  auto rows = b.reduced_rows();
  RrefResult res;
  res.reduced = Mat(m.field(), m.rows(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    res.pivots.push_back(rows[i].front().idx);
    res.reduced.set_row(i, std::move(rows[i]));
  }
  return res;
}

std::size_t rank(const Mat& m) {
  EchelonBuilder b(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) b.add(m.row(i));
  return b.dim();
}

Mat kernel_basis(const Mat& m) {
  EchelonBuilder b(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) b.add(m.row(i));
  auto rows = b.reduced_rows();
  std::vector<std::int64_t> is_pivot(m.cols(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) is_pivot[rows[i].front().idx] = static_cast<std::int64_t>(i);
  std::vector<std::int64_t> free_index(m.cols(), -1);
  std::size_t nfree = 0;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (is_pivot[j] < 0) free_index[j] = static_cast<std::int64_t>(nfree++);
  std::vector<SparseVec> cols(nfree);
  Field f = m.field();
  // Kernel vector for free column j: x_j = 1, x_p = -R[p][j].
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::uint32_t p = rows[i].front().idx;
    for (std::size_t t = 1; t < rows[i].size(); ++t) {
      std::int64_t fi = free_index[rows[i][t].idx];
      cols[static_cast<std::size_t>(fi)].push_back({p, f.neg(rows[i][t].val)});
    }
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (free_index[j] < 0) continue;
    auto& c = cols[static_cast<std::size_t>(free_index[j])];
    c.push_back({static_cast<std::uint32_t>(j), Rational(1)});
    std::sort(c.begin(), c.end(), [](const Entry& a, const Entry& b) { return a.idx < b.idx; });
  }
  return Mat::from_columns(f, m.cols(), cols);
}

std::optional<Mat> solve(const Mat& m, const Mat& b) {
  require_same_field(m.field(), b.field(), "solve");
  if (m.rows() != b.rows()) throw ShapeError("solve: row mismatch");
  Mat aug = m.hstack(b);
  auto r = rref(aug);
  std::size_t n = m.cols();
  Mat x(m.field(), n, b.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] >= n) return std::nullopt;
    for (const auto& e : r.reduced.row(i))
      if (e.idx >= n) x.set(r.pivots[i], e.idx - n, e.val);
  }
  if (m * x != b) throw std::logic_error("solve: substitution check failed");
  return x;
}

Mat kron(const Mat& a, const Mat& b) {
  require_same_field(a.field(), b.field(), "kron");
  Field f = a.field();
  Mat m(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < b.rows(); ++k) {
      SparseVec r;
      for (const auto& x : a.row(i))
        for (const auto& y : b.row(k))
          r.push_back({static_cast<std::uint32_t>(x.idx * b.cols() + y.idx), f.mul(x.val, y.val)});
      m.set_row(i * b.rows() + k, std::move(r));
    }
  return m;
}

std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw ShapeError("inverse: matrix not square");
  auto r = rref(m.hstack(Mat::identity(m.field(), m.rows())));
  std::size_t n = m.rows();
  if (r.pivots.size() < n || r.pivots[n - 1] >= n) return std::nullopt;
  Mat inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    SparseVec row;
    for (const auto& e : r.reduced.row(i))
      if (e.idx >= n) row.push_back({static_cast<std::uint32_t>(e.idx - n), e.val});
    inv.set_row(i, std::move(row));
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::from_builder(const EchelonBuilder& b) {
  Subspace s(b.field(), b.ambient());
  s.basis_ = b.reduced_rows();
  for (std::size_t i = 0; i < s.basis_.size(); ++i) {
    s.pivots_.push_back(s.basis_[i].front().idx);
    s.pos_[s.basis_[i].front().idx] = static_cast<std::int64_t>(i);
  }
  return s;
}

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<SparseVec>& vecs) {
  EchelonBuilder b(f, ambient);
  for (const auto& v : vecs) b.add(v);
  return from_builder(b);
}

Subspace Subspace::column_space(const Mat& m) { return span(m.field(), m.rows(), m.columns()); }

Subspace Subspace::whole(Field f, std::size_t n) {
  Subspace s(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    s.basis_.push_back(unit_vector(i));
    s.pivots_.push_back(i);
    s.pos_[i] = static_cast<std::int64_t>(i);
  }
  return s;
}

Mat Subspace::basis_matrix() const { return Mat::from_columns(field_, ambient_, basis_); }

std::vector<std::size_t> Subspace::complement_positions() const {
  std::vector<std::size_t> c;
  for (std::size_t j = 0; j < ambient_; ++j)
    if (pos_[j] < 0) c.push_back(j);
  return c;
}

SparseVec Subspace::reduce(const SparseVec& v) const {
  SparseVec r = v;
  for (const auto& e : v) {
    if (e.idx >= ambient_) throw ShapeError("Subspace::reduce: index out of range");
    std::int64_t k = pos_[e.idx];
    if (k < 0) continue;
    r = sparse_axpy(field_, r, field_.neg(e.val), basis_[static_cast<std::size_t>(k)]);
  }
  return r;
}

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const SparseVec& v) { return contains(v); });
}

std::vector<Rational> Subspace::coords(const SparseVec& v) const {
  if (!contains(v)) throw std::logic_error("Subspace::coords: vector not in subspace");
  std::vector<Rational> c(basis_.size());
  for (const auto& e : v)
    if (pos_[e.idx] >= 0) c[static_cast<std::size_t>(pos_[e.idx])] = e.val;
  return c;
}

SparseVec Subspace::coords_sparse(const SparseVec& v) const {
  if (!contains(v)) throw std::logic_error("Subspace::coords: vector not in subspace");
  SparseVec c;
  for (const auto& e : v)
    if (pos_[e.idx] >= 0) c.push_back({static_cast<std::uint32_t>(pos_[e.idx]), e.val});
  return c;
}

SparseVec Subspace::quotient_coords(const SparseVec& v) const {
  SparseVec r = reduce(v);
  // Complement positions are ordered, so the rank of a position among
  // non-pivots is its quotient index.
  SparseVec q;
  for (const auto& e : r) {
    std::size_t below = static_cast<std::size_t>(
        std::lower_bound(pivots_.begin(), pivots_.end(), e.idx) - pivots_.begin());
    q.push_back({static_cast<std::uint32_t>(e.idx - below), e.val});
  }
  return q;
}

Subspace Subspace::sum(const Subspace& other) const {
  require_same_field(field_, other.field_, "Subspace::sum");
  EchelonBuilder b(field_, ambient_);
  for (const auto& v : basis_) b.add(v);
  for (const auto& v : other.basis_) b.add(v);
  return from_builder(b);
}

Subspace Subspace::intersect(const Subspace& other) const {
  require_same_field(field_, other.field_, "Subspace::intersect");
  // Solve sum a_i u_i = sum b_j w_j.
  Mat u = basis_matrix();
  Mat w = other.basis_matrix();
  Mat k = kernel_basis(u.hstack(w.scaled(Rational(-1))));
  std::vector<SparseVec> vecs;
  for (const auto& col : k.columns()) {
    SparseVec a;
    for (const auto& e : col)
      if (e.idx < dim()) a.push_back(e);
    vecs.push_back(u.apply(a));
  }
  return span(field_, ambient_, vecs);
}

bool operator==(const Subspace& a, const Subspace& b) {
  if (a.field_ != b.field_ || a.ambient_ != b.ambient_ || a.basis_.size() != b.basis_.size()) return false;
  return a.contains(b);
}

LinearSolver::LinearSolver(const Mat& m) : field_(m.field()), rows_(m.rows()), cols_(m.cols()) {
  auto r = rref(m.hstack(Mat::identity(m.field(), m.rows())));
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    SparseVec t;
    for (const auto& e : r.reduced.row(i))
      if (e.idx >= cols_) t.push_back({static_cast<std::uint32_t>(e.idx - cols_), e.val});
    if (r.pivots[i] < cols_) pivots_.push_back(r.pivots[i]);
    transform_.push_back(std::move(t));
  }
}

std::optional<SparseVec> LinearSolver::solve(const SparseVec& b) const {
  SparseVec x;
  for (std::size_t i = 0; i < transform_.size(); ++i) {
    Rational v = sparse_dot(field_, transform_[i], b);
    if (i >= pivots_.size()) {
      if (!v.is_zero()) return std::nullopt;
    } else if (!v.is_zero()) {
      x.push_back({static_cast<std::uint32_t>(pivots_[i]), v});
    }
  }
  std::sort(x.begin(), x.end(), [](const Entry& a, const Entry& c) { return a.idx < c.idx; });
  return x;
}

std::optional<std::size_t> modular_rank(const Mat& m, std::uint32_t prime) {
  Field f = Field::prime(prime);
  EchelonBuilder b(f, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseVec r;
    for (const auto& e : m.row(i)) {
      Rational x;
      try {
        x = f.reduce(e.val);
      } catch (const std::domain_error&) {
        return std::nullopt;
      }
      if (!x.is_zero()) r.push_back({e.idx, x});
    }
    b.add(r);
  }
  return b.dim();
}

}  // namespace fdalg
