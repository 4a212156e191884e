// Exact linear algebra over Q and prime fields F_p.
//
// Index conventions used throughout the project:
//   * Matrices act on column vectors: (A*B)v = A(Bv).
//   * Storage is row-sparse; every contract is stated densely.
//   * kron(A, B)[i*rows(B) + k][j*cols(B) + l] = A[i][j] * B[k][l]. A vector of
//     V (x) W with dim W = w is indexed by (v, w) -> v*w_dim + w, so the first
//     factor is the slow index.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdalg/rational.hpp"

namespace fdalg {

class FieldMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A field tag: p == 0 is Q, otherwise F_p with p prime, p < 2^31.
// Elements of F_p are represented as integer Rationals in [0, p).
struct Field {
  std::uint32_t p = 0;

  static Field rationals() { return {}; }
  static Field prime(std::uint32_t p);

  bool is_rational() const { return p == 0; }
  std::string name() const { return p == 0 ? "Q" : "F_" + std::to_string(p); }

  // Maps an arbitrary rational into this field's canonical representation.
  Rational reduce(const Rational& x) const;

  Rational add(const Rational& a, const Rational& b) const {
    if (p == 0) return a + b;
    std::int64_t s = a.small_num() + b.small_num();
    return s >= p ? Rational(s - p) : Rational(s);
  }
  Rational sub(const Rational& a, const Rational& b) const {
    if (p == 0) return a - b;
    std::int64_t s = a.small_num() - b.small_num();
    return s < 0 ? Rational(s + p) : Rational(s);
  }
  Rational mul(const Rational& a, const Rational& b) const {
    if (p == 0) return a * b;
    return Rational(static_cast<long long>(
        (static_cast<std::uint64_t>(a.small_num()) * static_cast<std::uint64_t>(b.small_num())) % p));
  }
  Rational neg(const Rational& a) const {
    if (p == 0) return -a;
    return a.is_zero() ? a : Rational(p - a.small_num());
  }
  Rational inv(const Rational& a) const;
  Rational div(const Rational& a, const Rational& b) const { return mul(a, inv(b)); }

  friend bool operator==(Field a, Field b) { return a.p == b.p; }
  friend bool operator!=(Field a, Field b) { return a.p != b.p; }
};

void require_same_field(Field a, Field b, const char* where);

// A field element together with its field tag.
struct Scalar {
  Field field;
  Rational value;

  Scalar() = default;
  Scalar(Field f, const Rational& v) : field(f), value(f.reduce(v)) {}
  static Scalar rational(const Rational& v) { return {Field::rationals(), v}; }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field == b.field && a.value == b.value;
  }
};

struct Entry {
  std::uint32_t idx;
  Rational val;
  friend bool operator==(const Entry& a, const Entry& b) { return a.idx == b.idx && a.val == b.val; }
};

// Sorted by index, no explicit zeros.
using SparseVec = std::vector<Entry>;

SparseVec unit_vector(std::size_t i);
SparseVec sparse_from_dense(Field f, const std::vector<Rational>& dense);
std::vector<Rational> dense_from_sparse(const SparseVec& v, std::size_t n);
Rational sparse_at(const SparseVec& v, std::size_t i);
SparseVec sparse_axpy(Field f, const SparseVec& x, const Rational& a, const SparseVec& y);  // x + a*y
SparseVec sparse_scale(Field f, const SparseVec& x, const Rational& a);
Rational sparse_dot(Field f, const SparseVec& x, const SparseVec& y);
SparseVec sparse_shift(const SparseVec& v, std::size_t offset);

class Mat {
 public:
  Mat() = default;
  Mat(Field f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols), data_(rows) {}

  static Mat identity(Field f, std::size_t n);
  static Mat zero(Field f, std::size_t rows, std::size_t cols) { return {f, rows, cols}; }
  static Mat from_dense(Field f, const std::vector<std::vector<Rational>>& rows, std::size_t cols);
  // Integer-literal convenience; rows must be non-empty.
  static Mat from_ints(Field f, const std::vector<std::vector<long long>>& rows);
  static Mat from_columns(Field f, std::size_t rows, const std::vector<SparseVec>& cols);
  static Mat from_rows(Field f, std::size_t cols, std::vector<SparseVec> rows);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Rational& v);
  const SparseVec& row(std::size_t i) const { return data_[i]; }
  void set_row(std::size_t i, SparseVec v) { data_[i] = std::move(v); }
  std::vector<SparseVec> columns() const;
  SparseVec column(std::size_t j) const;

  Mat transpose() const;
  Mat scaled(const Rational& a) const;
  SparseVec apply(const SparseVec& v) const;  // this * v
  SparseVec apply_transpose(const SparseVec& v) const;  // this^T * v

  Mat select_rows(const std::vector<std::size_t>& idx) const;
  Mat select_cols(const std::vector<std::size_t>& idx) const;
  Mat hstack(const Mat& other) const;
  Mat vstack(const Mat& other) const;

  bool is_zero() const;
  bool is_identity() const;
  std::size_t nnz() const;
  std::vector<std::vector<Rational>> to_dense() const;
  std::string str() const;

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b);
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVec> data_;
};

struct RrefResult {
  Mat reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

RrefResult rref(const Mat& m);
std::size_t rank(const Mat& m);
// Columns span {v : m v = 0}; count = cols - rank.
Mat kernel_basis(const Mat& m);
// Some x with m x = b (verified by substitution), or nullopt.
std::optional<Mat> solve(const Mat& m, const Mat& b);
Mat kron(const Mat& a, const Mat& b);
// Exact inverse of a square matrix, or nullopt if singular.
std::optional<Mat> inverse(const Mat& m);

// Incremental row echelon basis of a subspace of F^n. Vectors may be added
// one at a time; finish() produces the reduced form.
class EchelonBuilder {
 public:
  EchelonBuilder(Field f, std::size_t n);
  // Returns true if v was independent of the vectors added so far.
  bool add(const SparseVec& v);
  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }
  Field field() const { return field_; }
  // Reduced rows sorted by pivot column.
  std::vector<SparseVec> reduced_rows() const;
  // Reduces v against the current (not necessarily reduced) rows.
  SparseVec reduce(const SparseVec& v) const;

 private:
  Field field_;
  std::size_t n_;
  std::vector<SparseVec> rows_;
  std::vector<std::int64_t> pivot_row_;
  mutable std::vector<Rational> acc_;
  mutable std::vector<char> mark_;
};

// A subspace of F^n in reduced row echelon form: each basis vector b_i has a
// pivot coordinate p_i with b_i[p_j] = delta_ij. Coordinates of a member v are
// (v[p_1], ..., v[p_k]).
class Subspace {
 public:
  Subspace() = default;
  Subspace(Field f, std::size_t ambient) : field_(f), ambient_(ambient), pos_(ambient, -1) {}
  static Subspace span(Field f, std::size_t ambient, const std::vector<SparseVec>& vecs);
  static Subspace column_space(const Mat& m);
  static Subspace from_builder(const EchelonBuilder& b);
  static Subspace whole(Field f, std::size_t n);

  Field field() const { return field_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient() const { return ambient_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<SparseVec>& basis() const { return basis_; }
  const SparseVec& basis_vector(std::size_t i) const { return basis_[i]; }
  // ambient x dim matrix whose columns are the basis.
  Mat basis_matrix() const;
  // Positions not used as pivots; coordinates of the quotient F^n / this.
  std::vector<std::size_t> complement_positions() const;

  SparseVec reduce(const SparseVec& v) const;  // normal form modulo this subspace
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  bool contains(const Subspace& other) const;
  // Coordinates in the pivot basis; throws if v is not a member.
  std::vector<Rational> coords(const SparseVec& v) const;
  SparseVec coords_sparse(const SparseVec& v) const;
  // Coordinates of the image of v in the quotient, indexed by complement_positions().
  SparseVec quotient_coords(const SparseVec& v) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  Field field_;
  std::size_t ambient_ = 0;
  std::vector<SparseVec> basis_;
  std::vector<std::size_t> pivots_;
  std::vector<std::int64_t> pos_;  // pivot column -> basis index, -1 otherwise
};

// Repeated solves of m x = b against a fixed m.
class LinearSolver {
 public:
  LinearSolver() = default;
  explicit LinearSolver(const Mat& m);
  // Some x with m x = b, or nullopt if inconsistent.
  std::optional<SparseVec> solve(const SparseVec& b) const;
  std::size_t rank() const { return pivots_.size(); }

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<SparseVec> transform_;  // rows of T with T m in reduced echelon form
  std::vector<std::size_t> pivots_;   // pivot columns of the first rank() rows
};

// Rank of an integer-valued reduction of m modulo a word-size prime. Returns
// nullopt if some denominator vanishes modulo the prime.
std::optional<std::size_t> modular_rank(const Mat& m, std::uint32_t prime);

}  // namespace fdalg
