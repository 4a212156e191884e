// Finite-dimensional associative unital algebras given by structure constants.
//
// Elements are coordinate vectors (SparseVec) in the algebra's basis. The
// product of basis elements e_i e_j is table[i*dim + j].
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fdalg/exactlin.hpp"

namespace fdalg {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StructureConstant {
  std::size_t i, j, k;
  Rational c;
};

// Radical and a complete set of primitive orthogonal idempotents. Idempotents
// are grouped into isomorphism classes of their projective covers; classes are
// numbered by first appearance.
struct AlgebraStructure {
  Subspace radical;
  std::vector<SparseVec> idempotents;
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> class_rep;  // first idempotent of each class
  std::vector<std::size_t> simple_dim;  // per class
  std::size_t num_classes() const { return class_rep.size(); }
};

class Algebra {
 public:
  struct Data;

  Algebra() = default;

  static Algebra from_structure_constants(Field f, std::size_t dim, const std::vector<StructureConstant>& constants,
                                          const SparseVec& unit, std::vector<std::string> labels = {});
  // table[i*dim + j] = e_i e_j. Validation is exhaustive unless disabled by a
  // caller that has checked associativity some other way.
  static Algebra from_products(Field f, std::size_t dim, std::vector<SparseVec> table, SparseVec unit,
                               std::vector<std::string> labels = {}, bool validate = true);

  bool valid() const { return d_ != nullptr; }
  Field field() const;
  std::size_t dim() const;
  const SparseVec& unit() const;
  const SparseVec& product(std::size_t i, std::size_t j) const;
  SparseVec mul(const SparseVec& a, const SparseVec& b) const;
  const std::vector<std::string>& labels() const;
  // Basis indices generating the algebra together with 1.
  const std::vector<std::size_t>& generators() const;

  // Matrices of x -> e_i x and x -> x e_i.
  const Mat& left_regular(std::size_t i) const;
  const Mat& right_regular(std::size_t i) const;
  Mat left_mult(const SparseVec& a) const;
  Mat right_mult(const SparseVec& a) const;

  // Cached radical and idempotent data; characteristic 0 and split only.
  const AlgebraStructure& structure() const;

  // Tensor factors when built by tensor_algebra, else null handles.
  Algebra factor(int which) const;
  // The algebra this one is the opposite of, if any.
  Algebra opposite_source() const;

  // Per-algebra memo for derived data owned by other modules. make() runs
  // without holding a lock; the first stored value wins.
  std::shared_ptr<const void> cache_slot(const std::string& key,
                                         const std::function<std::shared_ptr<const void>()>& make) const;
  template <class T>
  const T& cached(const std::string& key, const std::function<T()>& make) const {
    auto p = cache_slot(key, [&] { return std::static_pointer_cast<const void>(std::make_shared<const T>(make())); });
    return *static_cast<const T*>(p.get());
  }

  bool same_as(const Algebra& o) const;
  const Data* id() const { return d_.get(); }

  std::string describe() const;

 private:
  explicit Algebra(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;

  friend Algebra opposite(const Algebra& a);
  friend Algebra tensor_algebra(const Algebra& a, const Algebra& b);
};

void require_same_algebra(const Algebra& a, const Algebra& b, const char* where);

// Exhaustive associativity and unit checks; throws AlgebraError naming the
// first failing triple.
void validate_algebra(Field f, std::size_t dim, const std::vector<SparseVec>& table, const SparseVec& unit);

struct Arrow {
  std::string label;
  std::size_t source, target;
};

// A path: trivial at `vertex` when arrows is empty. Arrows compose left to
// right: a.b means a followed by b, so target(a) == source(b).
struct Path {
  std::size_t vertex = 0;
  std::vector<std::size_t> arrows;
};

struct PathTerm {
  Rational coef;
  Path path;
};

struct QuiverPresentation {
  std::size_t vertices = 0;
  std::vector<Arrow> arrows;
  std::vector<std::vector<PathTerm>> relations;
  std::size_t cutoff = 0;
};

Algebra from_quiver(const QuiverPresentation& q);
Algebra nakayama(std::size_t n);
Algebra liu_schulz(const Rational& q);
Algebra group_algebra(std::size_t m);
Algebra opposite(const Algebra& a);
// Basis (i, j) -> i*dim(b) + j.
Algebra tensor_algebra(const Algebra& a, const Algebra& b);

Subspace radical(const Algebra& a);
std::vector<SparseVec> primitive_idempotents(const Algebra& a);

}  // namespace fdalg
