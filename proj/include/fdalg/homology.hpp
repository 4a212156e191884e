// Minimal projective resolutions, Ext, Yoneda products and dimension probes.
//
// A cochain P_i -> N is stored by its values on the summand generators of P_i:
// summand s occupies coordinates [s*dim(N), (s+1)*dim(N)). Ext classes are
// coordinates against a fixed basis of representative cocycles, normalized by
// reduction modulo the coboundaries.
#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fdalg/module.hpp"

namespace fdalg {

class HomologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Resolution {
  Module module;
  std::vector<ProjectiveModule> terms;  // P_0 .. P_len
  std::vector<Mat> differentials;       // d_0: P_0 -> M, d_i: P_i -> P_{i-1}
  std::vector<SubmoduleResult> syzygies;  // syzygies[i] = ker d_i inside P_i
  bool terminated = false;              // the last syzygy is zero

  std::size_t length() const { return terms.size() - 1; }
  // Solver for d_k x = b; built on first use.
  const LinearSolver& solver(std::size_t k) const;

  mutable std::mutex mu;
  mutable std::vector<std::shared_ptr<const LinearSolver>> solvers;
};

// Resolution through P_d, or shorter if a syzygy vanishes.
std::shared_ptr<const Resolution> resolve(const Module& m, std::size_t d);
// Extends r to depth d when it is shallower and has not terminated.
std::shared_ptr<const Resolution> deepen(const std::shared_ptr<const Resolution>& r, std::size_t d);
void verify_resolution(const Resolution& r);

struct ExtSpace {
  std::shared_ptr<const Resolution> res;
  Module target;
  std::size_t degree = 0;
  Subspace coboundaries;
  Subspace classes;  // spanned by normal forms of cocycles; basis = representatives

  std::size_t dim() const { return classes.dim(); }
  const SparseVec& rep(std::size_t k) const { return classes.basis()[k]; }
  // Class coordinates of a cocycle.
  SparseVec coords(const SparseVec& cocycle) const { return classes.coords_sparse(coboundaries.reduce(cocycle)); }
  SparseVec cochain(const SparseVec& cls) const;
  // The cochain as a homomorphism P_degree -> target.
  Mat as_map(const SparseVec& cochain) const;
  std::size_t summands() const;
};

ExtSpace ext(const std::shared_ptr<const Resolution>& res, const Module& n, std::size_t i);
ExtSpace ext(const Module& m, const Module& n, std::size_t i);

// Ext^i(X, Y) as a right B-module for an A-B-bimodule Y whose left module is
// e.target. The result is a module over opposite(B).
Module ext_right_module(const ExtSpace& e, const Bimodule& y);

// The cochain P_0 -> N of a homomorphism f: M -> N.
SparseVec hom_to_cochain(const Resolution& r, const Mat& f, const Module& n);

// Chain map lifting a cochain c: P^X_i -> Y through a resolution of Y:
// maps[k]: P^X_{i+k} -> P^Y_k for k = 0..depth.
struct ChainLift {
  std::size_t degree = 0;
  std::vector<Mat> maps;
};
ChainLift lift_cochain(const Resolution& x, std::size_t i, const Mat& cocycle, const Resolution& y, std::size_t depth);

// Class of f g (f first, then g) for f in Ext^i(X, Y), g in Ext^j(Y, Z).
// out must be Ext^{i+j}(X, Z) over f's resolution; g's resolution is used for
// the lift.
SparseVec yoneda_product(const ExtSpace& fs, const SparseVec& f, const ExtSpace& gs, const SparseVec& g,
                         const ExtSpace& out);
// Same with a precomputed lift of f.
SparseVec yoneda_from_lift(const ChainLift& lift, const ExtSpace& gs, const SparseVec& g, const ExtSpace& out);

struct GlobalDimensionReport {
  enum class Kind { Exact, AtLeast, Infinite };
  Kind kind = Kind::AtLeast;
  std::size_t value = 0;
  std::string witness;
  std::vector<std::optional<std::size_t>> projective_dims;  // per simple class; empty when unknown
  std::string str() const;
};
GlobalDimensionReport global_dimension_probe(const Algebra& a, std::size_t cutoff);

struct DominantDimensionReport {
  bool at_least = false;  // true: >= value
  std::size_t value = 0;
  std::string str() const;
};
DominantDimensionReport dominant_dimension(const Algebra& a, std::size_t cutoff);

struct ExtCondition {
  std::string name;
  std::size_t degree = 0;
  std::size_t dim = 0;
  bool holds() const { return dim == 0; }
};
// Ext^d(M, Omega(Y)) = 0 and Ext^d(Y, M) = 0 for each d.
std::vector<ExtCondition> ext_vanishing_check(const Module& m, const Module& y, const std::vector<std::size_t>& degrees);

}  // namespace fdalg
