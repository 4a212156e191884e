// Finite-dimensional left modules and bimodules given by action matrices.
//
// A module over A stores one matrix per basis element of A. A right action of
// B on M is stored as a left action of opposite(B): the matrix for e_b is
// m -> m e_b. Tensor products M (x)_B N live in M (x)_k N with the kron index
// i*dim(N) + j.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fdalg/algebra.hpp"

namespace fdalg {

class ModuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Module {
 public:
  Module() = default;

  // action[i] is the matrix of basis element e_i.
  static Module from_action(const Algebra& a, std::size_t dim, std::vector<Mat> action, bool validate = true);
  // gens[k] is the matrix of basis element a.generators()[k]; the remaining
  // basis elements are derived from products.
  static Module from_generator_action(const Algebra& a, std::size_t dim, const std::vector<Mat>& gens);

  bool valid() const { return d_ != nullptr; }
  const Algebra& algebra() const;
  Field field() const;
  std::size_t dim() const;
  const Mat& act(std::size_t i) const;
  const std::vector<Mat>& actions() const;
  Mat act_by(const SparseVec& a) const;
  SparseVec apply(const SparseVec& a, const SparseVec& v) const;

 private:
  struct Data {
    Algebra alg;
    std::size_t dim = 0;
    std::vector<Mat> action;
  };
  std::shared_ptr<const Data> d_;
};

void validate_module(const Module& m);

struct SubmoduleResult {
  Module module;
  Mat inclusion;  // dim(M) x dim(sub)
};

struct QuotientResult {
  Module module;
  Mat projection;  // dim(quot) x dim(M)
  Subspace kernel;
};

Module regular_module(const Algebra& a);
Module zero_module(const Algebra& a);
// X_r = k[x]/(x^r) over nakayama(n); x shifts e_i to e_{i+1}.
Module truncated_module(const Algebra& nak, std::size_t r);
// I_j = A u_j over liu_schulz(q) with u_j = x2 + q^j x1.
SparseVec liu_schulz_u(const Rational& q, int j);
Module liu_schulz_ideal(const Algebra& a, const Rational& q, int j);
Module direct_sum(const std::vector<Module>& ms);
// Block-diagonal map of a direct sum.
Mat block_diagonal(const std::vector<Mat>& maps);
// w must be invariant under the action.
SubmoduleResult submodule(const Module& m, const Subspace& w);
SubmoduleResult generated_submodule(const Module& m, const std::vector<SparseVec>& vs);
SubmoduleResult cyclic_submodule(const Module& m, const SparseVec& v);
QuotientResult quotient_module(const Module& m, const Subspace& w);
// The radical rad(A) M as a subspace; characteristic 0.
Subspace radical_subspace(const Module& m);
bool is_homomorphism(const Mat& f, const Module& m, const Module& n);

// Decomposition of a space along a complete family of orthogonal idempotent
// matrices; used to block Hom systems.
struct Blocking {
  std::vector<Subspace> blocks;
  std::vector<Mat> projectors;
  std::vector<std::size_t> block_of;  // adapted basis index -> block
  Mat basis;                          // columns: adapted basis
  SparseVec to_adapted(const SparseVec& v) const;
  std::size_t dim() const { return block_of.size(); }
};
Blocking make_blocking(Field f, std::size_t dim, const std::vector<Mat>& projectors);

// Solutions f (dim N x dim M) of f X_k = Y_k f, optionally restricted to maps
// preserving matching blocks.
struct HomBasis {
  std::vector<Mat> basis;
  std::size_t dim() const { return basis.size(); }
  // Coordinates of a member of the span.
  SparseVec coords(const Mat& f) const;
  Mat combine(const std::vector<Rational>& c) const;

  std::size_t src_dim = 0, tgt_dim = 0;
  std::shared_ptr<const Blocking> src_blocks, tgt_blocks;
  std::vector<std::size_t> positions;  // free unknowns in adapted coordinates
};

HomBasis intertwiners(Field f, std::size_t src_dim, std::size_t tgt_dim,
                      const std::vector<std::pair<const Mat*, const Mat*>>& pairs,
                      std::shared_ptr<const Blocking> src_blocks = nullptr,
                      std::shared_ptr<const Blocking> tgt_blocks = nullptr);
HomBasis hom_basis(const Module& m, const Module& n);

struct IsoVerdict {
  enum class Kind { Isomorphic, NotIsomorphic, Undecided };
  Kind kind = Kind::Undecided;
  Mat forward, backward;  // certificate when Isomorphic
  std::string reason;     // separating invariant when NotIsomorphic
  std::size_t trials = 0;
  bool isomorphic() const { return kind == Kind::Isomorphic; }
  std::string str() const;
};

IsoVerdict iso_test(const Module& m, const Module& n, std::uint64_t seed, std::size_t trials);
// Search an invertible member of a Hom space with seeded integer combinations.
std::optional<std::pair<Mat, Mat>> find_invertible(const HomBasis& h, std::uint64_t seed, std::size_t trials,
                                                   std::size_t* used = nullptr);

Module dual(const Module& m);
struct TopSocle {
  QuotientResult top;
  SubmoduleResult socle;
};
TopSocle top_and_socle(const Module& m);

// Direct sum of indecomposable projectives A e_t with generators e_t.
struct ProjectiveModule {
  Module module;
  std::vector<std::size_t> classes;  // per summand
  std::vector<std::size_t> offsets;  // per summand
  std::size_t summands() const { return classes.size(); }
  SparseVec generator(std::size_t s) const;
  // The homomorphism sending generator s to values[s] (values[s] in e_t N).
  Mat map_to(const Module& target, const std::vector<SparseVec>& values) const;
  // Decomposes x in P as sum over summands of a_s * generator(s), a_s in A.
  std::vector<SparseVec> components(const SparseVec& x) const;
};

// A e_t for class t, with the basis of A e_t inside A.
struct IndecomposableProjective {
  Module module;
  Subspace span;  // A e_t inside A
  SparseVec idempotent;
  SparseVec generator;  // coordinates of e_t
};
const IndecomposableProjective& indecomposable_projective(const Algebra& a, std::size_t cls);
ProjectiveModule projective_sum(const Algebra& a, const std::vector<std::size_t>& classes);

struct ProjectiveCover {
  ProjectiveModule projective;
  Mat epi;
};
// Multiplicity of each simple class in the top of m.
std::vector<std::size_t> top_multiplicities(const Module& m);
ProjectiveCover projective_cover(const Module& m);
SubmoduleResult syzygy_with_inclusion(const Module& m);
Module syzygy(const Module& m);
bool is_projective(const Module& m);

struct InjectiveEnvelope {
  Module module;
  Mat mono;
};
InjectiveEnvelope injective_envelope(const Module& m);
Module nakayama_transform(const Module& m);
Module simple_module(const Algebra& a, std::size_t cls);

bool is_self_injective(const Algebra& a);

class Bimodule {
 public:
  Bimodule() = default;
  // right[b] is the matrix of m -> m e_b.
  static Bimodule from_actions(const Algebra& left, const Algebra& right, std::size_t dim, std::vector<Mat> left_action,
                               std::vector<Mat> right_action, bool validate = true);
  static Bimodule regular(const Algebra& a);

  bool valid() const { return left_.valid(); }
  const Algebra& left_algebra() const { return left_.algebra(); }
  const Algebra& right_algebra() const { return right_alg_; }
  std::size_t dim() const { return left_.dim(); }
  Field field() const { return left_.field(); }
  const Mat& left_act(std::size_t i) const { return left_.act(i); }
  const Mat& right_act(std::size_t i) const { return right_.act(i); }

  // Restriction views.
  const Module& left_module() const { return left_; }
  const Module& right_module() const { return right_; }  // over opposite(right_algebra())
  // Module over tensor_algebra(left, opposite(right)).
  Module enveloping_module() const;

 private:
  Module left_, right_;
  Algebra right_alg_;
};

void validate_bimodule(const Bimodule& b);
Bimodule bimodule_direct_sum(const std::vector<Bimodule>& bs);
SubmoduleResult bimodule_submodule_space(const Bimodule& b, const Subspace& w, Bimodule* out);
HomBasis hom_bimodule(const Bimodule& m, const Bimodule& n);
bool is_bimodule_map(const Mat& f, const Bimodule& m, const Bimodule& n);
// Projectivity over A (x) B^op by comparing dim with the projective cover.
bool is_bimodule_projective(const Bimodule& b);
// Multiplicities of simple A (x) B^op modules (class a, class b) in the top.
std::vector<std::vector<std::size_t>> bimodule_top_multiplicities(const Bimodule& b);

// M (x)_B N as a quotient of M (x)_k N.
struct TensorSpace {
  std::size_t dim_m = 0, dim_n = 0;
  Subspace relations;
  std::vector<std::size_t> basis;  // complement positions, ascending
  std::size_t dim() const { return basis.size(); }
  SparseVec project(const SparseVec& v) const { return relations.quotient_coords(v); }
  SparseVec pure(const SparseVec& m, const SparseVec& n) const;  // class of m (x) n
  // The map induced by x (on M) and y (on N), given they respect the relations.
  Mat induced(const Mat& x, const Mat& y) const;
};
// m_right is a module over opposite(B), n_left a module over B.
TensorSpace tensor_space(const Module& m_right, const Module& n_left);

Module tensor_over(const Bimodule& m, const Module& n);
Bimodule tensor_over(const Bimodule& m, const Bimodule& n);

}  // namespace fdalg
