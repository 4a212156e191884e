// Graded algebras and bimodules (truncated N-gradings and cyclic group
// gradings, carried by basis degrees) and their bar constructions.
//
// Truncated at n: bar blocks are (i, j) with 0 <= i <= j <= n holding degree
// j - i. Cyclic of order m: blocks are all (g, h) holding degree g - h mod m.
// Bar bases are ordered by row, then column, then source basis index.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdalg/stable_morita.hpp"

namespace fdalg {

class GradedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Grading {
  enum class Kind { Truncated, Cyclic };
  Kind kind = Kind::Truncated;
  std::size_t bound = 0;  // top degree n, or group order m

  static Grading truncated(std::size_t n) { return {Kind::Truncated, n}; }
  static Grading cyclic(std::size_t m) { return {Kind::Cyclic, m}; }
  std::size_t blocks() const { return kind == Kind::Truncated ? bound + 1 : bound; }
  bool admits(std::size_t d) const { return kind == Kind::Truncated ? d <= bound : d < bound; }
  // Degree of a product; nullopt when it falls past the truncation.
  std::optional<std::size_t> combine(std::size_t a, std::size_t b) const;
  std::optional<std::size_t> block_degree(std::size_t row, std::size_t col) const;
  bool operator==(const Grading& o) const { return kind == o.kind && bound == o.bound; }
  std::string str() const;
};

struct GradedAlgebra {
  Algebra algebra;
  Grading grading;
  std::vector<std::size_t> degree;  // per basis vector

  // Checks every structure constant and the unit.
  static GradedAlgebra make(const Algebra& a, Grading g, std::vector<std::size_t> degree);
  std::size_t dim_in(std::size_t d) const;
};

// k[x]/(x^n) with deg x^i = i, truncated at top >= n - 1.
GradedAlgebra graded_nakayama(std::size_t n, std::size_t top);
// k C_m graded by C_m.
GradedAlgebra graded_group_algebra(std::size_t m);
// Every basis vector in degree 0.
GradedAlgebra trivially_graded(const Algebra& a, Grading g);

struct GradedBimodule {
  Bimodule bimodule;
  GradedAlgebra left, right;
  std::vector<std::size_t> degree;

  static GradedBimodule make(const Bimodule& m, const GradedAlgebra& left, const GradedAlgebra& right,
                             std::vector<std::size_t> degree);
  static GradedBimodule regular(const GradedAlgebra& a);
  // Degrees lowered by s: M(s) in the usual notation.
  GradedBimodule shifted(std::size_t s) const;
  std::size_t dim_in(std::size_t d) const;
};

// Kernel of the multiplication A (x)_k A -> A with a homogeneous basis, degrees
// lowered by shift; A must be local.
GradedBimodule graded_bimodule_syzygy(const GradedAlgebra& a, std::size_t shift = 0);
// M (x)_B N with degrees of the pure-tensor basis.
GradedBimodule graded_tensor(const GradedBimodule& m, const GradedBimodule& n);
// Degrees of a basis of homogeneous vectors; throws on an inhomogeneous one.
std::vector<std::size_t> homogeneous_degrees(const std::vector<SparseVec>& vs, const std::vector<std::size_t>& degree);

struct BarIndex {
  std::size_t row, col, source;
};

struct BarAlgebra {
  Algebra algebra;
  GradedAlgebra source;
  std::vector<BarIndex> basis;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> block_offset;
  std::string label(std::size_t b) const;
};
BarAlgebra bar_algebra(const GradedAlgebra& a);

struct BarBimodule {
  Bimodule bimodule;
  std::vector<BarIndex> basis;
};
BarBimodule bar_bimodule(const GradedBimodule& m, const BarAlgebra& left, const BarAlgebra& right);

struct GradedSplit {
  std::optional<Decomposition> decomposition;
  std::optional<GradedBimodule> complement;  // graded P
};

struct BarReport {
  Certificate ungraded;
  GradedSplit mn, nm;
  bool graded_valid = false;
  std::string graded_failure;
  BarAlgebra a_bar, b_bar;
  BarBimodule m_bar, n_bar;
  Certificate bar;
  // bar(P) against the complement found in the bar certificate, and likewise for Q.
  std::optional<IsoVerdict> p_match, q_match;
};
BarReport bar_certificate(const GradedAlgebra& a, const GradedAlgebra& b, const GradedBimodule& m,
                          const GradedBimodule& n, std::uint64_t seed = 0xC0FFEE, std::size_t trials = 64);

}  // namespace fdalg
