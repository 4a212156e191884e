// Admissible sets and Beilinson-Green algebras G^Phi(X) and bimodules G^Phi(X, Y).
//
// The carrier of G^Phi(X, Y) has basis (i, j, k) for i <= j in Phi with
// j - i in Phi and k a basis class of Ext^{j-i}(X, Y), ordered by i, then j,
// then k. Products compose left to right: (i,j,f)(j,l,g) = (i,l,fg) when
// l - i is in Phi, and 0 otherwise.
#pragma once

#include <array>
#include <map>
#include <optional>

#include "fdalg/homology.hpp"

namespace fdalg {

class GreenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Admissibility {
  bool admissible = false;
  std::optional<std::array<std::size_t, 3>> witness;  // (p, q, r)
  std::string reason;
};
Admissibility is_admissible(std::vector<std::size_t> s);
// Sorted, deduplicated; throws unless admissible.
std::vector<std::size_t> admissible_set(std::vector<std::size_t> s);

struct GreenIndex {
  std::size_t i, j, k;
};

struct GreenSpace {
  std::vector<std::size_t> phi;
  Module x, y;
  std::shared_ptr<const Resolution> res_x;
  std::map<std::size_t, ExtSpace> ext;  // degree -> Ext^d(X, Y)
  std::vector<GreenIndex> basis;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> block_offset;

  std::size_t dim() const { return basis.size(); }
  bool has_block(std::size_t i, std::size_t j) const { return block_offset.count({i, j}) != 0; }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return block_offset.at({i, j}) + k; }
  std::size_t block_dim(std::size_t i, std::size_t j) const;
  std::string label(std::size_t b) const;
};

// phi need not be admissible here; res_x must resolve x.
GreenSpace green_space(const Module& x, const Module& y, const std::vector<std::size_t>& phi,
                       std::shared_ptr<const Resolution> res_x);

// out[a][b] = (basis a of l) * (basis b of r) in o's coordinates. l is
// G(X, Y), r is G(Y, Z) over a resolution of Y, o is G(X, Z) over l's resolution.
std::vector<std::vector<SparseVec>> green_products(const GreenSpace& l, const GreenSpace& r, const GreenSpace& o);

struct GreenAlgebra {
  Algebra algebra;
  GreenSpace space;
  SparseVec identity_class;  // class of id_X in Ext^0(X, X)
  // Diagonal idempotent (i, i, id_X) for each i in Phi.
  SparseVec diagonal_idempotent(std::size_t i) const;
};

GreenAlgebra green_algebra(const Module& x, const std::vector<std::size_t>& phi);

struct AssociativityReport {
  bool associative = true;
  std::size_t dim = 0;
  std::array<std::size_t, 3> triple{};  // basis indices
  std::string description;
};
AssociativityReport associativity_probe(const Module& x, const std::vector<std::size_t>& phi);

struct GreenBimodule {
  GreenAlgebra left, right;
  GreenSpace space;
  Bimodule bimodule;
};
GreenBimodule green_bimodule(const GreenAlgebra& gx, const GreenAlgebra& gy);
GreenBimodule green_bimodule(const Module& x, const Module& y, const std::vector<std::size_t>& phi);

// rad G = diagonal copies of rad End(X) plus every block above the diagonal.
bool radical_shape_check(const GreenAlgebra& g);

}  // namespace fdalg
