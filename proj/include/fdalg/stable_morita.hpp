// Stable equivalences of Morita type: certificates, the bimodule syzygy
// Omega_{A^e}(A), transport along tensor functors, the U/V bimodules between
// Beilinson-Green algebras, and syzygy-orbit fingerprints.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdalg/green.hpp"

namespace fdalg {

class StableMoritaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// T ≅ A + P as A-A-bimodules: iso maps A + P (A first) onto T.
struct Decomposition {
  Bimodule tensor;
  Bimodule complement;
  Mat iso, inverse;
  bool complement_projective = false;
  std::size_t trials = 0;
};

struct Certificate {
  enum class Status { Valid, Invalid, Inconclusive };
  Status status = Status::Invalid;
  std::string failure;  // first failed condition, empty when valid
  Algebra a, b;
  Bimodule m, n;  // m: A-B, n: B-A
  bool m_left_projective = false, m_right_projective = false;
  bool n_left_projective = false, n_right_projective = false;
  std::optional<Decomposition> mn, nm;  // M (x)_B N over A, N (x)_A M over B

  bool valid() const { return status == Status::Valid; }
  std::string str() const;
};

Certificate check_certificate(const Algebra& a, const Algebra& b, const Bimodule& m, const Bimodule& n,
                              std::uint64_t seed = 0xC0FFEE, std::size_t trials = 64);
// Re-verifies every stored map and projectivity claim of a valid certificate.
bool recheck(const Certificate& c);

// Splits off a copy of the regular bimodule from an A-A-bimodule t.
// nullopt when the search fails; trials reports the attempts used. With
// degrees given (basis degrees of t and of A), only degree-preserving maps are
// searched, so the complement is graded.
struct SplitGrading {
  std::vector<std::size_t> tensor, algebra;
};
std::optional<Decomposition> split_regular_summand(const Bimodule& t, std::uint64_t seed, std::size_t trials,
                                                   std::size_t* used = nullptr, const SplitGrading* grading = nullptr);

// Kernel of the projective cover of A over A (x) A^op.
Bimodule bimodule_syzygy_generator(const Algebra& a);
Bimodule bimodule_from_enveloping(const Module& e, const Algebra& left, const Algebra& right);

// N (x)_A x.
Module transport(const Bimodule& n, const Module& x);
// The induced map N (x) x -> N (x) x'.
Mat transport_map(const Bimodule& n, const Module& x, const Module& x2, const Mat& f);

// The functor N (x)_A - on Ext: src is Ext^d_A(X, X'), dst is Ext^d_B(NX, NX')
// with dst.res resolving transport(n, X) and dst.target = transport(n, X').
Mat ext_functor(const Bimodule& n, const ExtSpace& src, const ExtSpace& dst);

struct GeneratorReport {
  bool generator = false;
  std::optional<std::size_t> missing_class;
  std::vector<std::pair<Mat, Mat>> splittings;  // per class: P_t -> x, x -> P_t composing to id
};
GeneratorReport is_generator(const Module& x);

struct Theorem1Data {
  Certificate input;
  Module x, y, mny;  // y = N (x) x, mny = M (x) y
  GreenAlgebra lambda, gamma;
  GreenSpace u_space;
  Bimodule u, v;   // u: Lambda-Gamma, v: Gamma-Lambda
  Mat f_map;       // Lambda -> Gamma induced by N (x) -
  Mat g_map;       // Gamma -> G(mny) induced by M (x) -
};
Theorem1Data theorem1_bimodules(const Certificate& cert, const Module& x, const std::vector<std::size_t>& phi);
Certificate verify_theorem1(const Theorem1Data& d, std::uint64_t seed = 0xC0FFEE, std::size_t trials = 64);

// Certificate between G(y) and G(z) carried by G(y, z) and G(z, y); valid when add y = add z.
Certificate green_morita_certificate(const GreenAlgebra& g1, const GreenAlgebra& g2, std::uint64_t seed = 0xC0FFEE,
                                     std::size_t trials = 64);
// Certificate for M1 (x) M2, N2 (x) N1 from certificates A-B and B-C.
Certificate compose(const Certificate& c1, const Certificate& c2, std::uint64_t seed = 0xC0FFEE,
                    std::size_t trials = 64);

struct OrbitFingerprint {
  Module base;
  std::vector<Module> syzygies;                    // Omega^0 .. Omega^r
  std::vector<std::vector<std::size_t>> invariants;  // dim, dim End, dim Hom(S_t, -), dim Hom(-, S_t)
  std::vector<std::vector<IsoVerdict>> verdicts;   // verdicts[i][j - i - 1] compares i < j
  std::size_t certified_isos() const;
  std::size_t undecided() const;
};
OrbitFingerprint orbit_fingerprint(const Module& w, std::size_t r, std::uint64_t seed = 0xC0FFEE,
                                   std::size_t trials = 30);

}  // namespace fdalg
