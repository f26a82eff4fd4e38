#pragma once

// Graded R-bimodules that are free as left R-modules.
//
// A bimodule is a list of left-basis generator degrees plus, for each
// variable x_k, the matrix rho(x_k) of the right action: column a holds the
// left coordinates of e_a * x_k. Entry (b, a) is homogeneous of degree
// deg[a] + 2 - deg[b]. Maps between bimodules are matrices acting on left
// coordinates (rows index the target basis, columns the source basis).

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soergel/coxeter.hpp"
#include "soergel/linalg.hpp"
#include "soergel/poly.hpp"

namespace soergel {

class Bimodule {
 public:
  Bimodule() = default;
  /// Validates commutation and homogeneity unless `validate` is false.
  Bimodule(int nvars, std::vector<int> degrees, std::vector<PolyMatrix> rho, std::string label,
           bool validate = true);

  int nvars() const { return nvars_; }
  int rank() const { return static_cast<int>(degrees_.size()); }
  const std::vector<int>& degrees() const { return degrees_; }
  const PolyMatrix& rho(int k) const { return rho_[static_cast<std::size_t>(k)]; }
  const std::vector<PolyMatrix>& rho_all() const { return rho_; }
  const std::string& label() const { return label_; }

  /// Matrix of the right action of an arbitrary polynomial.
  PolyMatrix act(const Poly& f) const;

  /// M(k): generator degrees decrease by k.
  Bimodule shifted(int k) const;
  Bimodule relabeled(std::string label) const;

  /// Digest of the structure with generator degrees normalized so that the
  /// first one is 0; equal digests mean equal up to a grading shift.
  const std::string& shape_digest() const { return digest_; }
  /// Degree of the first generator (0 for the zero module).
  int offset() const { return degrees_.empty() ? 0 : degrees_.front(); }

  /// Canonical JSON text: degrees, action matrices, label.
  std::string serialize() const;
  static Bimodule deserialize(std::string_view text);

  /// Throws std::logic_error if the action matrices fail to commute or an
  /// entry has the wrong degree.
  void validate() const;

 private:
  void compute_digest();
  int nvars_ = 0;
  std::vector<int> degrees_;
  std::vector<PolyMatrix> rho_;
  std::string label_;
  std::string digest_;
};

using BimodulePtr = std::shared_ptr<const Bimodule>;

Bimodule make_R(int nvars, int shift);
Bimodule make_Rx(const CoxeterSystem& w, Elem x, int shift);
/// r = a + b * alpha_s with a = (r + s(r))/2 and b = (r - s(r)) / (2 alpha_s),
/// both s-invariant. Throws std::logic_error if the division fails.
std::pair<Poly, Poly> demazure_split(const CoxeterSystem& w, const Poly& r, int s);
/// R (x)_{R^s} R (1) with basis 1(x)1 (degree -1) and 1(x)alpha_s (degree 1).
Bimodule make_Bs(const CoxeterSystem& w, int s);
/// Basis e_a (x) f_c ordered a-major.
Bimodule tensor(const Bimodule& m, const Bimodule& n);
Bimodule direct_sum(std::span<const BimodulePtr> parts);

/// phi (x) id_N for phi : M -> M'.
PolyMatrix tensor_map_left(const PolyMatrix& phi, int rank_n);
/// id_M (x) psi for psi : N -> N'.
PolyMatrix tensor_map_right(const Bimodule& m, const PolyMatrix& psi);

struct BimoduleMap {
  BimodulePtr source;
  BimodulePtr target;
  int degree = 0;
  PolyMatrix matrix;
};

/// Shape, homogeneity and intertwining: phi rho_M(x_k) = rho_N(x_k) phi.
bool is_bimodule_map(const Bimodule& m, const Bimodule& n, const PolyMatrix& phi, int delta);
BimoduleMap compose(const BimoduleMap& g, const BimoduleMap& f);
Poly determinant(const PolyMatrix& m);
/// Square with determinant a nonzero scalar.
bool is_isomorphism(const BimoduleMap& f);

/// Basis of hom(M, N(delta)): all degree-delta bimodule maps M -> N.
class HomSpace {
 public:
  HomSpace(const Bimodule& m, const Bimodule& n, int delta);

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<PolyMatrix>& basis() const { return basis_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  /// Coordinates (index, value) of a map lying in this space.
  SparseVec coordinates(const PolyMatrix& phi, int row0 = 0, int col0 = 0) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  // Basis vector j is determined by the coefficient of pivot_mono_[j] in
  // entry pivot_entry_[j].
  std::vector<int> pivot_entry_;
  std::vector<Monomial> pivot_mono_;
  std::vector<PolyMatrix> basis_;
};

using HomSpacePtr = std::shared_ptr<const HomSpace>;

/// Memoized by shape digest: hom spaces are invariant under shifting both
/// arguments.
HomSpacePtr hom_space_solve(const Bimodule& m, const Bimodule& n, int delta);
void clear_hom_cache();
std::size_t hom_cache_size();

}  // namespace soergel
