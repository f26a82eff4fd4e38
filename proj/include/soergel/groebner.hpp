#pragma once

// Graded submodules of free R-modules via Groebner bases.
//
// Module elements are vectors of polynomials (one per component). The term
// order is position over term: a term in a lower-index component is larger,
// and within a component terms compare by graded lex. Inputs are assumed
// homogeneous: component c of a degree-D element is homogeneous of degree
// D - ambient_degrees[c].

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "soergel/hilbert.hpp"
#include "soergel/poly.hpp"

namespace soergel {

using ModVec = std::vector<Poly>;

struct ModTerm {
  int comp = -1;
  Monomial mono;
  Rational coeff;
};

std::optional<ModTerm> leading_term(const ModVec& v);
bool is_zero(const ModVec& v);
/// Degree of a nonzero homogeneous vector.
int vec_degree(const ModVec& v, std::span<const int> ambient_degrees);
/// Left coordinates of (element with coordinates v) * f, given the action matrix rho(f).
ModVec apply_matrix(const PolyMatrix& m, const ModVec& v);

/// Numerator p(v) of the Hilbert series p(v)/(1-v^2)^n of R/J for a monomial
/// ideal J.
LaurentPoly monomial_ideal_numerator(std::vector<Monomial> gens);

class Submodule {
 public:
  Submodule() = default;
  /// The zero submodule.
  Submodule(int nvars, std::vector<int> ambient_degrees);
  static Submodule generated_by(int nvars, std::vector<int> ambient_degrees, const std::vector<ModVec>& gens);
  static Submodule whole(int nvars, std::vector<int> ambient_degrees);

  int nvars() const { return nvars_; }
  int ambient_rank() const { return static_cast<int>(degrees_.size()); }
  const std::vector<int>& ambient_degrees() const { return degrees_; }
  /// Reduced Groebner basis, monic, sorted by leading term descending.
  const std::vector<ModVec>& basis() const { return basis_; }
  bool is_zero() const { return basis_.empty(); }

  /// Normal form with respect to the basis.
  ModVec reduce(const ModVec& v) const;
  bool contains(const ModVec& v) const;
  bool contains(const Submodule& other) const;
  bool equals(const Submodule& other) const { return contains(other) && other.contains(*this); }
  Submodule sum(const Submodule& other) const;
  /// The same submodule inside the ambient module shifted uniformly.
  Submodule with_degrees(std::vector<int> ambient_degrees) const;

  HilbertSeries hilbert_series() const;
  HilbertSeries quotient_hilbert_series() const;

  /// Closed under the right action given by the matrices.
  bool is_stable(std::span<const PolyMatrix> rho) const;

  std::string to_string() const;

 private:
  void buchberger(std::vector<ModVec> gens);
  int nvars_ = 0;
  std::vector<int> degrees_;
  std::vector<ModVec> basis_;
};

/// {v : P v = 0} for a homogeneous matrix P whose entry (r, c) has degree
/// source_degrees[c] + delta - target_degrees[r].
Submodule kernel_of_poly_matrix(const PolyMatrix& p, std::span<const int> source_degrees,
                                std::span<const int> target_degrees, int delta);
/// Same, deriving the target degrees from the matrix entries.
Submodule kernel_of_poly_matrix(const PolyMatrix& p, std::span<const int> source_degrees);

/// The image P(R^cols) inside the target.
Submodule image_of_poly_matrix(const PolyMatrix& p, std::vector<int> target_degrees);

/// A subquotient Sub / Low of a free module (Low inside Sub).
class Subquotient {
 public:
  Subquotient(Submodule sub, Submodule low);

  const Submodule& sub() const { return sub_; }
  const Submodule& low() const { return low_; }
  /// Minimal homogeneous generators (lifts in the ambient module).
  const std::vector<ModVec>& generators() const { return gens_; }
  const std::vector<int>& generator_degrees() const { return gen_degrees_; }
  HilbertSeries hilbert_series() const { return sub_.hilbert_series() - low_.hilbert_series(); }
  /// The generators form a basis (Hilbert series of a free module on them).
  bool is_free() const { return free_; }
  bool is_zero() const { return gens_.empty(); }

  /// Coefficients c with v = sum c_k g_k modulo Low. Throws std::logic_error if
  /// v is not in Sub.
  std::vector<Poly> coordinates(const ModVec& v) const;

 private:
  Submodule sub_;
  Submodule low_;
  std::vector<ModVec> gens_;
  std::vector<int> gen_degrees_;
  bool free_ = false;
  Submodule lift_;  // in ambient + R^k, tracks generator coefficients
};

}  // namespace soergel
