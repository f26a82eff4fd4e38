#pragma once

// Elements and matrices over the fraction field Q(x1..xn), used only as a
// computational device for eigenspace and support calculations.

#include <span>
#include <string>
#include <vector>

#include "soergel/poly.hpp"

namespace soergel {

class FracElem {
 public:
  FracElem() = default;
  FracElem(Poly num);  // NOLINT(google-explicit-constructor)
  FracElem(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_unit(); }
  /// deg(num) - deg(den); may be negative. Pre: nonzero, homogeneous.
  int degree() const { return num_.degree() - den_.degree(); }

  FracElem operator-() const { return FracElem(-num_, den_); }
  friend FracElem operator+(const FracElem& a, const FracElem& b);
  friend FracElem operator-(const FracElem& a, const FracElem& b) { return a + (-b); }
  friend FracElem operator*(const FracElem& a, const FracElem& b);
  friend FracElem operator/(const FracElem& a, const FracElem& b);
  /// Cross-multiplication equality.
  friend bool operator==(const FracElem& a, const FracElem& b);

  std::string to_string() const;

 private:
  void normalize();
  Poly num_;
  Poly den_ = Poly(0, Rational(1));
};

using FracMatrix = std::vector<std::vector<FracElem>>;

/// Kernel of a polynomial matrix over the fraction field, by fraction-free
/// Gauss-Jordan elimination. Vector i has the nonzero polynomial D at
/// free_cols[i], zero at the other free columns; all entries are polynomials.
struct PolyKernel {
  std::vector<int> free_cols;
  std::vector<std::vector<Poly>> basis;
};
PolyKernel poly_kernel(const PolyMatrix& m);

/// Echelon kernel basis over Frac(R): vector i is exactly 1 at its free
/// column and 0 at the others.
std::vector<std::vector<FracElem>> frac_kernel(const FracMatrix& m, int nvars);

struct ClearedRows {
  PolyMatrix matrix;
  /// Row i of `matrix` is row i of the input times factors[i].
  std::vector<Poly> factors;
};
/// Scales each row by a common multiple of its denominators.
ClearedRows clear_denominators(const FracMatrix& m, int nvars);

/// Divides a vector by every candidate factor that divides all of its
/// entries (repeatedly), then makes the leading nonzero entry monic.
void strip_common_factors(std::vector<Poly>& v, std::span<const Poly> candidates);

}  // namespace soergel
