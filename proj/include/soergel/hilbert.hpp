#pragma once

// Graded Hilbert series of finitely generated graded R-modules, stored as
// p(v) / (1 - v^2)^n with p a Laurent polynomial with integer coefficients.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace soergel {

class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly monomial(int exponent, long long coeff = 1);

  bool is_zero() const { return coeffs_.empty(); }
  long long coefficient(int exponent) const;
  const std::map<int, long long>& coefficients() const { return coeffs_; }

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  /// Multiplication by v^k.
  LaurentPoly shifted(int k) const;
  bool operator==(const LaurentPoly&) const = default;

  /// "v^-1 + 2 + v^2" style.
  std::string to_string() const;

 private:
  void add(int e, long long c);
  std::map<int, long long> coeffs_;
};

class HilbertSeries {
 public:
  HilbertSeries() = default;
  HilbertSeries(LaurentPoly numerator, int nvars) : num_(std::move(numerator)), nvars_(nvars) {}

  const LaurentPoly& numerator() const { return num_; }
  int nvars() const { return nvars_; }
  bool is_zero() const { return num_.is_zero(); }

  /// Dimension of the degree-d piece.
  long long dim(int d) const;
  /// Coefficients of v^lo .. v^hi.
  std::vector<long long> truncated(int lo, int hi) const;

  /// When the numerator has nonnegative coefficients, the multiset of
  /// generator degrees of a free module with this series (ascending).
  std::optional<std::vector<int>> free_generator_degrees() const;

  HilbertSeries& operator+=(const HilbertSeries& other);
  HilbertSeries& operator-=(const HilbertSeries& other);
  friend HilbertSeries operator+(HilbertSeries a, const HilbertSeries& b) { return a += b; }
  friend HilbertSeries operator-(HilbertSeries a, const HilbertSeries& b) { return a -= b; }
  bool operator==(const HilbertSeries& other) const;

  std::string to_string() const;

 private:
  LaurentPoly num_;
  int nvars_ = 0;
};

/// Series of the free module R(k_1) + ... + R(k_m) for the given shifts k:
/// each summand is generated in degree -k and contributes v^-k / (1-v^2)^n.
HilbertSeries hilbert_series_free(std::span<const int> shifts, int nvars);

/// Same, indexed by generator degrees instead of shifts.
HilbertSeries hilbert_series_generated(std::span<const int> degrees, int nvars);

}  // namespace soergel
