#pragma once

// Sparse multivariate polynomials over Q with every variable in degree 2,
// and matrices of them.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "soergel/rational.hpp"

namespace soergel {

inline constexpr int kMaxVars = 4;

/// Exponent vector packed into one word: total degree in the top field, then
/// the exponents of x1..x4. Integer comparison of the packed word is graded
/// lexicographic order with x1 > x2 > x3 > x4.
class Monomial {
 public:
  constexpr Monomial() = default;

  static Monomial variable(int k);
  static Monomial from_exponents(std::span<const int> exps);

  int exponent(int k) const {
    return static_cast<int>((key_ >> (36 - 12 * k)) & kFieldMask);
  }
  /// Number of linear factors.
  int total() const { return static_cast<int>(key_ >> 48); }
  /// Internal degree; variables sit in degree 2.
  int degree() const { return 2 * total(); }
  bool is_one() const { return key_ == 0; }

  bool divides(Monomial other) const;
  Monomial lcm(Monomial other) const;
  Monomial gcd(Monomial other) const;

  Monomial operator*(Monomial other) const { return Monomial(key_ + other.key_); }
  /// Pre: other divides *this.
  Monomial operator/(Monomial other) const { return Monomial(key_ - other.key_); }

  std::uint64_t key() const { return key_; }
  auto operator<=>(const Monomial&) const = default;

 private:
  static constexpr std::uint64_t kFieldMask = 0xFFF;
  explicit constexpr Monomial(std::uint64_t key) : key_(key) {}
  std::uint64_t key_ = 0;
};

/// All monomials of polynomial degree `total` in `nvars` variables, in
/// descending graded-lex order.
const std::vector<Monomial>& monomials_of_total(int nvars, int total);

/// Number of monomials of polynomial degree `total` in `nvars` variables,
/// i.e. dim R_{2 total}.
long long count_monomials(int nvars, int total);

/// Dimension of the internal-degree-d piece of R = Q[x1..xn] (zero for odd d).
long long graded_dim(int nvars, int d);

class Poly {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
    bool operator==(const Term&) const = default;
  };

  /// The zero polynomial, compatible with any variable count.
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}
  Poly(int nvars, const Rational& c);

  static Poly variable(int nvars, int k);
  static Poly monomial(int nvars, Monomial m, const Rational& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  /// Nonzero constant, i.e. a unit of R.
  bool is_unit() const { return terms_.size() == 1 && terms_[0].mono.is_one(); }
  Rational constant_term() const;
  Rational coefficient(Monomial m) const;

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  /// Pre: nonzero.
  const Term& leading() const { return terms_.front(); }

  bool is_homogeneous() const;
  /// Internal degree of the leading term. Pre: nonzero.
  int degree() const { return terms_.front().mono.degree(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly& operator*=(const Poly& other) { return *this = *this * other; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly times_term(Monomial m, const Rational& c) const;
  /// *this += c * m * other.
  void add_scaled(const Poly& other, Monomial m, const Rational& c);

  /// Quotient if `divisor` divides *this exactly in R.
  std::optional<Poly> divide_exact(const Poly& divisor) const;
  Poly pow(int e) const;

  /// Ring homomorphism x_k -> images[k].
  Poly substitute(std::span<const Poly> images) const;

  /// Divides by the leading coefficient. Zero stays zero.
  Poly monic() const;

  /// Canonical text: "3/2*x1^2*x2 - x2^3 + 1"; "0" for zero.
  std::string to_string() const;
  static Poly parse(std::string_view text, int nvars);

 private:
  friend class PolyBuilder;
  void check_vars(const Poly& other) const;
  int nvars_ = 0;
  std::vector<Term> terms_;  // strictly descending monomials, nonzero coefficients
};

/// Collects terms in arbitrary order and produces a canonical Poly.
class PolyBuilder {
 public:
  explicit PolyBuilder(int nvars) : nvars_(nvars) {}
  void add(Monomial m, const Rational& c);
  Poly build();

 private:
  int nvars_;
  std::vector<Poly::Term> terms_;
};

/// Dense matrix of polynomials. Optional row/column degree vectors declare the
/// grading: entry (r, c) of a degree-delta matrix is zero or homogeneous of
/// degree col_degrees[c] + delta - row_degrees[r].
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols, int nvars);
  static PolyMatrix identity(int n, int nvars);
  static PolyMatrix scalar(int n, const Poly& p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nvars() const { return nvars_; }

  Poly& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Poly& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  PolyMatrix operator*(const PolyMatrix& other) const;
  PolyMatrix operator+(const PolyMatrix& other) const;
  PolyMatrix operator-(const PolyMatrix& other) const;
  PolyMatrix operator*(const Rational& c) const;
  PolyMatrix operator-() const { return *this * Rational(-1); }
  bool operator==(const PolyMatrix& other) const;

  bool is_zero() const;
  PolyMatrix transpose() const;
  PolyMatrix block(int r0, int c0, int nrows, int ncols) const;
  void set_block(int r0, int c0, const PolyMatrix& b);

  /// True when every nonzero entry has the forced degree for `delta`.
  bool is_homogeneous(std::span<const int> row_deg, std::span<const int> col_deg, int delta) const;

  std::vector<int> row_degrees;
  std::vector<int> col_degrees;

 private:
  int rows_ = 0;
  int cols_ = 0;
  int nvars_ = 0;
  std::vector<Poly> data_;
};

bool pairwise_commute(std::span<const PolyMatrix> mats);

/// Evaluates g on commuting square matrices (one per variable).
PolyMatrix substitute_matrices(const Poly& g, std::span<const PolyMatrix> mats);

/// Repeated evaluation against a fixed tuple of commuting matrices, caching
/// the monomial images.
class MatrixEvaluator {
 public:
  explicit MatrixEvaluator(std::span<const PolyMatrix> mats);
  PolyMatrix operator()(const Poly& g);
  const PolyMatrix& monomial(Monomial m);
  int dim() const { return dim_; }

 private:
  std::vector<PolyMatrix> mats_;
  int dim_ = 0;
  int nvars_ = 0;
  std::unordered_map<std::uint64_t, PolyMatrix> cache_;
};

}  // namespace soergel
