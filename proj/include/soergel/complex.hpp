#pragma once

// Bounded cochain complexes of left-free graded bimodules.
//
// Each term is a list of summands; the differential d^i is one matrix from
// the direct sum of the summands of term i to that of term i+1, with the
// block for summand p of term i in the columns starting at offset(i, p).

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soergel/bimodule.hpp"
#include "soergel/groebner.hpp"
#include "soergel/linalg.hpp"

namespace soergel {

class Complex {
 public:
  Complex() : Complex(0, 0, {}, {}, false) {}
  /// terms[k] sits in cohomological index lo + k; diffs[k] : terms[k] -> terms[k+1].
  /// Empty terms at either end are trimmed. Checks d^2 = 0 and that each
  /// differential is a degree-0 bimodule map unless `validate` is false.
  Complex(int nvars, int lo, std::vector<std::vector<BimodulePtr>> terms, std::vector<PolyMatrix> diffs,
          bool validate = true);
  /// A single bimodule in index i.
  static Complex single(BimodulePtr m, int index = 0);
  static Complex zero(int nvars);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int lo() const { return lo_; }
  /// Last nonzero index (lo() - 1 for the zero complex).
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }

  const std::vector<BimodulePtr>& summands(int i) const;
  int rank(int i) const;
  std::vector<int> degrees(int i) const;
  int offset(int i, int p) const;
  /// Direct sum of the summands of term i (zero bimodule outside the range).
  const Bimodule& total(int i) const;
  BimodulePtr total_ptr(int i) const;
  /// d^i : term i -> term i+1, correctly sized zero matrix outside the range.
  PolyMatrix differential(int i) const;
  const PolyMatrix* differential_ptr(int i) const;

  /// Throws std::logic_error when d^2 != 0 or a differential is not a degree-0 map.
  void validate() const;

  /// "B_s1 -> R(1)" style, with the lowest index in brackets.
  std::string summary() const;
  std::string serialize() const;
  static Complex deserialize(std::string_view text);

 private:
  int nvars_ = 0;
  int lo_ = 0;
  std::vector<std::vector<BimodulePtr>> terms_;
  std::vector<BimodulePtr> totals_;
  BimodulePtr zero_total_;
  std::vector<std::vector<int>> offsets_;
  std::vector<PolyMatrix> diffs_;
};

/// A family of maps f^j : A^j -> B^{j+shift}, each homogeneous of internal degree `degree`.
struct ChainMap {
  int shift = 0;
  int degree = 0;
  std::map<int, PolyMatrix> comps;

  /// Component at index j, or the zero matrix of the right size.
  PolyMatrix at(const Complex& a, const Complex& b, int j) const;
};

/// d_B f = (-1)^shift f d_A in every index, and each component is a bimodule map.
bool is_closed(const Complex& a, const Complex& b, const ChainMap& f);

/// Total complex with d = d_A (x) id + (-1)^i id (x) d_B on A^i (x) B^j.
/// Summands of index k are ordered by i ascending, then the A-summand, then the B-summand.
Complex tensor_complex(const Complex& a, const Complex& b);
/// Cone of a closed degree-0 map with shift 0: C^i = A^{i+1} + B^i, d = [[-d_A, 0], [f, d_B]].
/// Throws std::invalid_argument if f is not closed of that kind.
Complex cone(const Complex& a, const Complex& b, const ChainMap& f);
/// A[n]: terms A^{i+n}, differential multiplied by (-1)^n.
Complex shift(const Complex& a, int n);
/// Grading shift A(k) of every term.
Complex grading_shift(const Complex& a, int k);
/// Terms with index >= i (resp. < i), other terms replaced by zero.
Complex truncate_geq(const Complex& a, int i);
Complex truncate_lt(const Complex& a, int i);

/// The hom complex Hom^n = prod_j hom(A^j, B^{j+n}) in a single internal degree
/// d, with D(f) = d_B f - (-1)^n f d_A.
class HomComplex {
 public:
  HomComplex(const Complex& a, const Complex& b, int d);

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int degree() const { return d_; }
  int dim(int n) const;
  int differential_rank(int n) const;
  /// Dimension of degree-d homotopy classes A -> B[n].
  int cohomology_dim(int n) const;
  /// Image coordinates of each basis vector of Hom^n inside Hom^{n+1}.
  const std::vector<SparseVec>& differential(int n) const;
  /// The chain map with the given coordinates in Hom^n.
  ChainMap to_chain_map(int n, const std::vector<Rational>& coords) const;
  /// Closed maps whose classes form a basis of the degree-n cohomology.
  std::vector<ChainMap> cohomology_representatives(int n) const;

 private:
  struct Block {
    int j, p, q;
    int row0, col0;  // inside the totals of B^{j+n} and A^j
    HomSpacePtr space;
    int start;  // first coordinate in Hom^n
  };
  const Complex* a_;
  const Complex* b_;
  int d_;
  int lo_ = 0, hi_ = -1;
  std::map<int, std::vector<Block>> blocks_;
  std::map<int, int> dims_;
  std::map<int, std::vector<SparseVec>> diffs_;
  std::map<int, int> ranks_;
};

/// dim of degree-d homotopy classes A -> B[i].
int homK_dim(const Complex& a, const Complex& b, int i, int d);
/// The same for every i in [ilo, ihi] from one hom complex.
std::vector<int> homK_dims(const Complex& a, const Complex& b, int ilo, int ihi, int d);

/// A complex of graded free left modules: generator degrees per index and
/// differential matrices (entries of degree col_deg + 0 - row_deg).
struct LeftComplex {
  int nvars = 0;
  int lo = 0;
  std::vector<std::vector<int>> degrees;
  std::vector<PolyMatrix> diffs;  // diffs[k] : index lo+k -> lo+k+1

  static LeftComplex from(const Complex& c);
  int hi() const { return lo + static_cast<int>(degrees.size()) - 1; }
  bool is_zero() const;
  int rank(int i) const;
  std::vector<int> degrees_at(int i) const;
  PolyMatrix differential(int i) const;
  /// Drops empty terms at both ends.
  void trim();
  void validate() const;
  std::string summary() const;
  std::string serialize() const;
  static LeftComplex deserialize(std::string_view text);
};

/// Result of Gaussian elimination of all scalar-unit differential entries.
/// When tracked, pi^i : A^i -> M^i and iota^i : M^i -> A^i are mutually
/// inverse homotopy equivalences of left-module complexes.
struct Minimized {
  LeftComplex complex;
  bool tracked = false;
  std::map<int, PolyMatrix> pi;
  std::map<int, PolyMatrix> iota;
};

Minimized minimize_left(const LeftComplex& a, bool track = false);
LeftComplex minimize_left(const Complex& a);
/// Exact as a complex of left modules (minimal complex is zero).
bool is_acyclic(const LeftComplex& a);
bool is_acyclic(const Complex& a);

/// H^i of a complex of bimodules: a graded left module presented inside the
/// minimal complex, with the right action descended to it.
struct CohomologyModule {
  int nvars = 0;
  int index = 0;
  /// ker d / im d inside the minimal term.
  std::optional<Subquotient> quotient;
  /// Generators written in the original term (cocycles).
  std::vector<ModVec> lifts;
  /// action[k] column a: coordinates of (generator a) * x_k.
  std::vector<PolyMatrix> action;
  /// pi^i, to push cocycles of the original term to the minimal one.
  PolyMatrix pi;

  bool is_zero() const { return !quotient || quotient->is_zero(); }
  int rank() const { return quotient ? static_cast<int>(quotient->generators().size()) : 0; }
  bool is_free() const { return is_zero() || quotient->is_free(); }
  std::vector<int> generator_degrees() const;
  HilbertSeries hilbert_series() const;
  /// Coordinates of the class of a cocycle given in the original term.
  std::vector<Poly> class_of(const ModVec& cocycle) const;
  /// The module as a left-free bimodule when it is free.
  std::optional<Bimodule> as_bimodule(std::string label = "H") const;
};

/// Minimizes once, then answers any index.
class Cohomology {
 public:
  explicit Cohomology(const Complex& a);
  CohomologyModule at(int i) const;
  const Minimized& minimal() const { return min_; }

 private:
  const Complex* a_;
  Minimized min_;
};

CohomologyModule cohomology(const Complex& a, int i);

struct TwistedStandard {
  Elem x = 0;
  int shift = 0;
  bool operator==(const TwistedStandard&) const = default;
};

/// (x, k) when H is free of rank one with generator g of degree -k and
/// g * f = x(f) g for every variable f.
std::optional<TwistedStandard> identify_twisted_standard(const CoxeterSystem& w, const CohomologyModule& h);

}  // namespace soergel
