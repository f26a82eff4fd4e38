#pragma once

// Support of bimodule elements: eigenblocks of the right action over the
// fraction field, the subbimodules Gamma_A of elements supported on the
// graphs of A, their subquotients and characters, and the complexes these
// functors induce on complexes of bimodules.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soergel/bimodule.hpp"
#include "soergel/complex.hpp"
#include "soergel/coxeter.hpp"
#include "soergel/groebner.hpp"

namespace soergel {

/// Membership flags indexed by group element.
using ElementSet = std::vector<char>;

ElementSet set_all(const CoxeterSystem& w);
ElementSet set_of(const CoxeterSystem& w, const std::vector<Elem>& elems);
ElementSet set_geq(const CoxeterSystem& w, Elem x);
ElementSet set_gt(const CoxeterSystem& w, Elem x);
ElementSet set_leq(const CoxeterSystem& w, Elem x);
ElementSet set_lt(const CoxeterSystem& w, Elem x);

/// For each x, a basis of {m : m * f = x(f) m for all f} over Frac(R),
/// as polynomial vectors in the left basis of M.
struct EigenBlocks {
  std::map<Elem, std::vector<ModVec>> blocks;
  /// Sum of the block dimensions equals the rank.
  bool split = false;
  std::vector<Elem> support() const;
};

EigenBlocks eigen_blocks(const CoxeterSystem& w, const Bimodule& m);

/// Elements of M supported on the graphs of A. Throws std::logic_error when
/// M does not split into eigenblocks.
Submodule gamma(const CoxeterSystem& w, const Bimodule& m, const ElementSet& a);

enum class Side { Delta, Nabla };
std::string side_name(Side s);

/// Gamma_{>=x}/Gamma_{>x} (Delta) or Gamma_{<=x}/Gamma_{<x} (Nabla).
struct FlagPiece {
  Elem x = 0;
  Side side = Side::Delta;
  Subquotient quotient;
  /// Free with the minimal generators as basis.
  bool certified = false;
  /// k for each summand R_x(k), ascending.
  std::vector<int> shifts;
};

FlagPiece gamma_subquotient(const CoxeterSystem& w, const Bimodule& m, Elem x, Side side);

struct Character {
  Side side = Side::Delta;
  std::map<Elem, std::vector<int>> shifts;
  bool certified = true;
  std::vector<Elem> failures;

  int total() const;
  /// "e: 1; s1: -1" style.
  std::string to_string(const CoxeterSystem& w) const;
  bool operator==(const Character& o) const { return side == o.side && shifts == o.shifts; }
};

Character character(const CoxeterSystem& w, const Bimodule& m, Side side);
/// Expected character of M B_s from that of M (on the same side).
Character character_times_Bs(const CoxeterSystem& w, const Character& c, int s);

/// The complex of subquotients Gamma_{>=x/>x} A^i (or the Nabla analogue)
/// written in homogeneous generators, each term a sum of R_x(k).
struct GammaComplex {
  Elem x = 0;
  Side side = Side::Delta;
  LeftComplex complex;
  bool certified = true;
};

GammaComplex gamma_complex(const CoxeterSystem& w, const Complex& a, Elem x, Side side);

struct ExactnessReport {
  bool exact = true;
  /// Per element: the subquotient complex minimizes to zero.
  std::map<Elem, bool> per_x;
  std::vector<Elem> uncertified;
};

ExactnessReport is_delta_exact(const CoxeterSystem& w, const Complex& a);
ExactnessReport is_nabla_exact(const CoxeterSystem& w, const Complex& a);

struct HomFormulaCheck {
  long long lhs = 0;
  long long rhs = 0;
  bool equal = false;
};

/// dim hom(M, N(d)) against the sum over x of the degree-d parts of
/// Hom(Delta-piece of M, Nabla-piece of N)(-2 l(x)). Throws std::logic_error
/// if a flag certificate fails.
HomFormulaCheck soergel_hom_check(const CoxeterSystem& w, const Bimodule& m, const Bimodule& n, int d);

/// steps[i] equals gamma(N, {order[0..i]}) for every i.
bool filtration_identify(const CoxeterSystem& w, const Bimodule& n, const std::vector<Submodule>& steps,
                         const std::vector<Elem>& order);

/// sub/low as a left-free bimodule in the minimal generators of the quotient,
/// when it is free and both are stable under the right action.
std::optional<Bimodule> subquotient_bimodule(const Bimodule& m, const Submodule& sub, const Submodule& low,
                                             std::string label = "Q");

void clear_support_cache();

}  // namespace soergel
