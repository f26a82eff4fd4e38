#pragma once

// Rouquier complexes of braid words and of group elements, and their
// augmentations by the lone cohomology bimodule.

#include <memory>

#include "soergel/complex.hpp"
#include "soergel/coxeter.hpp"

namespace soergel {

using ComplexPtr = std::shared_ptr<const Complex>;

/// [B_s -> R(1)] in indices 0, 1, with the multiplication map.
Complex build_Fs(const CoxeterSystem& w, int s);
/// [R(-1) -> B_s] in indices -1, 0, with 1 |-> (alpha_s (x) 1 + 1 (x) alpha_s) / 2.
Complex build_Es(const CoxeterSystem& w, int s);
/// Tensor product of the letter complexes, left to right. Memoized.
ComplexPtr build_braid(const CoxeterSystem& w, const BraidWord& word);
ComplexPtr build_Fw(const CoxeterSystem& w, Elem x);
ComplexPtr build_Ew(const CoxeterSystem& w, Elem x);
/// The word whose complex is E_x: the lift of x^-1, inverted.
BraidWord inverse_lift_word(const CoxeterSystem& w, Elem x);
void clear_braid_cache();

struct Augmented {
  Complex complex;
  /// R_x(-l(x)) for F, R_x(l(x)) for E.
  BimodulePtr standard;
  TwistedStandard identified;
  /// Inclusion R_x(-l(x)) -> F_x^0 (column), or projection E_x^0 -> R_x(l(x)) (row).
  PolyMatrix map;
};

/// cone(R_x(-l(x)) -> F_x). Throws std::logic_error if H^0(F_x) is not R_x(-l(x))
/// or the inclusion fails to be a chain map.
Augmented augment_F(const CoxeterSystem& w, Elem x);
/// cone(E_x -> R_x(l(x))), same failure behaviour.
Augmented augment_E(const CoxeterSystem& w, Elem x);

}  // namespace soergel
