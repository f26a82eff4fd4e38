#pragma once

// Finite Weyl groups in their Cartan-matrix realization.
//
// Elements are dense indices 0..size()-1 with 0 the identity. The group acts
// on V* with basis the simple roots alpha_1..alpha_n, which are also the
// polynomial variables x1..xn of R: s_i(alpha_j) = alpha_j - A_ij alpha_i.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soergel/poly.hpp"

namespace soergel {

using Elem = int;

class CoxeterSystem {
 public:
  /// "A1", "A2", "A3", "B2", "B3", "G2", or "I2:m" for crystallographic m.
  static std::shared_ptr<const CoxeterSystem> build(std::string_view cartan_type);

  const std::string& type_name() const { return type_; }
  int rank() const { return rank_; }
  int size() const { return static_cast<int>(words_.size()); }
  int coxeter_entry(int s, int t) const { return coxeter_[static_cast<std::size_t>(s * rank_ + t)]; }
  long long cartan_entry(int i, int j) const { return cartan_[static_cast<std::size_t>(i * rank_ + j)]; }

  Elem identity() const { return 0; }
  Elem simple(int s) const { return simple_[static_cast<std::size_t>(s)]; }
  Elem multiply(Elem x, Elem y) const { return mult_[static_cast<std::size_t>(x) * words_.size() + y]; }
  Elem inverse(Elem x) const { return inv_[static_cast<std::size_t>(x)]; }
  int length(Elem x) const { return static_cast<int>(words_[static_cast<std::size_t>(x)].size()); }
  /// Lexicographically least reduced word (generator indices from 0).
  const std::vector<int>& word(Elem x) const { return words_[static_cast<std::size_t>(x)]; }
  Elem from_word(const std::vector<int>& word) const;
  bool is_reflection(Elem x) const { return reflection_[static_cast<std::size_t>(x)] != 0; }
  const std::vector<Elem>& reflections() const { return reflections_; }
  bool right_descent(Elem x, int s) const { return length(multiply(x, simple(s))) < length(x); }

  /// Matrix of x on V* in the simple-root basis: column j is x(alpha_j).
  const std::vector<long long>& matrix(Elem x) const { return mats_[static_cast<std::size_t>(x)]; }

  /// x applied to a linear form given by its simple-root coordinates.
  std::vector<Rational> act_dual(Elem x, const std::vector<Rational>& form) const;
  /// x applied to a polynomial (ring automorphism of R).
  Poly act(Elem x, const Poly& f) const;
  /// Images x(x_1), ..., x(x_n) of the variables.
  const std::vector<Poly>& variable_images(Elem x) const { return images_[static_cast<std::size_t>(x)]; }
  Poly simple_root(int s) const { return Poly::variable(rank_, s); }
  /// The positive root of a reflection t, i.e. an equation of V^t.
  Poly root_of_reflection(Elem t) const;

  /// Subword criterion, precomputed for all pairs.
  bool bruhat_leq(Elem x, Elem y) const { return bruhat_[static_cast<std::size_t>(x) * words_.size() + y] != 0; }
  /// Elements y with x < y and l(y) = l(x) + 1.
  std::vector<Elem> bruhat_covers_up(Elem x) const;

  /// All elements ordered by (length, index), which refines the Bruhat order.
  std::vector<Elem> bruhat_enumeration() const;
  /// Enumeration refining the Bruhat order in which each right coset
  /// {w, ws} appears as two adjacent entries, shorter element first.
  std::vector<Elem> bruhat_enumeration_cosets(int s) const;

  /// Every reduced word of x.
  std::vector<std::vector<int>> reduced_words(Elem x) const;

  /// "e" for the identity, otherwise e.g. "s1s2s1".
  std::string name(Elem x) const;
  /// Accepts "e", "id", "1", and words like "s1s2", "s1 s2", "s1.s2".
  /// Throws std::invalid_argument on malformed input.
  Elem parse(std::string_view text) const;

  /// Consistency checks (involutions, braid relations, reflection faithfulness).
  /// Throws std::logic_error on failure.
  void verify() const;

 private:
  CoxeterSystem() = default;
  void enumerate();
  void compute_bruhat();

  std::string type_;
  int rank_ = 0;
  std::vector<long long> cartan_;
  std::vector<int> coxeter_;
  std::vector<std::vector<long long>> mats_;
  std::vector<std::vector<Poly>> images_;
  std::vector<std::vector<int>> words_;
  std::vector<Elem> simple_;
  std::vector<Elem> mult_;
  std::vector<Elem> inv_;
  std::vector<char> reflection_;
  std::vector<Elem> reflections_;
  std::vector<char> bruhat_;
};

using CoxeterPtr = std::shared_ptr<const CoxeterSystem>;

/// A word in the braid group generators and their inverses.
struct BraidWord {
  std::vector<std::pair<int, int>> letters;  // (generator, +1 or -1)

  int epsilon() const;
  /// "s1 s2 s1^-1"; empty word prints as "".
  std::string to_string() const;
  /// Parses "s1 s2 s1^-1" (also "s1s2s1^-1"). Generators are 1-based in text.
  static BraidWord parse(std::string_view text, int rank);
  BraidWord inverse() const;
  bool operator==(const BraidWord&) const = default;
};

/// Canonical reduced word of w with all exponents +1.
BraidWord positive_lift(const CoxeterSystem& w_sys, Elem w);
/// Image of a braid word in W.
Elem braid_image(const CoxeterSystem& sys, const BraidWord& word);

}  // namespace soergel
