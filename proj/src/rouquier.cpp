#include "soergel/rouquier.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace soergel {

Complex build_Fs(const CoxeterSystem& w, int s) {
  const int nv = w.rank();
  auto bs = std::make_shared<const Bimodule>(make_Bs(w, s));
  auto r1 = std::make_shared<const Bimodule>(make_R(nv, 1));
  PolyMatrix m(1, 2, nv);
  m(0, 0) = Poly(nv, Rational(1));
  m(0, 1) = w.simple_root(s);
  return Complex(nv, 0, {{bs}, {r1}}, {m});
}

Complex build_Es(const CoxeterSystem& w, int s) {
  const int nv = w.rank();
  auto bs = std::make_shared<const Bimodule>(make_Bs(w, s));
  auto rm1 = std::make_shared<const Bimodule>(make_R(nv, -1));
  PolyMatrix eta(2, 1, nv);
  eta(0, 0) = w.simple_root(s) * Rational(1, 2);
  eta(1, 0) = Poly(nv, Rational(1, 2));
  return Complex(nv, -1, {{rm1}, {bs}}, {eta});
}

namespace {

std::mutex g_braid_mutex;
std::map<std::string, ComplexPtr> g_braid_cache;

}  // namespace

ComplexPtr build_braid(const CoxeterSystem& w, const BraidWord& word) {
  const std::string key = w.type_name() + "|" + word.to_string();
  {
    std::lock_guard<std::mutex> lock(g_braid_mutex);
    auto it = g_braid_cache.find(key);
    if (it != g_braid_cache.end()) return it->second;
  }
  ComplexPtr out;
  if (word.letters.empty()) {
    out = std::make_shared<const Complex>(Complex::single(std::make_shared<const Bimodule>(make_R(w.rank(), 0))));
  } else {
    // Extend the memoized prefix by the last letter.
    BraidWord prefix{std::vector<std::pair<int, int>>(word.letters.begin(), word.letters.end() - 1)};
    auto [s, e] = word.letters.back();
    Complex letter = e > 0 ? build_Fs(w, s) : build_Es(w, s);
    if (prefix.letters.empty()) {
      out = std::make_shared<const Complex>(std::move(letter));
    } else {
      out = std::make_shared<const Complex>(tensor_complex(*build_braid(w, prefix), letter));
    }
  }
  std::lock_guard<std::mutex> lock(g_braid_mutex);
  return g_braid_cache.emplace(key, std::move(out)).first->second;
}

BraidWord inverse_lift_word(const CoxeterSystem& w, Elem x) { return positive_lift(w, w.inverse(x)).inverse(); }

ComplexPtr build_Fw(const CoxeterSystem& w, Elem x) { return build_braid(w, positive_lift(w, x)); }

ComplexPtr build_Ew(const CoxeterSystem& w, Elem x) { return build_braid(w, inverse_lift_word(w, x)); }

void clear_braid_cache() {
  std::lock_guard<std::mutex> lock(g_braid_mutex);
  g_braid_cache.clear();
}

Augmented augment_F(const CoxeterSystem& w, Elem x) {
  ComplexPtr f = build_Fw(w, x);
  const int l = w.length(x);
  Cohomology coh(*f);
  CohomologyModule h0 = coh.at(0);
  auto id = identify_twisted_standard(w, h0);
  if (!id || id->x != x || id->shift != -l) {
    throw std::logic_error("H^0(F_" + w.name(x) + ") is not the expected twisted standard bimodule");
  }
  ModVec gen = h0.lifts.front();
  auto lt = leading_term(gen);
  const Rational inv = 1 / lt->coeff;
  const int nv = w.rank();
  PolyMatrix col(f->rank(0), 1, nv);
  for (int r = 0; r < f->rank(0); ++r) col(r, 0) = gen[static_cast<std::size_t>(r)] * inv;
  auto rx = std::make_shared<const Bimodule>(make_Rx(w, x, -l));
  if (!is_bimodule_map(*rx, f->total(0), col, 0) || !(f->differential(0) * col).is_zero()) {
    throw std::logic_error("inclusion of H^0 into F_" + w.name(x) + " is not a chain map");
  }
  ChainMap m;
  m.comps.emplace(0, col);
  Complex src = Complex::single(rx);
  return Augmented{cone(src, *f, m), rx, *id, col};
}

Augmented augment_E(const CoxeterSystem& w, Elem x) {
  ComplexPtr e = build_Ew(w, x);
  const int l = w.length(x);
  Cohomology coh(*e);
  CohomologyModule h0 = coh.at(0);
  auto id = identify_twisted_standard(w, h0);
  if (!id || id->x != x || id->shift != l) {
    throw std::logic_error("H^0(E_" + w.name(x) + ") is not the expected twisted standard bimodule");
  }
  const int nv = w.rank();
  const int n = e->rank(0);
  PolyMatrix row(1, n, nv);
  for (int a = 0; a < n; ++a) {
    ModVec ea(static_cast<std::size_t>(n), Poly(nv));
    ea[static_cast<std::size_t>(a)] = Poly(nv, Rational(1));
    row(0, a) = h0.class_of(ea).front();
  }
  for (int a = 0; a < n; ++a) {
    if (row(0, a).is_zero()) continue;
    const Rational inv = 1 / row(0, a).leading().coeff;
    row = row * inv;
    break;
  }
  auto rx = std::make_shared<const Bimodule>(make_Rx(w, x, l));
  if (!is_bimodule_map(e->total(0), *rx, row, 0) || !(row * e->differential(-1)).is_zero()) {
    throw std::logic_error("projection of E_" + w.name(x) + " onto H^0 is not a chain map");
  }
  ChainMap m;
  m.comps.emplace(0, row);
  Complex dst = Complex::single(rx);
  return Augmented{cone(*e, dst, m), rx, *id, row};
}

}  // namespace soergel
