#include "soergel/support.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "soergel/cancel.hpp"
#include "soergel/frac.hpp"

namespace soergel {

ElementSet set_all(const CoxeterSystem& w) { return ElementSet(static_cast<std::size_t>(w.size()), 1); }

ElementSet set_of(const CoxeterSystem& w, const std::vector<Elem>& elems) {
  ElementSet s(static_cast<std::size_t>(w.size()), 0);
  for (Elem x : elems) s[static_cast<std::size_t>(x)] = 1;
  return s;
}

ElementSet set_geq(const CoxeterSystem& w, Elem x) {
  ElementSet s(static_cast<std::size_t>(w.size()), 0);
  for (Elem y = 0; y < w.size(); ++y) s[static_cast<std::size_t>(y)] = w.bruhat_leq(x, y);
  return s;
}

ElementSet set_gt(const CoxeterSystem& w, Elem x) {
  ElementSet s = set_geq(w, x);
  s[static_cast<std::size_t>(x)] = 0;
  return s;
}

ElementSet set_leq(const CoxeterSystem& w, Elem x) {
  ElementSet s(static_cast<std::size_t>(w.size()), 0);
  for (Elem y = 0; y < w.size(); ++y) s[static_cast<std::size_t>(y)] = w.bruhat_leq(y, x);
  return s;
}

ElementSet set_lt(const CoxeterSystem& w, Elem x) {
  ElementSet s = set_leq(w, x);
  s[static_cast<std::size_t>(x)] = 0;
  return s;
}

std::string side_name(Side s) { return s == Side::Delta ? "delta" : "nabla"; }

std::vector<Elem> EigenBlocks::support() const {
  std::vector<Elem> out;
  for (const auto& [x, b] : blocks) {
    if (!b.empty()) out.push_back(x);
  }
  return out;
}

namespace {

std::mutex g_support_mutex;
std::unordered_map<std::string, std::shared_ptr<const EigenBlocks>> g_eigen_cache;
std::unordered_map<std::string, std::shared_ptr<const Submodule>> g_gamma_cache;

std::string set_key(const ElementSet& a) {
  std::string s;
  for (char c : a) s.push_back(c ? '1' : '0');
  return s;
}

std::vector<Poly> factor_candidates(const CoxeterSystem& w) {
  std::vector<Poly> out;
  for (Elem t : w.reflections()) out.push_back(w.root_of_reflection(t));
  return out;
}

EigenBlocks compute_eigen_blocks(const CoxeterSystem& w, const Bimodule& m) {
  const int nv = m.nvars(), r = m.rank();
  EigenBlocks out;
  int total = 0;
  const auto candidates = factor_candidates(w);
  for (Elem x = 0; x < w.size(); ++x) {
    poll_deadline();
    Bimodule rx = make_Rx(w, x, 0);
    PolyMatrix stacked(nv * r, r, nv);
    for (int k = 0; k < nv; ++k) {
      const Poly& c = rx.rho(k)(0, 0);
      for (int b = 0; b < r; ++b) {
        for (int a = 0; a < r; ++a) {
          Poly e = m.rho(k)(b, a);
          if (a == b) e -= c;
          stacked(k * r + b, a) = std::move(e);
        }
      }
    }
    PolyKernel ker = poly_kernel(stacked);
    std::vector<ModVec> vecs;
    for (auto& v : ker.basis) {
      strip_common_factors(v, candidates);
      vecs.push_back(std::move(v));
    }
    total += static_cast<int>(vecs.size());
    out.blocks.emplace(x, std::move(vecs));
  }
  out.split = total == r;
  return out;
}

std::shared_ptr<const EigenBlocks> cached_eigen_blocks(const CoxeterSystem& w, const Bimodule& m) {
  const std::string key = w.type_name() + "|" + m.shape_digest();
  {
    std::lock_guard<std::mutex> lock(g_support_mutex);
    auto it = g_eigen_cache.find(key);
    if (it != g_eigen_cache.end()) return it->second;
  }
  auto eb = std::make_shared<const EigenBlocks>(compute_eigen_blocks(w, m));
  std::lock_guard<std::mutex> lock(g_support_mutex);
  return g_eigen_cache.emplace(key, std::move(eb)).first->second;
}

Submodule compute_gamma(const CoxeterSystem& w, const Bimodule& m, const ElementSet& a) {
  const int nv = m.nvars(), r = m.rank();
  auto eb = cached_eigen_blocks(w, m);
  if (!eb->split) throw std::logic_error("bimodule " + m.label() + " does not split into eigenblocks");
  std::vector<ModVec> cols;
  for (const auto& [x, vecs] : eb->blocks) {
    if (!a[static_cast<std::size_t>(x)]) continue;
    cols.insert(cols.end(), vecs.begin(), vecs.end());
  }
  if (static_cast<int>(cols.size()) == r) return Submodule::whole(nv, m.degrees());
  if (cols.empty()) return Submodule(nv, m.degrees());
  // Elements in the Frac-span of the chosen blocks: annihilated by the left
  // kernel of the block matrix.
  PolyMatrix ut(static_cast<int>(cols.size()), r, nv);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (int b = 0; b < r; ++b) ut(static_cast<int>(i), b) = cols[i][static_cast<std::size_t>(b)];
  }
  PolyKernel left = poly_kernel(ut);
  const auto candidates = factor_candidates(w);
  PolyMatrix y(static_cast<int>(left.basis.size()), r, nv);
  std::vector<int> target(left.basis.size(), 0);
  for (std::size_t i = 0; i < left.basis.size(); ++i) {
    auto v = left.basis[i];
    strip_common_factors(v, candidates);
    for (int b = 0; b < r; ++b) {
      y(static_cast<int>(i), b) = v[static_cast<std::size_t>(b)];
      if (!v[static_cast<std::size_t>(b)].is_zero()) target[i] = m.degrees()[static_cast<std::size_t>(b)] - v[static_cast<std::size_t>(b)].degree();
    }
  }
  if (!y.is_homogeneous(target, m.degrees(), 0)) throw std::logic_error("support equations are not homogeneous");
  return kernel_of_poly_matrix(y, m.degrees(), target, 0);
}

}  // namespace

EigenBlocks eigen_blocks(const CoxeterSystem& w, const Bimodule& m) { return *cached_eigen_blocks(w, m); }

Submodule gamma(const CoxeterSystem& w, const Bimodule& m, const ElementSet& a) {
  if (static_cast<int>(a.size()) != w.size()) throw std::invalid_argument("element set has the wrong size");
  const std::string key = w.type_name() + "|" + m.shape_digest() + "|" + set_key(a);
  std::shared_ptr<const Submodule> found;
  {
    std::lock_guard<std::mutex> lock(g_support_mutex);
    auto it = g_gamma_cache.find(key);
    if (it != g_gamma_cache.end()) found = it->second;
  }
  if (!found) {
    auto g = std::make_shared<const Submodule>(compute_gamma(w, m, a));
    std::lock_guard<std::mutex> lock(g_support_mutex);
    found = g_gamma_cache.emplace(key, std::move(g)).first->second;
  }
  return found->with_degrees(m.degrees());
}

void clear_support_cache() {
  std::lock_guard<std::mutex> lock(g_support_mutex);
  g_eigen_cache.clear();
  g_gamma_cache.clear();
}

FlagPiece gamma_subquotient(const CoxeterSystem& w, const Bimodule& m, Elem x, Side side) {
  Submodule sub = gamma(w, m, side == Side::Delta ? set_geq(w, x) : set_leq(w, x));
  Submodule low = gamma(w, m, side == Side::Delta ? set_gt(w, x) : set_lt(w, x));
  Subquotient q(std::move(sub), std::move(low));
  std::vector<int> shifts;
  for (int d : q.generator_degrees()) shifts.push_back(-d);
  std::sort(shifts.begin(), shifts.end());
  const bool ok = q.is_free();
  return FlagPiece{x, side, std::move(q), ok, std::move(shifts)};
}

int Character::total() const {
  int n = 0;
  for (const auto& [x, s] : shifts) n += static_cast<int>(s.size());
  return n;
}

std::string Character::to_string(const CoxeterSystem& w) const {
  std::string out;
  for (const auto& [x, s] : shifts) {
    if (!out.empty()) out += "; ";
    out += w.name(x) + ":";
    for (int k : s) out += " " + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

Character character(const CoxeterSystem& w, const Bimodule& m, Side side) {
  Character c;
  c.side = side;
  for (Elem x = 0; x < w.size(); ++x) {
    FlagPiece p = gamma_subquotient(w, m, x, side);
    if (!p.certified) {
      c.certified = false;
      c.failures.push_back(x);
    }
    if (!p.shifts.empty()) c.shifts.emplace(x, p.shifts);
  }
  return c;
}

Character character_times_Bs(const CoxeterSystem& w, const Character& c, int s) {
  Character out;
  out.side = c.side;
  out.certified = c.certified;
  const Elem se = w.simple(s);
  for (const auto& [x, ks] : c.shifts) {
    const Elem xs = w.multiply(x, se);
    const Elem longer = w.length(xs) > w.length(x) ? xs : x;
    const Elem shorter = longer == xs ? x : xs;
    // Delta: the longer coset element drops by one; Nabla: it rises.
    const int step = c.side == Side::Delta ? 1 : -1;
    for (int k : ks) {
      out.shifts[longer].push_back(k - step);
      out.shifts[shorter].push_back(k + step);
    }
  }
  for (auto& [x, ks] : out.shifts) std::sort(ks.begin(), ks.end());
  return out;
}

GammaComplex gamma_complex(const CoxeterSystem& w, const Complex& a, Elem x, Side side) {
  GammaComplex out;
  out.x = x;
  out.side = side;
  const int nv = a.nvars();
  out.complex.nvars = nv;
  out.complex.lo = a.lo();
  if (a.is_zero()) return out;
  const ElementSet sub_set = side == Side::Delta ? set_geq(w, x) : set_leq(w, x);
  const ElementSet low_set = side == Side::Delta ? set_gt(w, x) : set_lt(w, x);
  // Per term and summand: the subquotient and the offset of its generators.
  std::vector<std::vector<Subquotient>> sq;
  std::vector<std::vector<int>> gen_off;
  for (int i = a.lo(); i <= a.hi(); ++i) {
    std::vector<Subquotient> t;
    std::vector<int> offs;
    std::vector<int> degs;
    for (const auto& s : a.summands(i)) {
      Subquotient q(gamma(w, *s, sub_set), gamma(w, *s, low_set));
      if (!q.is_free()) out.certified = false;
      offs.push_back(static_cast<int>(degs.size()));
      degs.insert(degs.end(), q.generator_degrees().begin(), q.generator_degrees().end());
      t.push_back(std::move(q));
    }
    out.complex.degrees.push_back(std::move(degs));
    sq.push_back(std::move(t));
    gen_off.push_back(std::move(offs));
  }
  for (int i = a.lo(); i < a.hi(); ++i) {
    const std::size_t k = static_cast<std::size_t>(i - a.lo());
    const PolyMatrix& d = *a.differential_ptr(i);
    PolyMatrix m(static_cast<int>(out.complex.degrees[k + 1].size()), static_cast<int>(out.complex.degrees[k].size()), nv);
    const auto& src = a.summands(i);
    const auto& dst = a.summands(i + 1);
    for (std::size_t p = 0; p < src.size(); ++p) {
      const auto& gens = sq[k][p].generators();
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const int col = gen_off[k][p] + static_cast<int>(g);
        for (std::size_t q = 0; q < dst.size(); ++q) {
          poll_deadline();
          PolyMatrix blk = d.block(a.offset(i + 1, static_cast<int>(q)), a.offset(i, static_cast<int>(p)), dst[q]->rank(),
                                   src[p]->rank());
          ModVec v = apply_matrix(blk, gens[g]);
          if (is_zero(v)) continue;
          auto coords = sq[k + 1][q].coordinates(v);
          for (std::size_t c = 0; c < coords.size(); ++c) m(gen_off[k + 1][q] + static_cast<int>(c), col) = coords[c];
        }
      }
    }
    out.complex.diffs.push_back(std::move(m));
  }
  out.complex.trim();
  return out;
}

namespace {

ExactnessReport exactness(const CoxeterSystem& w, const Complex& a, Side side) {
  ExactnessReport r;
  for (Elem x = 0; x < w.size(); ++x) {
    GammaComplex g = gamma_complex(w, a, x, side);
    if (!g.certified) {
      r.uncertified.push_back(x);
      r.exact = false;
    }
    const bool zero = is_acyclic(g.complex);
    r.per_x[x] = zero;
    r.exact = r.exact && zero;
  }
  return r;
}

}  // namespace

ExactnessReport is_delta_exact(const CoxeterSystem& w, const Complex& a) { return exactness(w, a, Side::Delta); }
ExactnessReport is_nabla_exact(const CoxeterSystem& w, const Complex& a) { return exactness(w, a, Side::Nabla); }

HomFormulaCheck soergel_hom_check(const CoxeterSystem& w, const Bimodule& m, const Bimodule& n, int d) {
  Character dm = character(w, m, Side::Delta);
  Character nn = character(w, n, Side::Nabla);
  if (!dm.certified || !nn.certified) throw std::logic_error("flag certificate failed in the hom formula check");
  HomFormulaCheck out;
  out.lhs = hom_space_solve(m, n, d)->dim();
  const int nv = m.nvars();
  for (const auto& [x, js] : dm.shifts) {
    auto it = nn.shifts.find(x);
    if (it == nn.shifts.end()) continue;
    for (int j : js) {
      for (int k : it->second) out.rhs += graded_dim(nv, d - 2 * w.length(x) + k - j);
    }
  }
  out.equal = out.lhs == out.rhs;
  return out;
}

bool filtration_identify(const CoxeterSystem& w, const Bimodule& n, const std::vector<Submodule>& steps,
                         const std::vector<Elem>& order) {
  if (steps.size() > order.size()) throw std::invalid_argument("more filtration steps than elements");
  std::vector<Elem> prefix;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    prefix.push_back(order[i]);
    if (!gamma(w, n, set_of(w, prefix)).equals(steps[i])) return false;
  }
  return true;
}

std::optional<Bimodule> subquotient_bimodule(const Bimodule& m, const Submodule& sub, const Submodule& low,
                                             std::string label) {
  if (!sub.is_stable(m.rho_all()) || !low.is_stable(m.rho_all())) return std::nullopt;
  Subquotient q(sub, low);
  if (!q.is_free()) return std::nullopt;
  const int nv = m.nvars();
  const int r = static_cast<int>(q.generators().size());
  std::vector<PolyMatrix> action;
  for (int k = 0; k < nv; ++k) {
    PolyMatrix act(r, r, nv);
    for (int a = 0; a < r; ++a) {
      auto coords = q.coordinates(apply_matrix(m.rho(k), q.generators()[static_cast<std::size_t>(a)]));
      for (int b = 0; b < r; ++b) act(b, a) = coords[static_cast<std::size_t>(b)];
    }
    action.push_back(std::move(act));
  }
  return Bimodule(nv, q.generator_degrees(), std::move(action), std::move(label));
}

}  // namespace soergel
