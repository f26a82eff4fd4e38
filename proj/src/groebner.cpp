#include "soergel/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "soergel/cancel.hpp"

namespace soergel {

std::optional<ModTerm> leading_term(const ModVec& v) {
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (!v[c].is_zero()) return ModTerm{static_cast<int>(c), v[c].leading().mono, v[c].leading().coeff};
  }
  return std::nullopt;
}

bool is_zero(const ModVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

int vec_degree(const ModVec& v, std::span<const int> ambient_degrees) {
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (!v[c].is_zero()) return v[c].degree() + ambient_degrees[c];
  }
  throw std::invalid_argument("degree of the zero vector");
}

ModVec apply_matrix(const PolyMatrix& m, const ModVec& v) {
  ModVec out(static_cast<std::size_t>(m.rows()), Poly(m.nvars()));
  for (int b = 0; b < m.rows(); ++b) {
    for (int a = 0; a < m.cols(); ++a) {
      const Poly& e = m(b, a);
      const Poly& x = v[static_cast<std::size_t>(a)];
      if (e.is_zero() || x.is_zero()) continue;
      out[static_cast<std::size_t>(b)] += e * x;
    }
  }
  return out;
}

namespace {

bool term_greater(const ModTerm& a, const ModTerm& b) {
  if (a.comp != b.comp) return a.comp < b.comp;
  return a.mono > b.mono;
}

std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Monomial> out;
  for (const auto& m : gens) {
    bool redundant = false;
    for (const auto& o : out) {
      if (o.divides(m)) {
        redundant = true;
        break;
      }
    }
    if (redundant) continue;
    // gens ascending in grlex, so no later element divides an earlier one
    out.push_back(m);
  }
  return out;
}

LaurentPoly numerator_rec(std::vector<Monomial> gens) {
  gens = minimalize(std::move(gens));
  if (gens.empty()) return LaurentPoly::monomial(0);
  for (const auto& m : gens) {
    if (m.is_one()) return LaurentPoly();
  }
  // All generators pure powers of distinct variables: product formula.
  bool pure = true;
  for (const auto& m : gens) {
    int nz = 0;
    for (int k = 0; k < kMaxVars; ++k) nz += m.exponent(k) != 0;
    pure = pure && nz == 1;
  }
  if (pure) {
    LaurentPoly out = LaurentPoly::monomial(0);
    for (const auto& m : gens) out = out * (LaurentPoly::monomial(0) - LaurentPoly::monomial(m.degree()));
    return out;
  }
  Monomial last = gens.back();
  gens.pop_back();
  std::vector<Monomial> colon;
  colon.reserve(gens.size());
  for (const auto& m : gens) colon.push_back(m / m.gcd(last));
  LaurentPoly a = numerator_rec(gens);
  LaurentPoly b = numerator_rec(std::move(colon)).shifted(last.degree());
  return a - b;
}

void sub_scaled(ModVec& v, const ModVec& g, Monomial m, const Rational& c) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!g[k].is_zero()) v[k].add_scaled(g[k], m, -c);
  }
}

ModVec make_monic(ModVec v) {
  auto lt = leading_term(v);
  if (!lt || lt->coeff == 1) return v;
  Rational inv = 1 / lt->coeff;
  for (auto& p : v) p *= inv;
  return v;
}

class Reducer {
 public:
  Reducer(std::size_t ncomp) : by_comp_(ncomp) {}

  void add(const ModVec& g) {
    auto lt = leading_term(g);
    by_comp_[static_cast<std::size_t>(lt->comp)].push_back(static_cast<int>(basis_.size()));
    basis_.push_back(g);
    lts_.push_back(*lt);
  }

  const std::vector<ModVec>& basis() const { return basis_; }
  const std::vector<ModTerm>& lts() const { return lts_; }
  const std::vector<int>& in_comp(int c) const { return by_comp_[static_cast<std::size_t>(c)]; }

  int find_divisor(int comp, Monomial m, int skip = -1) const {
    for (int k : by_comp_[static_cast<std::size_t>(comp)]) {
      if (k != skip && lts_[static_cast<std::size_t>(k)].mono.divides(m)) return k;
    }
    return -1;
  }

  /// Full normal form.
  ModVec reduce(ModVec v, int skip = -1) const {
    ModVec r(v.size(), Poly(nvars_of(v)));
    std::size_t c = 0;
    while (c < v.size()) {
      if (v[c].is_zero()) {
        ++c;
        continue;
      }
      poll_deadline();
      const auto& t = v[c].leading();
      int k = find_divisor(static_cast<int>(c), t.mono, skip);
      if (k >= 0) {
        const ModTerm& lk = lts_[static_cast<std::size_t>(k)];
        sub_scaled(v, basis_[static_cast<std::size_t>(k)], t.mono / lk.mono, t.coeff / lk.coeff);
      } else {
        Poly term = Poly::monomial(v[c].nvars(), t.mono, t.coeff);
        r[c] += term;
        v[c] -= term;
      }
    }
    return r;
  }

  /// Only reduces the leading term until it is irreducible.
  ModVec top_reduce(ModVec v) const {
    while (true) {
      auto lt = leading_term(v);
      if (!lt) return v;
      int k = find_divisor(lt->comp, lt->mono);
      if (k < 0) return v;
      poll_deadline();
      const ModTerm& lk = lts_[static_cast<std::size_t>(k)];
      sub_scaled(v, basis_[static_cast<std::size_t>(k)], lt->mono / lk.mono, lt->coeff / lk.coeff);
    }
  }

 private:
  static int nvars_of(const ModVec& v) {
    for (const auto& p : v) {
      if (p.nvars()) return p.nvars();
    }
    return 0;
  }
  std::vector<ModVec> basis_;
  std::vector<ModTerm> lts_;
  std::vector<std::vector<int>> by_comp_;
};

Reducer make_reducer(const std::vector<ModVec>& basis, std::size_t ncomp) {
  Reducer r(ncomp);
  for (const auto& g : basis) r.add(g);
  return r;
}

}  // namespace

LaurentPoly monomial_ideal_numerator(std::vector<Monomial> gens) { return numerator_rec(std::move(gens)); }

Submodule::Submodule(int nvars, std::vector<int> ambient_degrees) : nvars_(nvars), degrees_(std::move(ambient_degrees)) {}

Submodule Submodule::generated_by(int nvars, std::vector<int> ambient_degrees, const std::vector<ModVec>& gens) {
  Submodule s(nvars, std::move(ambient_degrees));
  s.buchberger(gens);
  return s;
}

Submodule Submodule::whole(int nvars, std::vector<int> ambient_degrees) {
  Submodule s(nvars, std::move(ambient_degrees));
  const std::size_t n = s.degrees_.size();
  for (std::size_t c = 0; c < n; ++c) {
    ModVec e(n, Poly(nvars));
    e[c] = Poly(nvars, Rational(1));
    s.basis_.push_back(std::move(e));
  }
  return s;
}

void Submodule::buchberger(std::vector<ModVec> gens) {
  const std::size_t ncomp = degrees_.size();
  for (auto& g : gens) {
    if (g.size() != ncomp) throw std::invalid_argument("generator has wrong number of components");
  }
  struct Item {
    int degree;
    long seq;
    int i;  // pair (i, j) when j >= 0, else generator index i
    int j;
  };
  auto cmp = [](const Item& a, const Item& b) { return a.degree != b.degree ? a.degree < b.degree : a.seq < b.seq; };
  std::vector<Item> queue;
  long seq = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (soergel::is_zero(gens[i])) continue;
    queue.push_back(Item{vec_degree(gens[i], degrees_), seq++, static_cast<int>(i), -1});
  }
  Reducer red(ncomp);
  std::set<std::pair<int, int>> pending;

  auto add_element = [&](ModVec h) {
    h = make_monic(std::move(h));
    const int idx = static_cast<int>(red.basis().size());
    red.add(h);
    const ModTerm& lt = red.lts().back();
    for (int k : red.in_comp(lt.comp)) {
      if (k == idx) continue;
      Monomial l = lt.mono.lcm(red.lts()[static_cast<std::size_t>(k)].mono);
      queue.push_back(Item{l.degree() + degrees_[static_cast<std::size_t>(lt.comp)], seq++, k, idx});
      pending.emplace(k, idx);
    }
  };

  while (!queue.empty()) {
    auto it = std::min_element(queue.begin(), queue.end(), cmp);
    Item item = *it;
    queue.erase(it);
    poll_deadline();
    ModVec h;
    if (item.j < 0) {
      h = gens[static_cast<std::size_t>(item.i)];
    } else {
      pending.erase({item.i, item.j});
      const ModTerm& li = red.lts()[static_cast<std::size_t>(item.i)];
      const ModTerm& lj = red.lts()[static_cast<std::size_t>(item.j)];
      Monomial l = li.mono.lcm(lj.mono);
      // Chain criterion.
      bool skip = false;
      for (int k : red.in_comp(li.comp)) {
        if (k == item.i || k == item.j) continue;
        if (!red.lts()[static_cast<std::size_t>(k)].mono.divides(l)) continue;
        auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
        if (!pending.count(key(item.i, k)) && !pending.count(key(item.j, k))) {
          skip = true;
          break;
        }
      }
      if (skip) continue;
      h = ModVec(ncomp, Poly(nvars_));
      sub_scaled(h, red.basis()[static_cast<std::size_t>(item.i)], l / li.mono, Rational(-1));
      sub_scaled(h, red.basis()[static_cast<std::size_t>(item.j)], l / lj.mono, Rational(1));
    }
    h = red.top_reduce(std::move(h));
    if (!soergel::is_zero(h)) add_element(std::move(h));
  }

  // Interreduce.
  std::vector<ModVec> elems = red.basis();
  std::vector<ModTerm> lts = red.lts();
  std::vector<char> keep(elems.size(), 1);
  for (std::size_t a = 0; a < elems.size(); ++a) {
    for (std::size_t b = 0; b < elems.size() && keep[a]; ++b) {
      if (a == b || !keep[b] || lts[a].comp != lts[b].comp) continue;
      if (lts[b].mono.divides(lts[a].mono) && (lts[b].mono != lts[a].mono || b < a)) keep[a] = 0;
    }
  }
  std::vector<ModVec> minimal;
  for (std::size_t a = 0; a < elems.size(); ++a) {
    if (keep[a]) minimal.push_back(elems[a]);
  }
  Reducer full = make_reducer(minimal, ncomp);
  basis_.clear();
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    ModVec tail = minimal[a];
    auto lt = leading_term(tail);
    Poly lead = Poly::monomial(nvars_, lt->mono, lt->coeff);
    tail[static_cast<std::size_t>(lt->comp)] -= lead;
    ModVec r = full.reduce(std::move(tail), static_cast<int>(a));
    r[static_cast<std::size_t>(lt->comp)] += lead;
    basis_.push_back(make_monic(std::move(r)));
  }
  std::sort(basis_.begin(), basis_.end(), [](const ModVec& x, const ModVec& y) {
    return term_greater(*leading_term(x), *leading_term(y));
  });
}

ModVec Submodule::reduce(const ModVec& v) const {
  if (v.size() != degrees_.size()) throw std::invalid_argument("vector has wrong number of components");
  Reducer red = make_reducer(basis_, degrees_.size());
  return red.reduce(v);
}

bool Submodule::contains(const ModVec& v) const { return soergel::is_zero(reduce(v)); }

bool Submodule::contains(const Submodule& other) const {
  Reducer red = make_reducer(basis_, degrees_.size());
  for (const auto& g : other.basis_) {
    if (!soergel::is_zero(red.reduce(g))) return false;
  }
  return true;
}

Submodule Submodule::sum(const Submodule& other) const {
  std::vector<ModVec> gens = basis_;
  gens.insert(gens.end(), other.basis_.begin(), other.basis_.end());
  return generated_by(nvars_, degrees_, gens);
}

Submodule Submodule::with_degrees(std::vector<int> ambient_degrees) const {
  if (ambient_degrees.size() != degrees_.size()) throw std::invalid_argument("ambient rank mismatch");
  Submodule out = *this;
  out.degrees_ = std::move(ambient_degrees);
  return out;
}

HilbertSeries Submodule::quotient_hilbert_series() const {
  std::vector<std::vector<Monomial>> per_comp(degrees_.size());
  for (const auto& g : basis_) {
    auto lt = leading_term(g);
    per_comp[static_cast<std::size_t>(lt->comp)].push_back(lt->mono);
  }
  LaurentPoly num;
  for (std::size_t c = 0; c < degrees_.size(); ++c) {
    num += monomial_ideal_numerator(per_comp[c]).shifted(degrees_[c]);
  }
  return HilbertSeries(std::move(num), nvars_);
}

HilbertSeries Submodule::hilbert_series() const {
  HilbertSeries whole = hilbert_series_generated(degrees_, nvars_);
  return whole - quotient_hilbert_series();
}

bool Submodule::is_stable(std::span<const PolyMatrix> rho) const {
  Reducer red = make_reducer(basis_, degrees_.size());
  for (const auto& g : basis_) {
    for (const auto& m : rho) {
      if (!soergel::is_zero(red.reduce(apply_matrix(m, g)))) return false;
    }
  }
  return true;
}

std::string Submodule::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) out += ", ";
    out += "(";
    for (std::size_t c = 0; c < basis_[i].size(); ++c) {
      if (c) out += ", ";
      out += basis_[i][c].to_string();
    }
    out += ")";
  }
  return out + ">";
}

Submodule kernel_of_poly_matrix(const PolyMatrix& p, std::span<const int> source_degrees, std::span<const int> target_degrees,
                                int delta) {
  const int rows = p.rows(), cols = p.cols();
  const int nv = p.nvars();
  std::vector<int> src(source_degrees.begin(), source_degrees.end());
  if (static_cast<int>(src.size()) != cols) throw std::invalid_argument("source degrees do not match matrix");
  if (rows == 0) return Submodule::whole(nv, src);
  std::vector<int> amb;
  for (int r = 0; r < rows; ++r) amb.push_back(target_degrees[static_cast<std::size_t>(r)] - delta);
  amb.insert(amb.end(), src.begin(), src.end());
  std::vector<ModVec> gens;
  for (int a = 0; a < cols; ++a) {
    ModVec g(static_cast<std::size_t>(rows + cols), Poly(nv));
    for (int r = 0; r < rows; ++r) g[static_cast<std::size_t>(r)] = p(r, a);
    g[static_cast<std::size_t>(rows + a)] = Poly(nv, Rational(1));
    gens.push_back(std::move(g));
  }
  Submodule big = Submodule::generated_by(nv, amb, gens);
  std::vector<ModVec> syz;
  for (const auto& g : big.basis()) {
    if (leading_term(g)->comp < rows) continue;
    syz.emplace_back(g.begin() + rows, g.end());
  }
  return Submodule::generated_by(nv, src, syz);
}

Submodule kernel_of_poly_matrix(const PolyMatrix& p, std::span<const int> source_degrees) {
  std::vector<int> tgt(static_cast<std::size_t>(p.rows()), 0);
  for (int r = 0; r < p.rows(); ++r) {
    for (int c = 0; c < p.cols(); ++c) {
      if (!p(r, c).is_zero()) {
        tgt[static_cast<std::size_t>(r)] = source_degrees[static_cast<std::size_t>(c)] - p(r, c).degree();
        break;
      }
    }
  }
  return kernel_of_poly_matrix(p, source_degrees, tgt, 0);
}

Submodule image_of_poly_matrix(const PolyMatrix& p, std::vector<int> target_degrees) {
  std::vector<ModVec> gens;
  for (int a = 0; a < p.cols(); ++a) {
    ModVec g(static_cast<std::size_t>(p.rows()), Poly(p.nvars()));
    for (int r = 0; r < p.rows(); ++r) g[static_cast<std::size_t>(r)] = p(r, a);
    if (!is_zero(g)) gens.push_back(std::move(g));
  }
  return Submodule::generated_by(p.nvars(), std::move(target_degrees), gens);
}

Subquotient::Subquotient(Submodule sub, Submodule low) : sub_(std::move(sub)), low_(std::move(low)) {
  const int nv = sub_.nvars();
  const auto& deg = sub_.ambient_degrees();
  std::vector<ModVec> cand = sub_.basis();
  std::stable_sort(cand.begin(), cand.end(),
                   [&](const ModVec& a, const ModVec& b) { return vec_degree(a, deg) < vec_degree(b, deg); });
  Submodule cur = low_;
  for (const auto& g : cand) {
    if (cur.contains(g)) continue;
    // Reduce modulo Low so lifts are canonical representatives.
    ModVec rep = low_.reduce(g);
    gens_.push_back(rep);
    gen_degrees_.push_back(vec_degree(rep, deg));
    cur = Submodule::generated_by(nv, deg, [&] {
      auto v = cur.basis();
      v.push_back(rep);
      return v;
    }());
  }
  free_ = hilbert_series() == hilbert_series_generated(gen_degrees_, nv);

  const std::size_t n = deg.size(), k = gens_.size();
  std::vector<int> amb = deg;
  amb.insert(amb.end(), gen_degrees_.begin(), gen_degrees_.end());
  std::vector<ModVec> lift_gens;
  for (const auto& l : low_.basis()) {
    ModVec v = l;
    v.resize(n + k, Poly(nv));
    lift_gens.push_back(std::move(v));
  }
  for (std::size_t j = 0; j < k; ++j) {
    ModVec v = gens_[j];
    v.resize(n + k, Poly(nv));
    v[n + j] = Poly(nv, Rational(1));
    lift_gens.push_back(std::move(v));
  }
  lift_ = Submodule::generated_by(nv, amb, lift_gens);
}

std::vector<Poly> Subquotient::coordinates(const ModVec& v) const {
  const std::size_t n = sub_.ambient_degrees().size(), k = gens_.size();
  const int nv = sub_.nvars();
  ModVec ext = v;
  ext.resize(n + k, Poly(nv));
  ModVec r = lift_.reduce(ext);
  for (std::size_t c = 0; c < n; ++c) {
    if (!r[c].is_zero()) throw std::logic_error("element does not lie in the subquotient's numerator");
  }
  std::vector<Poly> out;
  for (std::size_t j = 0; j < k; ++j) out.push_back(-r[n + j]);
  return out;
}

}  // namespace soergel
