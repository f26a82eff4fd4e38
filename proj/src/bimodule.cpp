#include "soergel/bimodule.hpp"

#include <json.hpp>

#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "soergel/cancel.hpp"
#include "soergel/digest.hpp"

namespace soergel {

using json = nlohmann::json;

Bimodule::Bimodule(int nvars, std::vector<int> degrees, std::vector<PolyMatrix> rho, std::string label, bool validate_now)
    : nvars_(nvars), degrees_(std::move(degrees)), rho_(std::move(rho)), label_(std::move(label)) {
  if (static_cast<int>(rho_.size()) != nvars_) throw std::invalid_argument("need one action matrix per variable");
  for (auto& m : rho_) {
    if (m.rows() != rank() || m.cols() != rank()) throw std::invalid_argument("action matrix has wrong shape");
    m.row_degrees = degrees_;
    m.col_degrees = degrees_;
  }
  if (validate_now) validate();
  compute_digest();
}

void Bimodule::validate() const {
  for (const auto& m : rho_) {
    if (!m.is_homogeneous(degrees_, degrees_, 2)) throw std::logic_error("action matrix entry has wrong degree: " + label_);
  }
  if (!pairwise_commute(rho_)) throw std::logic_error("action matrices do not commute: " + label_);
}

void Bimodule::compute_digest() {
  std::string s = std::to_string(nvars_) + "|";
  for (int d : degrees_) s += std::to_string(d - offset()) + ",";
  for (const auto& m : rho_) {
    s += "|";
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j < m.cols(); ++j) s += m(i, j).to_string() + ";";
    }
  }
  digest_ = sha256_hex(s);
}

PolyMatrix Bimodule::act(const Poly& f) const {
  if (rank() == 0) return PolyMatrix(0, 0, nvars_);
  return substitute_matrices(f, rho_);
}

Bimodule Bimodule::shifted(int k) const {
  Bimodule out = *this;
  for (int& d : out.degrees_) d -= k;
  for (auto& m : out.rho_) {
    m.row_degrees = out.degrees_;
    m.col_degrees = out.degrees_;
  }
  if (k != 0) out.label_ = "(" + label_ + ")(" + std::to_string(k) + ")";
  return out;
}

Bimodule Bimodule::relabeled(std::string label) const {
  Bimodule out = *this;
  out.label_ = std::move(label);
  return out;
}

std::string Bimodule::serialize() const {
  json j;
  j["nvars"] = nvars_;
  j["degrees"] = degrees_;
  j["label"] = label_;
  json mats = json::array();
  for (const auto& m : rho_) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (int c = 0; c < m.cols(); ++c) row.push_back(m(i, c).to_string());
      rows.push_back(row);
    }
    mats.push_back(rows);
  }
  j["rho"] = mats;
  return j.dump();
}

Bimodule Bimodule::deserialize(std::string_view text) {
  json j = json::parse(text);
  int nvars = j.at("nvars").get<int>();
  auto degrees = j.at("degrees").get<std::vector<int>>();
  int r = static_cast<int>(degrees.size());
  std::vector<PolyMatrix> rho;
  for (const auto& mj : j.at("rho")) {
    PolyMatrix m(r, r, nvars);
    for (int i = 0; i < r; ++i) {
      for (int c = 0; c < r; ++c) m(i, c) = Poly::parse(mj.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(c)).get<std::string>(), nvars);
    }
    rho.push_back(std::move(m));
  }
  return Bimodule(nvars, std::move(degrees), std::move(rho), j.at("label").get<std::string>());
}

Bimodule make_R(int nvars, int shift) {
  std::vector<PolyMatrix> rho;
  for (int k = 0; k < nvars; ++k) rho.push_back(PolyMatrix::scalar(1, Poly::variable(nvars, k)));
  std::string label = shift == 0 ? "R" : "R(" + std::to_string(shift) + ")";
  return Bimodule(nvars, {-shift}, std::move(rho), label);
}

Bimodule make_Rx(const CoxeterSystem& w, Elem x, int shift) {
  const int n = w.rank();
  std::vector<PolyMatrix> rho;
  for (int k = 0; k < n; ++k) rho.push_back(PolyMatrix::scalar(1, w.variable_images(x)[static_cast<std::size_t>(k)]));
  std::string label = "R_" + w.name(x);
  if (shift != 0) label += "(" + std::to_string(shift) + ")";
  return Bimodule(n, {-shift}, std::move(rho), label);
}

std::pair<Poly, Poly> demazure_split(const CoxeterSystem& w, const Poly& r, int s) {
  Poly sr = w.act(w.simple(s), r);
  Poly a = (r + sr) * Rational(1, 2);
  Poly diff = (r - sr) * Rational(1, 2);
  auto b = diff.divide_exact(w.simple_root(s));
  if (!b) throw std::logic_error("r - s(r) is not divisible by alpha_s");
  return {std::move(a), std::move(*b)};
}

Bimodule make_Bs(const CoxeterSystem& w, int s) {
  const int n = w.rank();
  Poly as2 = w.simple_root(s) * w.simple_root(s);
  std::vector<PolyMatrix> rho;
  for (int k = 0; k < n; ++k) {
    auto [a, b] = demazure_split(w, Poly::variable(n, k), s);
    PolyMatrix m(2, 2, n);
    m(0, 0) = a;
    m(1, 0) = b;
    m(0, 1) = as2 * b;
    m(1, 1) = a;
    rho.push_back(std::move(m));
  }
  return Bimodule(n, {-1, 1}, std::move(rho), "B_s" + std::to_string(s + 1));
}

Bimodule tensor(const Bimodule& m, const Bimodule& n) {
  const int nv = m.nvars() ? m.nvars() : n.nvars();
  const int rm = m.rank(), rn = n.rank();
  std::vector<int> degrees;
  for (int a = 0; a < rm; ++a) {
    for (int c = 0; c < rn; ++c) degrees.push_back(m.degrees()[static_cast<std::size_t>(a)] + n.degrees()[static_cast<std::size_t>(c)]);
  }
  std::vector<PolyMatrix> rho;
  if (rm == 0 || rn == 0) {
    for (int k = 0; k < nv; ++k) rho.emplace_back(0, 0, nv);
    return Bimodule(nv, {}, std::move(rho), m.label() + n.label(), false);
  }
  MatrixEvaluator eval(m.rho_all());
  for (int k = 0; k < nv; ++k) {
    PolyMatrix out(rm * rn, rm * rn, nv);
    const PolyMatrix& rk = n.rho(k);
    for (int d = 0; d < rn; ++d) {
      for (int c = 0; c < rn; ++c) {
        const Poly& g = rk(d, c);
        if (g.is_zero()) continue;
        PolyMatrix gm = eval(g);
        for (int b = 0; b < rm; ++b) {
          for (int a = 0; a < rm; ++a) {
            if (!gm(b, a).is_zero()) out(b * rn + d, a * rn + c) = gm(b, a);
          }
        }
      }
    }
    rho.push_back(std::move(out));
  }
  // The tensor product of valid bimodules is valid; skip the re-check.
  return Bimodule(nv, std::move(degrees), std::move(rho), m.label() + n.label(), false);
}

Bimodule direct_sum(std::span<const BimodulePtr> parts) {
  int nv = 0;
  int total = 0;
  std::vector<int> degrees;
  std::string label;
  for (const auto& p : parts) {
    nv = nv ? nv : p->nvars();
    total += p->rank();
    degrees.insert(degrees.end(), p->degrees().begin(), p->degrees().end());
    if (!label.empty()) label += " + ";
    label += p->label();
  }
  std::vector<PolyMatrix> rho;
  for (int k = 0; k < nv; ++k) {
    PolyMatrix out(total, total, nv);
    int off = 0;
    for (const auto& p : parts) {
      out.set_block(off, off, p->rho(k));
      off += p->rank();
    }
    rho.push_back(std::move(out));
  }
  if (parts.empty()) label = "0";
  return Bimodule(nv, std::move(degrees), std::move(rho), label, false);
}

PolyMatrix tensor_map_left(const PolyMatrix& phi, int rank_n) {
  PolyMatrix out(phi.rows() * rank_n, phi.cols() * rank_n, phi.nvars());
  for (int b = 0; b < phi.rows(); ++b) {
    for (int a = 0; a < phi.cols(); ++a) {
      const Poly& e = phi(b, a);
      if (e.is_zero()) continue;
      for (int c = 0; c < rank_n; ++c) out(b * rank_n + c, a * rank_n + c) = e;
    }
  }
  return out;
}

PolyMatrix tensor_map_right(const Bimodule& m, const PolyMatrix& psi) {
  const int rm = m.rank();
  PolyMatrix out(rm * psi.rows(), rm * psi.cols(), psi.nvars() ? psi.nvars() : m.nvars());
  if (rm == 0) return out;
  MatrixEvaluator eval(m.rho_all());
  for (int d = 0; d < psi.rows(); ++d) {
    for (int c = 0; c < psi.cols(); ++c) {
      const Poly& g = psi(d, c);
      if (g.is_zero()) continue;
      PolyMatrix gm = eval(g);
      for (int b = 0; b < rm; ++b) {
        for (int a = 0; a < rm; ++a) {
          if (!gm(b, a).is_zero()) out(b * psi.rows() + d, a * psi.cols() + c) = gm(b, a);
        }
      }
    }
  }
  return out;
}

bool is_bimodule_map(const Bimodule& m, const Bimodule& n, const PolyMatrix& phi, int delta) {
  if (phi.rows() != n.rank() || phi.cols() != m.rank()) return false;
  if (!phi.is_homogeneous(n.degrees(), m.degrees(), delta)) return false;
  for (int k = 0; k < m.nvars(); ++k) {
    if (!(phi * m.rho(k) == n.rho(k) * phi)) return false;
  }
  return true;
}

BimoduleMap compose(const BimoduleMap& g, const BimoduleMap& f) {
  if (g.matrix.cols() != f.matrix.rows()) throw std::invalid_argument("cannot compose: shape mismatch");
  return BimoduleMap{f.source, g.target, f.degree + g.degree, g.matrix * f.matrix};
}

Poly determinant(const PolyMatrix& input) {
  const int n = input.rows();
  if (n != input.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const int nv = input.nvars();
  if (n == 0) return Poly(nv, Rational(1));
  std::vector<std::vector<Poly>> a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)].push_back(input(i, j));
  }
  Poly prev(nv, Rational(1));
  Rational sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i) {
      if (!a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return Poly(nv);
    if (piv != k) {
      std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(k)]);
      sign = -sign;
    }
    const Poly& p = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Poly v = p * a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                 a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        auto q = v.divide_exact(prev);
        if (!q) throw std::logic_error("Bareiss division failed");
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(*q);
      }
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = Poly(nv);
    }
    prev = p;
  }
  return a[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)] * sign;
}

bool is_isomorphism(const BimoduleMap& f) {
  if (f.matrix.rows() != f.matrix.cols()) return false;
  if (f.source && f.target && (f.source->rank() != f.matrix.cols() || f.target->rank() != f.matrix.rows())) {
    throw std::invalid_argument("map matrix does not match its source and target");
  }
  return determinant(f.matrix).is_unit();
}

// ---------------------------------------------------------------- HomSpace

HomSpace::HomSpace(const Bimodule& m, const Bimodule& n, int delta) : rows_(n.rank()), cols_(m.rank()) {
  const int nv = m.nvars() ? m.nvars() : n.nvars();
  const int entries = rows_ * cols_;
  // Unknowns: coefficients of each monomial of the forced degree in each entry.
  std::vector<int> total(static_cast<std::size_t>(entries), -1);
  std::vector<int> offset(static_cast<std::size_t>(entries), 0);
  int unknowns = 0;
  for (int b = 0; b < rows_; ++b) {
    for (int a = 0; a < cols_; ++a) {
      int deg = m.degrees()[static_cast<std::size_t>(a)] + delta - n.degrees()[static_cast<std::size_t>(b)];
      int e = b * cols_ + a;
      offset[static_cast<std::size_t>(e)] = unknowns;
      if (deg < 0 || deg % 2 != 0) continue;
      total[static_cast<std::size_t>(e)] = deg / 2;
      unknowns += static_cast<int>(count_monomials(nv, deg / 2));
    }
  }
  if (unknowns == 0) return;
  std::map<int, std::unordered_map<std::uint64_t, int>> mono_index;
  auto index_of = [&](int t) -> const std::unordered_map<std::uint64_t, int>& {
    auto it = mono_index.find(t);
    if (it != mono_index.end()) return it->second;
    std::unordered_map<std::uint64_t, int> idx;
    const auto& monos = monomials_of_total(nv, t);
    for (std::size_t i = 0; i < monos.size(); ++i) idx.emplace(monos[i].key(), static_cast<int>(i));
    return mono_index.emplace(t, std::move(idx)).first->second;
  };
  for (int e = 0; e < entries; ++e) {
    if (total[static_cast<std::size_t>(e)] >= 0) index_of(total[static_cast<std::size_t>(e)]);
  }

  SparseMatrix sys{unknowns, {}};
  std::map<std::uint64_t, std::map<int, Rational>> eq;
  auto add_product = [&](int entry, const Poly& coeff_poly, const Rational& sign) {
    int t = total[static_cast<std::size_t>(entry)];
    if (t < 0) return;
    const auto& monos = monomials_of_total(nv, t);
    for (std::size_t u = 0; u < monos.size(); ++u) {
      int var = offset[static_cast<std::size_t>(entry)] + static_cast<int>(u);
      for (const auto& term : coeff_poly.terms()) {
        Rational& slot = eq[(monos[u] * term.mono).key()][var];
        slot += sign * term.coeff;
      }
    }
  };
  for (int k = 0; k < nv; ++k) {
    const PolyMatrix& rm = m.rho(k);
    const PolyMatrix& rn = n.rho(k);
    for (int b = 0; b < rows_; ++b) {
      for (int a = 0; a < cols_; ++a) {
        poll_deadline();
        eq.clear();
        // (Phi rho_M)(b, a) - (rho_N Phi)(b, a) = 0
        for (int c = 0; c < cols_; ++c) {
          if (!rm(c, a).is_zero()) add_product(b * cols_ + c, rm(c, a), Rational(1));
        }
        for (int c = 0; c < rows_; ++c) {
          if (!rn(b, c).is_zero()) add_product(c * cols_ + a, rn(b, c), Rational(-1));
        }
        for (auto& [mono, row] : eq) {
          SparseVec r;
          for (auto& [var, val] : row) {
            if (val != 0) r.emplace_back(var, std::move(val));
          }
          if (!r.empty()) sys.rows.push_back(std::move(r));
        }
      }
    }
  }
  Nullspace ns = nullspace(sys);
  // Map unknown index back to (entry, monomial).
  std::vector<int> entry_of(static_cast<std::size_t>(unknowns), -1);
  for (int e = 0; e < entries; ++e) {
    int t = total[static_cast<std::size_t>(e)];
    if (t < 0) continue;
    int cnt = static_cast<int>(count_monomials(nv, t));
    for (int u = 0; u < cnt; ++u) entry_of[static_cast<std::size_t>(offset[static_cast<std::size_t>(e)] + u)] = e;
  }
  auto mono_of = [&](int var) {
    int e = entry_of[static_cast<std::size_t>(var)];
    return monomials_of_total(nv, total[static_cast<std::size_t>(e)])[static_cast<std::size_t>(var - offset[static_cast<std::size_t>(e)])];
  };
  for (std::size_t j = 0; j < ns.basis.size(); ++j) {
    int fc = ns.free_cols[j];
    pivot_entry_.push_back(entry_of[static_cast<std::size_t>(fc)]);
    pivot_mono_.push_back(mono_of(fc));
    PolyMatrix phi(rows_, cols_, nv);
    for (const auto& [var, val] : ns.basis[j]) {
      int e = entry_of[static_cast<std::size_t>(var)];
      phi(e / cols_, e % cols_).add_scaled(Poly::monomial(nv, mono_of(var), val), Monomial(), Rational(1));
    }
    basis_.push_back(std::move(phi));
  }
}

SparseVec HomSpace::coordinates(const PolyMatrix& phi, int row0, int col0) const {
  SparseVec out;
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    int e = pivot_entry_[j];
    Rational c = phi(row0 + e / cols_, col0 + e % cols_).coefficient(pivot_mono_[j]);
    if (c != 0) out.emplace_back(static_cast<int>(j), std::move(c));
  }
  return out;
}

namespace {

std::mutex g_hom_mutex;
std::unordered_map<std::string, HomSpacePtr> g_hom_cache;

}  // namespace

HomSpacePtr hom_space_solve(const Bimodule& m, const Bimodule& n, int delta) {
  const int normalized = delta + m.offset() - n.offset();
  std::string key = m.shape_digest() + n.shape_digest() + std::to_string(normalized);
  {
    std::lock_guard<std::mutex> lock(g_hom_mutex);
    auto it = g_hom_cache.find(key);
    if (it != g_hom_cache.end()) return it->second;
  }
  auto space = std::make_shared<const HomSpace>(m, n, delta);
  std::lock_guard<std::mutex> lock(g_hom_mutex);
  return g_hom_cache.emplace(key, std::move(space)).first->second;
}

void clear_hom_cache() {
  std::lock_guard<std::mutex> lock(g_hom_mutex);
  g_hom_cache.clear();
}

std::size_t hom_cache_size() {
  std::lock_guard<std::mutex> lock(g_hom_mutex);
  return g_hom_cache.size();
}

}  // namespace soergel
