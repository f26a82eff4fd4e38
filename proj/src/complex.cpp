#include "soergel/complex.hpp"

#include <json.hpp>

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "soergel/cancel.hpp"

namespace soergel {

using json = nlohmann::json;

namespace {

const std::vector<BimodulePtr> kNoSummands;

BimodulePtr zero_bimodule(int nvars) {
  std::vector<PolyMatrix> rho(static_cast<std::size_t>(nvars), PolyMatrix(0, 0, nvars));
  return std::make_shared<const Bimodule>(nvars, std::vector<int>{}, std::move(rho), "0", false);
}

json matrix_json(const PolyMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

PolyMatrix matrix_from_json(const json& j, int rows, int cols, int nvars) {
  PolyMatrix m(rows, cols, nvars);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      m(r, c) = Poly::parse(j.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<std::string>(), nvars);
    }
  }
  return m;
}

std::string tensor_label(const std::string& a, const std::string& b) {
  if (a == "R") return b;
  if (b == "R") return a;
  return a + b;
}

Rational sign_of(int n) { return (n % 2 == 0) ? Rational(1) : Rational(-1); }

}  // namespace

// ---------------------------------------------------------------- Complex

Complex::Complex(int nvars, int lo, std::vector<std::vector<BimodulePtr>> terms, std::vector<PolyMatrix> diffs,
                 bool validate_now)
    : nvars_(nvars), zero_total_(zero_bimodule(nvars)) {
  const int n = static_cast<int>(terms.size());
  if (n > 0 && static_cast<int>(diffs.size()) != n - 1) throw std::invalid_argument("complex needs one differential per gap");
  std::vector<int> ranks;
  for (const auto& t : terms) {
    int r = 0;
    for (const auto& s : t) r += s->rank();
    ranks.push_back(r);
  }
  auto rank_of = [&](int k) { return ranks[static_cast<std::size_t>(k)]; };
  int first = 0, last = n - 1;
  while (first <= last && rank_of(first) == 0) ++first;
  while (last >= first && rank_of(last) == 0) --last;
  if (first > last) return;
  lo_ = lo + first;
  for (int k = first; k <= last; ++k) {
    std::vector<BimodulePtr> kept;
    for (auto& s : terms[static_cast<std::size_t>(k)]) kept.push_back(std::move(s));
    terms_.push_back(std::move(kept));
  }
  for (int k = first; k < last; ++k) {
    const PolyMatrix& d = diffs[static_cast<std::size_t>(k)];
    if (d.rows() != rank_of(k + 1) || d.cols() != rank_of(k)) throw std::invalid_argument("differential has the wrong shape");
    diffs_.push_back(d);
  }
  for (const auto& t : terms_) {
    std::vector<int> offs;
    int off = 0;
    for (const auto& s : t) {
      offs.push_back(off);
      off += s->rank();
    }
    offsets_.push_back(std::move(offs));
    if (t.size() == 1) {
      totals_.push_back(t.front());
    } else if (t.empty()) {
      totals_.push_back(zero_bimodule(nvars_));
    } else {
      totals_.push_back(std::make_shared<const Bimodule>(direct_sum(t)));
    }
  }
  if (validate_now) validate();
}

Complex Complex::single(BimodulePtr m, int index) {
  const int nv = m->nvars();
  return Complex(nv, index, {{std::move(m)}}, {}, false);
}

Complex Complex::zero(int nvars) { return Complex(nvars, 0, {}, {}, false); }

const std::vector<BimodulePtr>& Complex::summands(int i) const {
  if (i < lo_ || i > hi()) return kNoSummands;
  return terms_[static_cast<std::size_t>(i - lo_)];
}

int Complex::rank(int i) const {
  if (i < lo_ || i > hi()) return 0;
  return totals_[static_cast<std::size_t>(i - lo_)]->rank();
}

std::vector<int> Complex::degrees(int i) const {
  if (i < lo_ || i > hi()) return {};
  return totals_[static_cast<std::size_t>(i - lo_)]->degrees();
}

int Complex::offset(int i, int p) const { return offsets_[static_cast<std::size_t>(i - lo_)][static_cast<std::size_t>(p)]; }

const Bimodule& Complex::total(int i) const {
  if (i < lo_ || i > hi()) return *zero_total_;
  return *totals_[static_cast<std::size_t>(i - lo_)];
}

BimodulePtr Complex::total_ptr(int i) const {
  if (i < lo_ || i > hi()) return zero_total_ ? zero_total_ : zero_bimodule(nvars_);
  return totals_[static_cast<std::size_t>(i - lo_)];
}

const PolyMatrix* Complex::differential_ptr(int i) const {
  if (i < lo_ || i >= hi()) return nullptr;
  return &diffs_[static_cast<std::size_t>(i - lo_)];
}

PolyMatrix Complex::differential(int i) const {
  if (const PolyMatrix* d = differential_ptr(i)) return *d;
  return PolyMatrix(rank(i + 1), rank(i), nvars_);
}

void Complex::validate() const {
  for (int i = lo_; i < hi(); ++i) {
    const PolyMatrix& d = *differential_ptr(i);
    if (!is_bimodule_map(total(i), total(i + 1), d, 0)) {
      throw std::logic_error("differential " + std::to_string(i) + " is not a degree-0 bimodule map");
    }
    if (i + 1 < hi() && !(*differential_ptr(i + 1) * d).is_zero()) {
      throw std::logic_error("d^2 != 0 at index " + std::to_string(i));
    }
  }
}

std::string Complex::summary() const {
  if (is_zero()) return "0";
  std::string out = "[" + std::to_string(lo_) + "] ";
  for (int i = lo_; i <= hi(); ++i) {
    if (i > lo_) out += " -> ";
    const auto& s = summands(i);
    if (s.empty()) out += "0";
    for (std::size_t p = 0; p < s.size(); ++p) {
      if (p) out += " + ";
      out += s[p]->label();
    }
  }
  return out;
}

std::string Complex::serialize() const {
  json j;
  j["nvars"] = nvars_;
  j["lo"] = lo_;
  json terms = json::array();
  for (int i = lo_; i <= hi(); ++i) {
    json t = json::array();
    for (const auto& s : summands(i)) t.push_back(json::parse(s->serialize()));
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  json diffs = json::array();
  for (const auto& d : diffs_) diffs.push_back(matrix_json(d));
  j["differentials"] = std::move(diffs);
  return j.dump();
}

Complex Complex::deserialize(std::string_view text) {
  json j = json::parse(text);
  const int nv = j.at("nvars").get<int>();
  std::vector<std::vector<BimodulePtr>> terms;
  std::vector<int> ranks;
  for (const auto& t : j.at("terms")) {
    std::vector<BimodulePtr> s;
    int r = 0;
    for (const auto& b : t) {
      s.push_back(std::make_shared<const Bimodule>(Bimodule::deserialize(b.dump())));
      r += s.back()->rank();
    }
    ranks.push_back(r);
    terms.push_back(std::move(s));
  }
  std::vector<PolyMatrix> diffs;
  std::size_t k = 0;
  for (const auto& d : j.at("differentials")) {
    diffs.push_back(matrix_from_json(d, ranks[k + 1], ranks[k], nv));
    ++k;
  }
  return Complex(nv, j.at("lo").get<int>(), std::move(terms), std::move(diffs));
}

// ---------------------------------------------------------------- chain maps

PolyMatrix ChainMap::at(const Complex& a, const Complex& b, int j) const {
  auto it = comps.find(j);
  if (it != comps.end()) return it->second;
  return PolyMatrix(b.rank(j + shift), a.rank(j), a.nvars() ? a.nvars() : b.nvars());
}

bool is_closed(const Complex& a, const Complex& b, const ChainMap& f) {
  for (const auto& [j, m] : f.comps) {
    if (m.rows() != b.rank(j + f.shift) || m.cols() != a.rank(j)) return false;
    if (!is_bimodule_map(a.total(j), b.total(j + f.shift), m, f.degree)) return false;
  }
  const Rational sg = sign_of(f.shift);
  for (int j = a.lo() - 1; j <= a.hi(); ++j) {
    PolyMatrix lhs = b.differential(j + f.shift) * f.at(a, b, j);
    PolyMatrix rhs = f.at(a, b, j + 1) * a.differential(j);
    if (!(lhs - rhs * sg).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------- constructions

Complex tensor_complex(const Complex& a, const Complex& b) {
  const int nv = a.nvars() ? a.nvars() : b.nvars();
  if (a.is_zero() || b.is_zero()) return Complex::zero(nv);
  const int lo = a.lo() + b.lo(), hi = a.hi() + b.hi();
  struct Key {
    int i, j, p, q;
    bool operator<(const Key& o) const { return std::tie(i, j, p, q) < std::tie(o.i, o.j, o.p, o.q); }
  };
  std::vector<std::vector<BimodulePtr>> terms;
  std::map<Key, int> start;
  for (int k = lo; k <= hi; ++k) {
    std::vector<BimodulePtr> t;
    int off = 0;
    for (int i = a.lo(); i <= a.hi(); ++i) {
      const int j = k - i;
      if (j < b.lo() || j > b.hi()) continue;
      const auto& as = a.summands(i);
      const auto& bs = b.summands(j);
      for (int p = 0; p < static_cast<int>(as.size()); ++p) {
        for (int q = 0; q < static_cast<int>(bs.size()); ++q) {
          const Bimodule& m = *as[static_cast<std::size_t>(p)];
          const Bimodule& n = *bs[static_cast<std::size_t>(q)];
          start[Key{i, j, p, q}] = off;
          off += m.rank() * n.rank();
          t.push_back(std::make_shared<const Bimodule>(tensor(m, n).relabeled(tensor_label(m.label(), n.label()))));
        }
      }
    }
    terms.push_back(std::move(t));
  }
  auto rank_at = [&](int k) {
    int r = 0;
    for (const auto& s : terms[static_cast<std::size_t>(k - lo)]) r += s->rank();
    return r;
  };
  std::vector<PolyMatrix> diffs;
  for (int k = lo; k < hi; ++k) {
    PolyMatrix d(rank_at(k + 1), rank_at(k), nv);
    for (int i = a.lo(); i <= a.hi(); ++i) {
      const int j = k - i;
      if (j < b.lo() || j > b.hi()) continue;
      const auto& as = a.summands(i);
      const auto& bs = b.summands(j);
      const PolyMatrix* da = a.differential_ptr(i);
      const PolyMatrix* db = b.differential_ptr(j);
      const Rational sg = sign_of(i);
      for (int p = 0; p < static_cast<int>(as.size()); ++p) {
        for (int q = 0; q < static_cast<int>(bs.size()); ++q) {
          poll_deadline();
          const Bimodule& m = *as[static_cast<std::size_t>(p)];
          const Bimodule& n = *bs[static_cast<std::size_t>(q)];
          const int c0 = start.at(Key{i, j, p, q});
          if (da) {
            const auto& as1 = a.summands(i + 1);
            for (int p1 = 0; p1 < static_cast<int>(as1.size()); ++p1) {
              PolyMatrix blk = da->block(a.offset(i + 1, p1), a.offset(i, p), as1[static_cast<std::size_t>(p1)]->rank(), m.rank());
              if (blk.is_zero()) continue;
              d.set_block(start.at(Key{i + 1, j, p1, q}), c0, tensor_map_left(blk, n.rank()));
            }
          }
          if (db) {
            const auto& bs1 = b.summands(j + 1);
            for (int q1 = 0; q1 < static_cast<int>(bs1.size()); ++q1) {
              PolyMatrix blk = db->block(b.offset(j + 1, q1), b.offset(j, q), bs1[static_cast<std::size_t>(q1)]->rank(), n.rank());
              if (blk.is_zero()) continue;
              d.set_block(start.at(Key{i, j + 1, p, q1}), c0, tensor_map_right(m, blk) * sg);
            }
          }
        }
      }
    }
    diffs.push_back(std::move(d));
  }
  return Complex(nv, lo, std::move(terms), std::move(diffs), false);
}

Complex cone(const Complex& a, const Complex& b, const ChainMap& f) {
  if (f.shift != 0 || f.degree != 0) throw std::invalid_argument("cone needs a degree-0 map without shift");
  if (!is_closed(a, b, f)) throw std::invalid_argument("cone of a map that is not closed");
  const int nv = a.nvars() ? a.nvars() : b.nvars();
  if (a.is_zero() && b.is_zero()) return Complex::zero(nv);
  const int lo = std::min(a.is_zero() ? b.lo() : a.lo() - 1, b.is_zero() ? a.lo() - 1 : b.lo());
  const int hi = std::max(a.is_zero() ? b.hi() : a.hi() - 1, b.is_zero() ? a.hi() - 1 : b.hi());
  std::vector<std::vector<BimodulePtr>> terms;
  for (int i = lo; i <= hi; ++i) {
    std::vector<BimodulePtr> t = a.summands(i + 1);
    const auto& bs = b.summands(i);
    t.insert(t.end(), bs.begin(), bs.end());
    terms.push_back(std::move(t));
  }
  std::vector<PolyMatrix> diffs;
  for (int i = lo; i < hi; ++i) {
    const int ra0 = a.rank(i + 1), rb0 = b.rank(i), ra1 = a.rank(i + 2), rb1 = b.rank(i + 1);
    PolyMatrix d(ra1 + rb1, ra0 + rb0, nv);
    d.set_block(0, 0, -a.differential(i + 1));
    d.set_block(ra1, 0, f.at(a, b, i + 1));
    d.set_block(ra1, ra0, b.differential(i));
    diffs.push_back(std::move(d));
  }
  return Complex(nv, lo, std::move(terms), std::move(diffs), false);
}

Complex shift(const Complex& a, int n) {
  if (a.is_zero()) return a;
  std::vector<std::vector<BimodulePtr>> terms;
  std::vector<PolyMatrix> diffs;
  for (int i = a.lo(); i <= a.hi(); ++i) {
    terms.push_back(a.summands(i));
    if (i < a.hi()) diffs.push_back(a.differential(i) * sign_of(n));
  }
  return Complex(a.nvars(), a.lo() - n, std::move(terms), std::move(diffs), false);
}

Complex grading_shift(const Complex& a, int k) {
  if (a.is_zero()) return a;
  std::vector<std::vector<BimodulePtr>> terms;
  std::vector<PolyMatrix> diffs;
  for (int i = a.lo(); i <= a.hi(); ++i) {
    std::vector<BimodulePtr> t;
    for (const auto& s : a.summands(i)) t.push_back(std::make_shared<const Bimodule>(s->shifted(k)));
    terms.push_back(std::move(t));
    if (i < a.hi()) diffs.push_back(a.differential(i));
  }
  return Complex(a.nvars(), a.lo(), std::move(terms), std::move(diffs), false);
}

namespace {

Complex slice(const Complex& a, int lo, int hi) {
  lo = std::max(lo, a.lo());
  hi = std::min(hi, a.hi());
  if (lo > hi) return Complex::zero(a.nvars());
  std::vector<std::vector<BimodulePtr>> terms;
  std::vector<PolyMatrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    terms.push_back(a.summands(i));
    if (i < hi) diffs.push_back(a.differential(i));
  }
  return Complex(a.nvars(), lo, std::move(terms), std::move(diffs), false);
}

}  // namespace

Complex truncate_geq(const Complex& a, int i) { return slice(a, i, a.hi()); }
Complex truncate_lt(const Complex& a, int i) { return slice(a, a.lo(), i - 1); }

// ---------------------------------------------------------------- hom complexes

namespace {

// Matrix of f -> L f (or f -> f R) from hom(M, N) to hom(M', N'), one sparse
// image row per basis vector. Cached by the identities of the (shared) hom
// spaces and the composing block.
using Operator = std::vector<SparseVec>;
struct CachedOperator {
  HomSpacePtr src, dst;  // held so the addresses in the key stay unique
  std::shared_ptr<const Operator> op;
};
std::mutex g_op_mutex;
std::unordered_map<std::string, CachedOperator> g_op_cache;

std::shared_ptr<const Operator> compose_operator(const HomSpacePtr& src, const HomSpacePtr& dst, const PolyMatrix& blk,
                                                 bool on_left) {
  std::string key = std::to_string(reinterpret_cast<std::uintptr_t>(src.get())) + ":" +
                    std::to_string(reinterpret_cast<std::uintptr_t>(dst.get())) + (on_left ? "L" : "R") +
                    matrix_json(blk).dump();
  {
    std::lock_guard<std::mutex> lock(g_op_mutex);
    auto it = g_op_cache.find(key);
    if (it != g_op_cache.end()) return it->second.op;
  }
  auto op = std::make_shared<Operator>();
  for (const auto& phi : src->basis()) {
    poll_deadline();
    PolyMatrix prod = on_left ? blk * phi : phi * blk;
    op->push_back(dst->coordinates(prod));
  }
  std::lock_guard<std::mutex> lock(g_op_mutex);
  return g_op_cache.emplace(key, CachedOperator{src, dst, std::move(op)}).first->second.op;
}

}  // namespace

HomComplex::HomComplex(const Complex& a, const Complex& b, int d) : a_(&a), b_(&b), d_(d) {
  if (a.is_zero() || b.is_zero()) return;
  lo_ = b.lo() - a.hi();
  hi_ = b.hi() - a.lo();
  for (int n = lo_; n <= hi_; ++n) {
    std::vector<Block> blocks;
    int dim = 0;
    for (int j = a.lo(); j <= a.hi(); ++j) {
      if (j + n < b.lo() || j + n > b.hi()) continue;
      const auto& as = a.summands(j);
      const auto& bs = b.summands(j + n);
      for (int p = 0; p < static_cast<int>(as.size()); ++p) {
        for (int q = 0; q < static_cast<int>(bs.size()); ++q) {
          HomSpacePtr s = hom_space_solve(*as[static_cast<std::size_t>(p)], *bs[static_cast<std::size_t>(q)], d);
          if (s->dim() == 0) continue;
          blocks.push_back(Block{j, p, q, b.offset(j + n, q), a.offset(j, p), s, dim});
          dim += s->dim();
        }
      }
    }
    dims_[n] = dim;
    blocks_[n] = std::move(blocks);
  }
  // Differentials D^n : Hom^n -> Hom^{n+1}.
  for (int n = lo_; n <= hi_; ++n) {
    std::vector<SparseVec> images(static_cast<std::size_t>(dims_[n]));
    const auto& src = blocks_[n];
    auto dst_it = blocks_.find(n + 1);
    if (dst_it == blocks_.end() || dims_[n + 1] == 0) {
      diffs_[n] = std::move(images);
      ranks_[n] = 0;
      continue;
    }
    std::map<std::tuple<int, int, int>, const Block*> dst_index;
    for (const auto& blk : dst_it->second) dst_index[{blk.j, blk.p, blk.q}] = &blk;
    const Rational sg = -sign_of(n);
    std::vector<std::map<int, Rational>> acc(static_cast<std::size_t>(dims_[n]));
    for (const auto& s : src) {
      const Bimodule& m = *a.summands(s.j)[static_cast<std::size_t>(s.p)];
      const Bimodule& nb = *b.summands(s.j + n)[static_cast<std::size_t>(s.q)];
      // d_B f : blocks (j, p, q1) with q1 in B^{j+n+1}
      if (const PolyMatrix* db = b.differential_ptr(s.j + n)) {
        const auto& bs1 = b.summands(s.j + n + 1);
        for (int q1 = 0; q1 < static_cast<int>(bs1.size()); ++q1) {
          auto it = dst_index.find({s.j, s.p, q1});
          if (it == dst_index.end()) continue;
          PolyMatrix blk = db->block(b.offset(s.j + n + 1, q1), s.row0, bs1[static_cast<std::size_t>(q1)]->rank(), nb.rank());
          if (blk.is_zero()) continue;
          auto op = compose_operator(s.space, it->second->space, blk, true);
          for (int u = 0; u < s.space->dim(); ++u) {
            auto& row = acc[static_cast<std::size_t>(s.start + u)];
            for (const auto& [idx, val] : (*op)[static_cast<std::size_t>(u)]) row[it->second->start + idx] += val;
          }
        }
      }
      // -(-1)^n f d_A : blocks (j-1, p1, q) with p1 in A^{j-1}
      if (const PolyMatrix* da = a.differential_ptr(s.j - 1)) {
        const auto& as0 = a.summands(s.j - 1);
        for (int p1 = 0; p1 < static_cast<int>(as0.size()); ++p1) {
          auto it = dst_index.find({s.j - 1, p1, s.q});
          if (it == dst_index.end()) continue;
          PolyMatrix blk = da->block(s.col0, a.offset(s.j - 1, p1), m.rank(), as0[static_cast<std::size_t>(p1)]->rank());
          if (blk.is_zero()) continue;
          auto op = compose_operator(s.space, it->second->space, blk, false);
          for (int u = 0; u < s.space->dim(); ++u) {
            auto& row = acc[static_cast<std::size_t>(s.start + u)];
            for (const auto& [idx, val] : (*op)[static_cast<std::size_t>(u)]) row[it->second->start + idx] += sg * val;
          }
        }
      }
    }
    for (std::size_t u = 0; u < acc.size(); ++u) {
      for (auto& [idx, val] : acc[u]) {
        if (val != 0) images[u].emplace_back(idx, std::move(val));
      }
    }
    ranks_[n] = rank(SparseMatrix{dims_[n + 1], images});
    diffs_[n] = std::move(images);
  }
}

int HomComplex::dim(int n) const {
  auto it = dims_.find(n);
  return it == dims_.end() ? 0 : it->second;
}

int HomComplex::differential_rank(int n) const {
  auto it = ranks_.find(n);
  return it == ranks_.end() ? 0 : it->second;
}

int HomComplex::cohomology_dim(int n) const { return dim(n) - differential_rank(n) - differential_rank(n - 1); }

const std::vector<SparseVec>& HomComplex::differential(int n) const {
  static const std::vector<SparseVec> kEmpty;
  auto it = diffs_.find(n);
  return it == diffs_.end() ? kEmpty : it->second;
}

ChainMap HomComplex::to_chain_map(int n, const std::vector<Rational>& coords) const {
  ChainMap f;
  f.shift = n;
  f.degree = d_;
  auto it = blocks_.find(n);
  if (it == blocks_.end()) return f;
  const int nv = a_->nvars();
  for (const auto& s : it->second) {
    auto [mit, inserted] = f.comps.try_emplace(s.j, PolyMatrix(b_->rank(s.j + n), a_->rank(s.j), nv));
    PolyMatrix& m = mit->second;
    for (int u = 0; u < s.space->dim(); ++u) {
      const Rational& c = coords[static_cast<std::size_t>(s.start + u)];
      if (c == 0) continue;
      const PolyMatrix& phi = s.space->basis()[static_cast<std::size_t>(u)];
      for (int r = 0; r < phi.rows(); ++r) {
        for (int col = 0; col < phi.cols(); ++col) {
          if (!phi(r, col).is_zero()) m(s.row0 + r, s.col0 + col) += phi(r, col) * c;
        }
      }
    }
  }
  return f;
}

std::vector<ChainMap> HomComplex::cohomology_representatives(int n) const {
  const int dn = dim(n);
  if (dn == 0) return {};
  // cocycles: kernel of the transpose of the image rows
  SparseMatrix dt{dn, {}};
  {
    std::map<int, std::map<int, Rational>> cols;
    const auto& imgs = differential(n);
    for (int u = 0; u < static_cast<int>(imgs.size()); ++u) {
      for (const auto& [idx, val] : imgs[static_cast<std::size_t>(u)]) cols[idx][u] = val;
    }
    for (auto& [idx, row] : cols) {
      SparseVec v(row.begin(), row.end());
      dt.rows.push_back(std::move(v));
    }
  }
  Nullspace cocycles = nullspace(dt);
  // coboundaries span
  std::vector<SparseVec> span = differential(n - 1);
  int current = span.empty() ? 0 : rank(SparseMatrix{dn, span});
  std::vector<ChainMap> out;
  for (const auto& z : cocycles.basis) {
    span.push_back(z);
    int r = rank(SparseMatrix{dn, span});
    if (r == current) {
      span.pop_back();
      continue;
    }
    current = r;
    std::vector<Rational> coords(static_cast<std::size_t>(dn));
    for (const auto& [idx, val] : z) coords[static_cast<std::size_t>(idx)] = val;
    out.push_back(to_chain_map(n, coords));
  }
  return out;
}

int homK_dim(const Complex& a, const Complex& b, int i, int d) { return HomComplex(a, b, d).cohomology_dim(i); }

std::vector<int> homK_dims(const Complex& a, const Complex& b, int ilo, int ihi, int d) {
  HomComplex h(a, b, d);
  std::vector<int> out;
  for (int i = ilo; i <= ihi; ++i) out.push_back(h.cohomology_dim(i));
  return out;
}

// ---------------------------------------------------------------- left complexes

LeftComplex LeftComplex::from(const Complex& c) {
  LeftComplex out;
  out.nvars = c.nvars();
  out.lo = c.lo();
  for (int i = c.lo(); i <= c.hi(); ++i) {
    out.degrees.push_back(c.degrees(i));
    if (i < c.hi()) out.diffs.push_back(c.differential(i));
  }
  return out;
}

bool LeftComplex::is_zero() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const auto& d) { return d.empty(); });
}

int LeftComplex::rank(int i) const {
  if (i < lo || i > hi()) return 0;
  return static_cast<int>(degrees[static_cast<std::size_t>(i - lo)].size());
}

std::vector<int> LeftComplex::degrees_at(int i) const {
  if (i < lo || i > hi()) return {};
  return degrees[static_cast<std::size_t>(i - lo)];
}

PolyMatrix LeftComplex::differential(int i) const {
  if (i < lo || i >= hi()) return PolyMatrix(rank(i + 1), rank(i), nvars);
  return diffs[static_cast<std::size_t>(i - lo)];
}

void LeftComplex::trim() {
  while (!degrees.empty() && degrees.front().empty()) {
    degrees.erase(degrees.begin());
    if (!diffs.empty()) diffs.erase(diffs.begin());
    ++lo;
  }
  while (!degrees.empty() && degrees.back().empty()) {
    degrees.pop_back();
    if (!diffs.empty()) diffs.pop_back();
  }
  if (degrees.empty()) lo = 0;
}

void LeftComplex::validate() const {
  for (int i = lo; i < hi(); ++i) {
    PolyMatrix d = differential(i);
    if (!d.is_homogeneous(degrees_at(i + 1), degrees_at(i), 0)) {
      throw std::logic_error("left differential " + std::to_string(i) + " is not homogeneous of degree 0");
    }
    if (!(differential(i + 1) * d).is_zero()) throw std::logic_error("d^2 != 0 at index " + std::to_string(i));
  }
}

std::string LeftComplex::summary() const {
  if (is_zero()) return "0";
  std::string out = "[" + std::to_string(lo) + "] ";
  for (int i = lo; i <= hi(); ++i) {
    if (i > lo) out += " -> ";
    auto ds = degrees_at(i);
    if (ds.empty()) out += "0";
    for (std::size_t p = 0; p < ds.size(); ++p) {
      if (p) out += " + ";
      out += ds[p] == 0 ? "R" : "R(" + std::to_string(-ds[p]) + ")";
    }
  }
  return out;
}

std::string LeftComplex::serialize() const {
  json j;
  j["nvars"] = nvars;
  j["lo"] = lo;
  j["degrees"] = degrees;
  json ds = json::array();
  for (const auto& d : diffs) ds.push_back(matrix_json(d));
  j["differentials"] = std::move(ds);
  return j.dump();
}

LeftComplex LeftComplex::deserialize(std::string_view text) {
  json j = json::parse(text);
  LeftComplex out;
  out.nvars = j.at("nvars").get<int>();
  out.lo = j.at("lo").get<int>();
  out.degrees = j.at("degrees").get<std::vector<std::vector<int>>>();
  std::size_t k = 0;
  for (const auto& d : j.at("differentials")) {
    out.diffs.push_back(matrix_from_json(d, static_cast<int>(out.degrees[k + 1].size()),
                                         static_cast<int>(out.degrees[k].size()), out.nvars));
    ++k;
  }
  return out;
}

// ---------------------------------------------------------------- minimization

namespace {

using Dense = std::vector<std::vector<Poly>>;

Dense dense_of(const PolyMatrix& m) {
  Dense out(static_cast<std::size_t>(m.rows()));
  for (int r = 0; r < m.rows(); ++r) {
    out[static_cast<std::size_t>(r)].reserve(static_cast<std::size_t>(m.cols()));
    for (int c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(r)].push_back(m(r, c));
  }
  return out;
}

Dense identity_dense(int n, int nv) {
  Dense out(static_cast<std::size_t>(n), std::vector<Poly>(static_cast<std::size_t>(n), Poly(nv)));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Poly(nv, Rational(1));
  return out;
}

// row -= g * src
void row_sub(std::vector<Poly>& row, const std::vector<Poly>& src, const Poly& g, const std::vector<char>* alive) {
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (alive && !(*alive)[c]) continue;
    if (src[c].is_zero()) continue;
    row[c] -= g * src[c];
  }
}

}  // namespace

Minimized minimize_left(const LeftComplex& in, bool track) {
  const int nv = in.nvars;
  const int nterms = static_cast<int>(in.degrees.size());
  std::vector<Dense> d;
  for (const auto& m : in.diffs) d.push_back(dense_of(m));
  std::vector<std::vector<char>> alive;
  for (const auto& deg : in.degrees) alive.emplace_back(deg.size(), 1);
  // pi[k][row] over original basis; iota[k][col] over original basis
  std::vector<Dense> pi, iota;
  if (track) {
    for (const auto& deg : in.degrees) {
      pi.push_back(identity_dense(static_cast<int>(deg.size()), nv));
      iota.push_back(identity_dense(static_cast<int>(deg.size()), nv));
    }
  }
  for (int k = 0; k + 1 < nterms; ++k) {
    Dense& dk = d[static_cast<std::size_t>(k)];
    auto& src_alive = alive[static_cast<std::size_t>(k)];
    auto& dst_alive = alive[static_cast<std::size_t>(k + 1)];
    const int rows = static_cast<int>(dst_alive.size()), cols = static_cast<int>(src_alive.size());
    while (true) {
      poll_deadline();
      // Pick the unit entry with the smallest row times column fill.
      int br = -1, bc = -1;
      long best = -1;
      std::vector<int> row_nz(static_cast<std::size_t>(rows), 0), col_nz(static_cast<std::size_t>(cols), 0);
      for (int r = 0; r < rows; ++r) {
        if (!dst_alive[static_cast<std::size_t>(r)]) continue;
        for (int c = 0; c < cols; ++c) {
          if (!src_alive[static_cast<std::size_t>(c)]) continue;
          if (!dk[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].is_zero()) {
            ++row_nz[static_cast<std::size_t>(r)];
            ++col_nz[static_cast<std::size_t>(c)];
          }
        }
      }
      for (int r = 0; r < rows; ++r) {
        if (!dst_alive[static_cast<std::size_t>(r)]) continue;
        for (int c = 0; c < cols; ++c) {
          if (!src_alive[static_cast<std::size_t>(c)]) continue;
          const Poly& e = dk[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
          if (!e.is_unit()) continue;
          long cost = static_cast<long>(row_nz[static_cast<std::size_t>(r)] - 1) * (col_nz[static_cast<std::size_t>(c)] - 1);
          if (best < 0 || cost < best) {
            best = cost;
            br = r;
            bc = c;
          }
        }
      }
      if (br < 0) break;
      const Rational inv = 1 / dk[static_cast<std::size_t>(br)][static_cast<std::size_t>(bc)].constant_term();
      const std::vector<Poly> pivot_row = dk[static_cast<std::size_t>(br)];
      for (int r = 0; r < rows; ++r) {
        if (r == br || !dst_alive[static_cast<std::size_t>(r)]) continue;
        const Poly& gam = dk[static_cast<std::size_t>(r)][static_cast<std::size_t>(bc)];
        if (gam.is_zero()) continue;
        Poly g = gam * inv;
        row_sub(dk[static_cast<std::size_t>(r)], pivot_row, g, &src_alive);
        if (track) {
          Dense& p1 = pi[static_cast<std::size_t>(k + 1)];
          row_sub(p1[static_cast<std::size_t>(r)], p1[static_cast<std::size_t>(br)], g, nullptr);
        }
      }
      if (track) {
        Dense& io = iota[static_cast<std::size_t>(k)];
        for (int c = 0; c < cols; ++c) {
          if (c == bc || !src_alive[static_cast<std::size_t>(c)]) continue;
          const Poly& beta = pivot_row[static_cast<std::size_t>(c)];
          if (beta.is_zero()) continue;
          row_sub(io[static_cast<std::size_t>(c)], io[static_cast<std::size_t>(bc)], beta * inv, nullptr);
        }
      }
      src_alive[static_cast<std::size_t>(bc)] = 0;
      dst_alive[static_cast<std::size_t>(br)] = 0;
    }
  }

  Minimized out;
  out.tracked = track;
  LeftComplex& mc = out.complex;
  mc.nvars = nv;
  mc.lo = in.lo;
  std::vector<std::vector<int>> keep(static_cast<std::size_t>(nterms));
  for (int k = 0; k < nterms; ++k) {
    std::vector<int> deg;
    for (std::size_t i = 0; i < alive[static_cast<std::size_t>(k)].size(); ++i) {
      if (alive[static_cast<std::size_t>(k)][i]) {
        keep[static_cast<std::size_t>(k)].push_back(static_cast<int>(i));
        deg.push_back(in.degrees[static_cast<std::size_t>(k)][i]);
      }
    }
    mc.degrees.push_back(std::move(deg));
  }
  for (int k = 0; k + 1 < nterms; ++k) {
    const auto& rk = keep[static_cast<std::size_t>(k + 1)];
    const auto& ck = keep[static_cast<std::size_t>(k)];
    PolyMatrix m(static_cast<int>(rk.size()), static_cast<int>(ck.size()), nv);
    for (std::size_t r = 0; r < rk.size(); ++r) {
      for (std::size_t c = 0; c < ck.size(); ++c) {
        m(static_cast<int>(r), static_cast<int>(c)) =
            d[static_cast<std::size_t>(k)][static_cast<std::size_t>(rk[r])][static_cast<std::size_t>(ck[c])];
      }
    }
    mc.diffs.push_back(std::move(m));
  }
  if (track) {
    for (int k = 0; k < nterms; ++k) {
      const auto& kk = keep[static_cast<std::size_t>(k)];
      const int orig = static_cast<int>(in.degrees[static_cast<std::size_t>(k)].size());
      PolyMatrix p(static_cast<int>(kk.size()), orig, nv), io(orig, static_cast<int>(kk.size()), nv);
      for (std::size_t r = 0; r < kk.size(); ++r) {
        for (int c = 0; c < orig; ++c) {
          p(static_cast<int>(r), c) = pi[static_cast<std::size_t>(k)][static_cast<std::size_t>(kk[r])][static_cast<std::size_t>(c)];
          io(c, static_cast<int>(r)) = iota[static_cast<std::size_t>(k)][static_cast<std::size_t>(kk[r])][static_cast<std::size_t>(c)];
        }
      }
      out.pi.emplace(in.lo + k, std::move(p));
      out.iota.emplace(in.lo + k, std::move(io));
    }
  }
  return out;
}

LeftComplex minimize_left(const Complex& a) {
  LeftComplex m = minimize_left(LeftComplex::from(a), false).complex;
  m.trim();
  return m;
}

bool is_acyclic(const LeftComplex& a) { return minimize_left(a, false).complex.is_zero(); }
bool is_acyclic(const Complex& a) { return minimize_left(a).is_zero(); }

// ---------------------------------------------------------------- cohomology

std::vector<int> CohomologyModule::generator_degrees() const {
  return quotient ? quotient->generator_degrees() : std::vector<int>{};
}

HilbertSeries CohomologyModule::hilbert_series() const {
  return quotient ? quotient->hilbert_series() : HilbertSeries(LaurentPoly(), nvars);
}

std::vector<Poly> CohomologyModule::class_of(const ModVec& cocycle) const {
  if (!quotient) return {};
  return quotient->coordinates(apply_matrix(pi, cocycle));
}

std::optional<Bimodule> CohomologyModule::as_bimodule(std::string label) const {
  if (!is_free()) return std::nullopt;
  if (is_zero()) {
    std::vector<PolyMatrix> rho(static_cast<std::size_t>(nvars), PolyMatrix(0, 0, nvars));
    return Bimodule(nvars, {}, std::move(rho), std::move(label), false);
  }
  return Bimodule(nvars, quotient->generator_degrees(), action, std::move(label));
}

Cohomology::Cohomology(const Complex& a) : a_(&a), min_(minimize_left(LeftComplex::from(a), true)) {}

CohomologyModule Cohomology::at(int i) const {
  CohomologyModule h;
  h.nvars = a_->nvars();
  h.index = i;
  const LeftComplex& m = min_.complex;
  std::vector<int> deg = m.degrees_at(i);
  if (deg.empty()) return h;
  const int nv = h.nvars;
  Submodule ker = m.rank(i + 1) == 0 ? Submodule::whole(nv, deg)
                                     : kernel_of_poly_matrix(m.differential(i), deg, m.degrees_at(i + 1), 0);
  Submodule im = m.rank(i - 1) == 0 ? Submodule(nv, deg) : image_of_poly_matrix(m.differential(i - 1), deg);
  h.quotient.emplace(std::move(ker), std::move(im));
  const PolyMatrix& pi = min_.pi.at(i);
  const PolyMatrix& io = min_.iota.at(i);
  h.pi = pi;
  for (const auto& g : h.quotient->generators()) h.lifts.push_back(apply_matrix(io, g));
  const Bimodule& tot = a_->total(i);
  const int r = h.rank();
  for (int k = 0; k < nv; ++k) {
    PolyMatrix act(r, r, nv);
    for (int c = 0; c < r; ++c) {
      ModVec moved = apply_matrix(pi, apply_matrix(tot.rho(k), h.lifts[static_cast<std::size_t>(c)]));
      auto coords = h.quotient->coordinates(moved);
      for (int rr = 0; rr < r; ++rr) act(rr, c) = coords[static_cast<std::size_t>(rr)];
    }
    h.action.push_back(std::move(act));
  }
  return h;
}

CohomologyModule cohomology(const Complex& a, int i) { return Cohomology(a).at(i); }

std::optional<TwistedStandard> identify_twisted_standard(const CoxeterSystem& w, const CohomologyModule& h) {
  if (h.rank() != 1 || !h.is_free()) return std::nullopt;
  const int deg = h.generator_degrees().front();
  for (Elem x = 0; x < w.size(); ++x) {
    Bimodule rx = make_Rx(w, x, 0);
    bool match = true;
    for (int k = 0; k < h.nvars && match; ++k) match = h.action[static_cast<std::size_t>(k)](0, 0) == rx.rho(k)(0, 0);
    if (match) return TwistedStandard{x, -deg};
  }
  return std::nullopt;
}

}  // namespace soergel
