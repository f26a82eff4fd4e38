#include "soergel/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "soergel/cancel.hpp"

namespace soergel {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using ModRow = std::vector<std::pair<int, u32>>;

constexpr u32 kPrimes[] = {2147483629u, 2147483587u, 2147483579u, 2147483563u};

u64 pow_mod(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

std::optional<u32> to_mod(const Rational& q, u32 p) {
  u64 num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
  u64 den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
  if (den == 0) return std::nullopt;
  return static_cast<u32>(num * inv_mod(den, p) % p);
}

struct ModRref {
  std::vector<int> pivot_cols;  // ascending
  std::vector<ModRow> rows;     // rows[i] leads with 1 at pivot_cols[i], zero at other pivots
};

std::optional<ModRref> rref_mod(const SparseMatrix& a, u32 p) {
  const int n = a.cols;
  std::vector<int> pivot_of(static_cast<std::size_t>(n), -1);
  std::vector<ModRow> stored;
  std::vector<u64> acc(static_cast<std::size_t>(n), 0);
  for (const auto& row : a.rows) {
    poll_deadline();
    if (row.empty()) continue;
    int first = n;
    for (const auto& [c, v] : row) {
      auto m = to_mod(v, p);
      if (!m) return std::nullopt;
      acc[static_cast<std::size_t>(c)] = *m;
      first = std::min(first, c);
    }
    int lead = -1;
    for (int c = first; c < n; ++c) {
      u64 v = acc[static_cast<std::size_t>(c)] % p;
      acc[static_cast<std::size_t>(c)] = v;
      if (v == 0) continue;
      int pr = pivot_of[static_cast<std::size_t>(c)];
      if (pr < 0) {
        if (lead < 0) lead = c;
        continue;
      }
      u64 f = p - v;
      for (const auto& [cc, vv] : stored[static_cast<std::size_t>(pr)]) {
        acc[static_cast<std::size_t>(cc)] = (acc[static_cast<std::size_t>(cc)] + f * vv) % p;
      }
    }
    if (lead < 0) continue;
    u64 inv = inv_mod(acc[static_cast<std::size_t>(lead)], p);
    ModRow r;
    for (int c = lead; c < n; ++c) {
      u64 v = acc[static_cast<std::size_t>(c)];
      if (v != 0) {
        r.emplace_back(c, static_cast<u32>(v * inv % p));
        acc[static_cast<std::size_t>(c)] = 0;
      }
    }
    pivot_of[static_cast<std::size_t>(lead)] = static_cast<int>(stored.size());
    stored.push_back(std::move(r));
  }
  // Back substitution, right to left, to reach reduced echelon form.
  std::vector<int> order;
  for (int c = 0; c < n; ++c) {
    if (pivot_of[static_cast<std::size_t>(c)] >= 0) order.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    poll_deadline();
    ModRow& r = stored[static_cast<std::size_t>(pivot_of[static_cast<std::size_t>(*it)])];
    bool touched = false;
    for (const auto& [c, v] : r) {
      if (c != *it && pivot_of[static_cast<std::size_t>(c)] >= 0) {
        touched = true;
        break;
      }
    }
    if (!touched) continue;
    for (const auto& [c, v] : r) acc[static_cast<std::size_t>(c)] = v;
    for (std::size_t k = 1; k < r.size(); ++k) {
      int c = r[k].first;
      u64 v = acc[static_cast<std::size_t>(c)] % p;
      acc[static_cast<std::size_t>(c)] = v;
      int pr = pivot_of[static_cast<std::size_t>(c)];
      if (v == 0 || pr < 0) continue;
      u64 f = p - v;
      for (const auto& [cc, vv] : stored[static_cast<std::size_t>(pr)]) {
        acc[static_cast<std::size_t>(cc)] = (acc[static_cast<std::size_t>(cc)] + f * vv) % p;
      }
    }
    ModRow out;
    for (int c = *it; c < n; ++c) {
      u64 v = acc[static_cast<std::size_t>(c)] % p;
      acc[static_cast<std::size_t>(c)] = 0;
      if (v != 0) out.emplace_back(c, static_cast<u32>(v));
    }
    r = std::move(out);
  }
  ModRref res;
  for (int c : order) {
    res.pivot_cols.push_back(c);
    res.rows.push_back(std::move(stored[static_cast<std::size_t>(pivot_of[static_cast<std::size_t>(c)])]));
  }
  return res;
}

// Rational number congruent to a modulo m with |num|, den <= sqrt(m/2).
std::optional<Rational> reconstruct(const Integer& a, const Integer& m) {
  Integer bound = sqrt(Integer(m / 2));
  Integer r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  Integer t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Rational q(r1, t1);
  q.canonicalize();
  if (gcd(Integer(q.get_den()), m) != 1) return std::nullopt;
  return q;
}

}  // namespace

bool annihilates(const SparseMatrix& a, const SparseVec& v) {
  if (v.empty()) return true;
  std::vector<const Rational*> dense(static_cast<std::size_t>(a.cols), nullptr);
  for (const auto& [c, x] : v) dense[static_cast<std::size_t>(c)] = &x;
  Rational acc;
  for (const auto& row : a.rows) {
    acc = 0;
    for (const auto& [c, x] : row) {
      if (const Rational* y = dense[static_cast<std::size_t>(c)]) acc += x * *y;
    }
    if (acc != 0) return false;
  }
  return true;
}

namespace {

// Certifies a whole candidate basis at once: returns false if any product is
// nonzero.
bool annihilates_all(const SparseMatrix& a, const Nullspace& ns) {
  if (ns.basis.empty()) return true;
  // by_col[c] = list of (basis index, value)
  std::vector<std::vector<std::pair<int, const Rational*>>> by_col(static_cast<std::size_t>(a.cols));
  for (std::size_t j = 0; j < ns.basis.size(); ++j) {
    for (const auto& [c, x] : ns.basis[j]) by_col[static_cast<std::size_t>(c)].emplace_back(static_cast<int>(j), &x);
  }
  std::vector<Rational> acc(ns.basis.size());
  std::vector<int> touched;
  std::vector<char> mark(ns.basis.size(), 0);
  for (const auto& row : a.rows) {
    poll_deadline();
    touched.clear();
    for (const auto& [c, x] : row) {
      for (const auto& [j, y] : by_col[static_cast<std::size_t>(c)]) {
        if (!mark[static_cast<std::size_t>(j)]) {
          mark[static_cast<std::size_t>(j)] = 1;
          touched.push_back(j);
          acc[static_cast<std::size_t>(j)] = 0;
        }
        acc[static_cast<std::size_t>(j)] += x * *y;
      }
    }
    bool ok = true;
    for (int j : touched) {
      if (acc[static_cast<std::size_t>(j)] != 0) ok = false;
      mark[static_cast<std::size_t>(j)] = 0;
    }
    if (!ok) return false;
  }
  return true;
}

using Image = std::pair<u32, ModRref>;

std::optional<Nullspace> reconstruct_kernel(const std::vector<Image>& images, int ncols) {
  const ModRref& ref = images.front().second;
  Nullspace ns;
  ns.pivot_cols = ref.pivot_cols;
  std::vector<char> is_pivot(static_cast<std::size_t>(ncols), 0);
  for (int c : ref.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = 1;
  std::vector<int> free_index(static_cast<std::size_t>(ncols), -1);
  for (int c = 0; c < ncols; ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) {
      free_index[static_cast<std::size_t>(c)] = static_cast<int>(ns.free_cols.size());
      ns.free_cols.push_back(c);
    }
  }
  ns.basis.assign(ns.free_cols.size(), {});
  Integer modulus = 1;
  for (const auto& img : images) modulus *= img.first;

  std::vector<Integer> residue(ns.free_cols.size());
  std::vector<char> seen(ns.free_cols.size(), 0);
  std::vector<int> touched;
  for (std::size_t i = 0; i < ref.pivot_cols.size(); ++i) {
    touched.clear();
    Integer m = 1;
    for (const auto& [p, rr] : images) {
      // Current residues are modulo m; fold in the image modulo p.
      const ModRow& row = rr.rows[i];
      for (const auto& [c, v] : row) {
        if (c == ref.pivot_cols[i]) continue;
        int j = free_index[static_cast<std::size_t>(c)];
        if (j < 0) return std::nullopt;
        if (!seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = 1;
          residue[static_cast<std::size_t>(j)] = 0;
          touched.push_back(j);
        }
      }
      u64 m_mod_p = mpz_fdiv_ui(m.get_mpz_t(), p);
      u64 m_inv = inv_mod(m_mod_p, p);
      for (int j : touched) {
        auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(ns.free_cols[static_cast<std::size_t>(j)], u32{0}));
        u64 r = (it != row.end() && it->first == ns.free_cols[static_cast<std::size_t>(j)]) ? it->second : 0;
        r = (p - r) % p;  // kernel entry is minus the echelon entry
        Integer& x = residue[static_cast<std::size_t>(j)];
        u64 x_mod_p = mpz_fdiv_ui(x.get_mpz_t(), p);
        u64 t = (r + p - x_mod_p) % p * m_inv % p;
        x += m * t;
      }
      m *= p;
    }
    for (int j : touched) {
      seen[static_cast<std::size_t>(j)] = 0;
      auto q = reconstruct(residue[static_cast<std::size_t>(j)], modulus);
      if (!q) return std::nullopt;
      if (*q != 0) ns.basis[static_cast<std::size_t>(j)].emplace_back(ref.pivot_cols[i], std::move(*q));
    }
  }
  for (std::size_t j = 0; j < ns.free_cols.size(); ++j) {
    auto& v = ns.basis[j];
    v.emplace_back(ns.free_cols[j], Rational(1));
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  return ns;
}

}  // namespace

Nullspace nullspace(const SparseMatrix& a) {
  std::vector<Image> images;
  for (u32 p : kPrimes) {
    auto r = rref_mod(a, p);
    if (!r) continue;
    if (!images.empty() && r->pivot_cols != images.front().second.pivot_cols) {
      if (r->pivot_cols.size() <= images.front().second.pivot_cols.size()) continue;
      images.clear();
    }
    images.emplace_back(p, std::move(*r));
    auto ns = reconstruct_kernel(images, a.cols);
    if (ns && annihilates_all(a, *ns)) return std::move(*ns);
  }
  return nullspace_exact(a);
}

int rank(const SparseMatrix& a) { return a.cols - static_cast<int>(nullspace(a).basis.size()); }

Nullspace nullspace_exact(const SparseMatrix& a) {
  const int n = a.cols;
  std::vector<int> pivot_of(static_cast<std::size_t>(n), -1);
  std::vector<SparseVec> stored;
  std::vector<Rational> acc(static_cast<std::size_t>(n));
  std::vector<char> nz(static_cast<std::size_t>(n), 0);
  auto reduce_into_acc = [&](int from, int skip_col) {
    for (int c = from; c < n; ++c) {
      if (!nz[static_cast<std::size_t>(c)] || c == skip_col) continue;
      if (acc[static_cast<std::size_t>(c)] == 0) {
        nz[static_cast<std::size_t>(c)] = 0;
        continue;
      }
      int pr = pivot_of[static_cast<std::size_t>(c)];
      if (pr < 0) continue;
      Rational f = acc[static_cast<std::size_t>(c)];
      for (const auto& [cc, vv] : stored[static_cast<std::size_t>(pr)]) {
        acc[static_cast<std::size_t>(cc)] -= f * vv;
        nz[static_cast<std::size_t>(cc)] = 1;
      }
    }
  };
  for (const auto& row : a.rows) {
    poll_deadline();
    if (row.empty()) continue;
    for (const auto& [c, v] : row) {
      acc[static_cast<std::size_t>(c)] = v;
      nz[static_cast<std::size_t>(c)] = 1;
    }
    reduce_into_acc(row.front().first, -1);
    int lead = -1;
    for (int c = 0; c < n; ++c) {
      if (nz[static_cast<std::size_t>(c)] && acc[static_cast<std::size_t>(c)] != 0) {
        lead = c;
        break;
      }
    }
    if (lead >= 0) {
      Rational inv = 1 / acc[static_cast<std::size_t>(lead)];
      SparseVec r;
      for (int c = lead; c < n; ++c) {
        if (nz[static_cast<std::size_t>(c)] && acc[static_cast<std::size_t>(c)] != 0) r.emplace_back(c, acc[static_cast<std::size_t>(c)] * inv);
      }
      pivot_of[static_cast<std::size_t>(lead)] = static_cast<int>(stored.size());
      stored.push_back(std::move(r));
    }
    for (int c = 0; c < n; ++c) {
      acc[static_cast<std::size_t>(c)] = 0;
      nz[static_cast<std::size_t>(c)] = 0;
    }
  }
  std::vector<int> order;
  for (int c = 0; c < n; ++c) {
    if (pivot_of[static_cast<std::size_t>(c)] >= 0) order.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    SparseVec& r = stored[static_cast<std::size_t>(pivot_of[static_cast<std::size_t>(*it)])];
    for (const auto& [c, v] : r) {
      acc[static_cast<std::size_t>(c)] = v;
      nz[static_cast<std::size_t>(c)] = 1;
    }
    reduce_into_acc(*it + 1, -1);
    SparseVec out;
    for (int c = *it; c < n; ++c) {
      if (nz[static_cast<std::size_t>(c)] && acc[static_cast<std::size_t>(c)] != 0) out.emplace_back(c, acc[static_cast<std::size_t>(c)]);
      acc[static_cast<std::size_t>(c)] = 0;
      nz[static_cast<std::size_t>(c)] = 0;
    }
    r = std::move(out);
  }
  Nullspace ns;
  ns.pivot_cols = order;
  std::vector<int> free_index(static_cast<std::size_t>(n), -1);
  for (int c = 0; c < n; ++c) {
    if (pivot_of[static_cast<std::size_t>(c)] < 0) {
      free_index[static_cast<std::size_t>(c)] = static_cast<int>(ns.free_cols.size());
      ns.free_cols.push_back(c);
    }
  }
  ns.basis.assign(ns.free_cols.size(), {});
  for (int pc : order) {
    for (const auto& [c, v] : stored[static_cast<std::size_t>(pivot_of[static_cast<std::size_t>(pc)])]) {
      if (c == pc) continue;
      ns.basis[static_cast<std::size_t>(free_index[static_cast<std::size_t>(c)])].emplace_back(pc, -v);
    }
  }
  for (std::size_t j = 0; j < ns.free_cols.size(); ++j) {
    auto& v = ns.basis[j];
    v.emplace_back(ns.free_cols[j], Rational(1));
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  return ns;
}

std::vector<Rational> kernel_coordinates(const Nullspace& ns, const SparseVec& v) {
  std::vector<Rational> out(ns.free_cols.size());
  std::size_t j = 0;
  for (const auto& [c, x] : v) {
    while (j < ns.free_cols.size() && ns.free_cols[j] < c) ++j;
    if (j < ns.free_cols.size() && ns.free_cols[j] == c) out[j] = x;
  }
  return out;
}

}  // namespace soergel
