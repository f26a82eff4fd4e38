#include "soergel/frac.hpp"

#include <stdexcept>

#include "soergel/cancel.hpp"

namespace soergel {

FracElem::FracElem(Poly num) : num_(std::move(num)), den_(num_.nvars(), Rational(1)) {}

FracElem::FracElem(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("fraction with zero denominator");
  normalize();
}

void FracElem::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(den_.nvars(), Rational(1));
    return;
  }
  if (!den_.is_unit()) {
    if (num_ == den_) {
      num_ = Poly(num_.nvars(), Rational(1));
      den_ = num_;
      return;
    }
    if (auto q = num_.divide_exact(den_)) {
      num_ = std::move(*q);
      den_ = Poly(num_.nvars(), Rational(1));
      return;
    }
  }
  Rational lc = den_.leading().coeff;
  if (lc != 1) {
    num_ *= 1 / lc;
    den_ *= 1 / lc;
  }
}

FracElem operator+(const FracElem& a, const FracElem& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return FracElem(a.num_ + b.num_, a.den_);
  if (auto q = a.den_.divide_exact(b.den_)) return FracElem(a.num_ + b.num_ * *q, a.den_);
  if (auto q = b.den_.divide_exact(a.den_)) return FracElem(a.num_ * *q + b.num_, b.den_);
  return FracElem(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

FracElem operator*(const FracElem& a, const FracElem& b) {
  if (a.is_zero() || b.is_zero()) return FracElem(Poly(a.num_.nvars()));
  if (auto q = a.num_.divide_exact(b.den_)) return FracElem(*q * b.num_, a.den_);
  if (auto q = b.num_.divide_exact(a.den_)) return FracElem(a.num_ * *q, b.den_);
  return FracElem(a.num_ * b.num_, a.den_ * b.den_);
}

FracElem operator/(const FracElem& a, const FracElem& b) {
  if (b.is_zero()) throw std::domain_error("division by zero fraction");
  return a * FracElem(b.den_, b.num_);
}

bool operator==(const FracElem& a, const FracElem& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

std::string FracElem::to_string() const {
  if (den_.is_unit()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

PolyKernel poly_kernel(const PolyMatrix& input) {
  const int m = input.rows();
  const int n = input.cols();
  const int nv = input.nvars();
  std::vector<std::vector<Poly>> a(static_cast<std::size_t>(m), std::vector<Poly>(static_cast<std::size_t>(n)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = input(i, j);
  }
  Poly prev(nv, Rational(1));
  std::vector<int> pivot_cols;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    poll_deadline();
    int best = -1;
    for (int i = r; i < m; ++i) {
      const Poly& e = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (e.is_zero()) continue;
      if (best < 0 || e.size() < a[static_cast<std::size_t>(best)][static_cast<std::size_t>(c)].size()) best = i;
    }
    if (best < 0) continue;
    std::swap(a[static_cast<std::size_t>(r)], a[static_cast<std::size_t>(best)]);
    const Poly piv = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      auto& row = a[static_cast<std::size_t>(i)];
      const Poly factor = row[static_cast<std::size_t>(c)];
      for (int j = 0; j < n; ++j) {
        if (j == c) continue;
        Poly v = piv * row[static_cast<std::size_t>(j)];
        const Poly& rj = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        if (!factor.is_zero() && !rj.is_zero()) v -= factor * rj;
        if (!prev.is_unit()) {
          auto q = v.divide_exact(prev);
          if (!q) throw std::logic_error("fraction-free elimination: inexact division");
          v = std::move(*q);
        } else if (prev.leading().coeff != 1) {
          v *= 1 / prev.leading().coeff;
        }
        row[static_cast<std::size_t>(j)] = std::move(v);
      }
      row[static_cast<std::size_t>(c)] = Poly(nv);
    }
    // Earlier pivot rows: their pivot entries become piv.
    prev = piv;
    pivot_cols.push_back(c);
    ++r;
  }
  PolyKernel k;
  std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
  for (int c : pivot_cols) is_pivot[static_cast<std::size_t>(c)] = 1;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<Poly> v(static_cast<std::size_t>(n), Poly(nv));
    v[static_cast<std::size_t>(f)] = prev;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
      v[static_cast<std::size_t>(pivot_cols[i])] = -a[i][static_cast<std::size_t>(f)];
    }
    k.free_cols.push_back(f);
    k.basis.push_back(std::move(v));
  }
  return k;
}

std::vector<std::vector<FracElem>> frac_kernel(const FracMatrix& m, int nvars) {
  ClearedRows cleared = clear_denominators(m, nvars);
  PolyKernel pk = poly_kernel(cleared.matrix);
  std::vector<std::vector<FracElem>> out;
  for (std::size_t i = 0; i < pk.basis.size(); ++i) {
    const Poly& d = pk.basis[i][static_cast<std::size_t>(pk.free_cols[i])];
    std::vector<FracElem> v;
    v.reserve(pk.basis[i].size());
    for (const auto& e : pk.basis[i]) v.emplace_back(e, d);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

// A common multiple of a and b; exact lcm when one divides the other or they
// share no factor detectable by exact division.
Poly common_multiple(const Poly& a, const Poly& b) {
  if (b.is_unit()) return a;
  if (a.is_unit()) return b.monic();
  if (a.divide_exact(b)) return a;
  if (b.divide_exact(a)) return b.monic();
  return (a * b).monic();
}

}  // namespace

ClearedRows clear_denominators(const FracMatrix& m, int nvars) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  ClearedRows out{PolyMatrix(rows, cols, nvars), {}};
  for (int i = 0; i < rows; ++i) {
    const auto& row = m[static_cast<std::size_t>(i)];
    Poly l(nvars, Rational(1));
    for (const auto& e : row) {
      if (!e.is_zero()) l = common_multiple(l, e.den());
    }
    for (int j = 0; j < cols; ++j) {
      const FracElem& e = row[static_cast<std::size_t>(j)];
      if (e.is_zero()) continue;
      auto q = l.divide_exact(e.den());
      out.matrix(i, j) = e.num() * *q;
    }
    out.factors.push_back(std::move(l));
  }
  return out;
}

void strip_common_factors(std::vector<Poly>& v, std::span<const Poly> candidates) {
  for (const Poly& f : candidates) {
    bool again = true;
    while (again) {
      again = false;
      std::vector<Poly> divided;
      divided.reserve(v.size());
      bool any = false;
      for (const auto& e : v) {
        if (e.is_zero()) {
          divided.push_back(e);
          continue;
        }
        auto q = e.divide_exact(f);
        if (!q) break;
        any = true;
        divided.push_back(std::move(*q));
      }
      if (any && divided.size() == v.size()) {
        v = std::move(divided);
        again = true;
      }
    }
  }
  for (const auto& e : v) {
    if (e.is_zero()) continue;
    Rational inv = 1 / e.leading().coeff;
    for (auto& x : v) x *= inv;
    break;
  }
}

}  // namespace soergel
