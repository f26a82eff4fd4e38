#include "soergel/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace soergel {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(int k) {
  if (k < 0 || k >= kMaxVars) throw std::out_of_range("variable index out of range");
  return Monomial((std::uint64_t{1} << 48) | (std::uint64_t{1} << (36 - 12 * k)));
}

Monomial Monomial::from_exponents(std::span<const int> exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars)) throw std::out_of_range("too many variables");
  std::uint64_t key = 0;
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if (exps[k] < 0 || exps[k] > static_cast<int>(kFieldMask)) throw std::out_of_range("exponent out of range");
    key |= static_cast<std::uint64_t>(exps[k]) << (36 - 12 * k);
    total += static_cast<std::uint64_t>(exps[k]);
  }
  return Monomial(key | (total << 48));
}

bool Monomial::divides(Monomial other) const {
  for (int k = 0; k < kMaxVars; ++k) {
    if (exponent(k) > other.exponent(k)) return false;
  }
  return true;
}

Monomial Monomial::lcm(Monomial other) const {
  int e[kMaxVars];
  for (int k = 0; k < kMaxVars; ++k) e[k] = std::max(exponent(k), other.exponent(k));
  return from_exponents(e);
}

Monomial Monomial::gcd(Monomial other) const {
  int e[kMaxVars];
  for (int k = 0; k < kMaxVars; ++k) e[k] = std::min(exponent(k), other.exponent(k));
  return from_exponents(e);
}

namespace {

void enumerate_exponents(int nvars, int total, int k, std::vector<int>& cur, std::vector<Monomial>& out) {
  if (k == nvars - 1) {
    cur[k] = total;
    out.push_back(Monomial::from_exponents(cur));
    return;
  }
  for (int e = total; e >= 0; --e) {
    cur[k] = e;
    enumerate_exponents(nvars, total - e, k + 1, cur, out);
  }
  cur[k] = 0;
}

}  // namespace

const std::vector<Monomial>& monomials_of_total(int nvars, int total) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<Monomial>> table;
  std::lock_guard lock(mu);
  auto [it, inserted] = table.try_emplace({nvars, total});
  if (inserted && total >= 0) {
    if (nvars == 0) {
      if (total == 0) it->second.push_back(Monomial());
    } else {
      std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
      enumerate_exponents(nvars, total, 0, cur, it->second);
      std::sort(it->second.begin(), it->second.end(), std::greater<>());
    }
  }
  return it->second;
}

long long count_monomials(int nvars, int total) {
  if (total < 0) return 0;
  if (nvars == 0) return total == 0 ? 1 : 0;
  // binom(total + nvars - 1, nvars - 1)
  long long r = 1;
  for (int i = 1; i < nvars; ++i) r = r * (total + i) / i;
  return r;
}

long long graded_dim(int nvars, int d) {
  if (d < 0 || d % 2 != 0) return 0;
  return count_monomials(nvars, d / 2);
}

// ---------------------------------------------------------------- Poly

Poly::Poly(int nvars, const Rational& c) : nvars_(nvars) {
  if (c != 0) terms_.push_back({Monomial(), c});
}

Poly Poly::variable(int nvars, int k) {
  if (k < 0 || k >= nvars) throw std::out_of_range("variable index out of range");
  return monomial(nvars, Monomial::variable(k), Rational(1));
}

Poly Poly::monomial(int nvars, Monomial m, const Rational& c) {
  Poly p(nvars);
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

void Poly::check_vars(const Poly& other) const {
  if (nvars_ != 0 && other.nvars_ != 0 && nvars_ != other.nvars_) {
    throw std::invalid_argument("polynomial variable-count mismatch");
  }
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return Rational(0);
}

Rational Poly::coefficient(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial key) { return t.mono > key; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return Rational(0);
}

bool Poly::is_homogeneous() const {
  return terms_.empty() || terms_.front().mono.total() == terms_.back().mono.total();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

void Poly::add_scaled(const Poly& other, Monomial m, const Rational& c) {
  check_vars(other);
  if (nvars_ == 0) nvars_ = other.nvars_;
  if (c == 0 || other.terms_.empty()) return;
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  Rational prod;
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end()) {
      out.push_back(std::move(*a++));
      continue;
    }
    Monomial bm = b->mono * m;
    if (a == terms_.end() || bm > a->mono) {
      out.push_back({bm, b->coeff * c});
      ++b;
    } else if (a->mono > bm) {
      out.push_back(std::move(*a++));
    } else {
      prod = b->coeff * c;
      prod += a->coeff;
      if (prod != 0) out.push_back({bm, prod});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

Poly& Poly::operator+=(const Poly& other) {
  add_scaled(other, Monomial(), Rational(1));
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  add_scaled(other, Monomial(), Rational(-1));
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

Poly Poly::times_term(Monomial m, const Rational& c) const {
  Poly r(nvars_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_vars(b);
  const int nv = a.nvars_ != 0 ? a.nvars_ : b.nvars_;
  if (a.terms_.empty() || b.terms_.empty()) return Poly(nv);
  if (a.terms_.size() == 1) return b.times_term(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.terms_.size() == 1) return a.times_term(b.terms_[0].mono, b.terms_[0].coeff);
  PolyBuilder builder(nv);
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) builder.add(s.mono * t.mono, s.coeff * t.coeff);
  }
  return builder.build();
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  check_vars(divisor);
  Poly rem = *this;
  Poly quot(nvars_ != 0 ? nvars_ : divisor.nvars_);
  const Term& lead = divisor.leading();
  while (!rem.is_zero()) {
    const Term& t = rem.leading();
    if (!lead.mono.divides(t.mono)) return std::nullopt;
    Monomial m = t.mono / lead.mono;
    Rational c = t.coeff / lead.coeff;
    quot.terms_.push_back({m, c});
    rem.add_scaled(divisor, m, -c);
  }
  return quot;
}

Poly Poly::pow(int e) const {
  Poly result(nvars_, Rational(1));
  Poly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::substitute(std::span<const Poly> images) const {
  const int nv = images.empty() ? nvars_ : images[0].nvars();
  Poly result(nv);
  std::vector<std::vector<Poly>> powers(images.size());
  for (const auto& t : terms_) {
    Poly term(nv, t.coeff);
    for (std::size_t k = 0; k < images.size(); ++k) {
      int e = t.mono.exponent(static_cast<int>(k));
      if (e == 0) continue;
      auto& pw = powers[k];
      if (pw.empty()) pw.push_back(Poly(nv, Rational(1)));
      while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * images[k]);
      term = term * pw[static_cast<std::size_t>(e)];
    }
    result += term;
  }
  return result;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / leading().coeff;
  return *this * inv;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool wrote = false;
    if (c != 1 || t.mono.is_one()) {
      os << soergel::to_string(c);
      wrote = true;
    }
    for (int k = 0; k < kMaxVars; ++k) {
      int e = t.mono.exponent(k);
      if (e == 0) continue;
      if (wrote) os << "*";
      os << "x" << (k + 1);
      if (e > 1) os << "^" << e;
      wrote = true;
    }
  }
  return os.str();
}

Poly Poly::parse(std::string_view text, int nvars) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t' && ch != '\n') s.push_back(ch);
  }
  if (s.empty()) throw std::invalid_argument("empty polynomial text");
  PolyBuilder builder(nvars);
  std::size_t pos = 0;
  while (pos < s.size()) {
    Rational sign(1);
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    }
    std::size_t end = s.find_first_of("+-", pos);
    if (end == std::string::npos) end = s.size();
    std::string_view term(s.data() + pos, end - pos);
    if (term.empty()) throw std::invalid_argument("malformed polynomial text");
    Rational coeff = sign;
    int exps[kMaxVars] = {0, 0, 0, 0};
    std::size_t fpos = 0;
    while (fpos <= term.size()) {
      std::size_t fend = term.find('*', fpos);
      if (fend == std::string_view::npos) fend = term.size();
      std::string_view factor = term.substr(fpos, fend - fpos);
      if (factor.empty()) throw std::invalid_argument("malformed polynomial factor");
      if (factor[0] == 'x') {
        std::size_t caret = factor.find('^');
        int var = std::stoi(std::string(factor.substr(1, caret == std::string_view::npos ? std::string_view::npos : caret - 1)));
        int e = caret == std::string_view::npos ? 1 : std::stoi(std::string(factor.substr(caret + 1)));
        if (var < 1 || var > nvars || e < 0) throw std::invalid_argument("bad variable in polynomial text");
        exps[var - 1] += e;
      } else {
        coeff *= parse_rational(factor);
      }
      fpos = fend + 1;
    }
    builder.add(Monomial::from_exponents(std::span<const int>(exps, static_cast<std::size_t>(nvars))), coeff);
    pos = end;
  }
  return builder.build();
}

// ---------------------------------------------------------------- PolyBuilder

void PolyBuilder::add(Monomial m, const Rational& c) {
  if (c != 0) terms_.push_back({m, c});
}

Poly PolyBuilder::build() {
  std::sort(terms_.begin(), terms_.end(), [](const Poly::Term& a, const Poly::Term& b) { return a.mono > b.mono; });
  Poly p(nvars_);
  for (auto& t : terms_) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  terms_.clear();
  return p;
}

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(int rows, int cols, int nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), data_(static_cast<std::size_t>(rows) * cols, Poly(nvars)) {}

PolyMatrix PolyMatrix::identity(int n, int nvars) { return scalar(n, Poly(nvars, Rational(1))); }

PolyMatrix PolyMatrix::scalar(int n, const Poly& p) {
  PolyMatrix m(n, n, p.nvars());
  for (int i = 0; i < n; ++i) m(i, i) = p;
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix shape mismatch in product");
  PolyMatrix out(rows_, other.cols_, nvars_ ? nvars_ : other.nvars_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const Poly& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < other.cols_; ++j) {
        const Poly& b = other(k, j);
        if (b.is_zero()) continue;
        if (a.size() == 1) {
          out(i, j).add_scaled(b, a.leading().mono, a.leading().coeff);
        } else {
          out(i, j) += a * b;
        }
      }
    }
  }
  return out;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix shape mismatch in sum");
  PolyMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix shape mismatch in difference");
  PolyMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
  return out;
}

PolyMatrix PolyMatrix::operator*(const Rational& c) const {
  PolyMatrix out = *this;
  for (auto& p : out.data_) p *= c;
  return out;
}

bool PolyMatrix::operator==(const PolyMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Poly& p) { return p.is_zero(); });
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, nvars_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  t.row_degrees = col_degrees;
  t.col_degrees = row_degrees;
  return t;
}

PolyMatrix PolyMatrix::block(int r0, int c0, int nrows, int ncols) const {
  PolyMatrix b(nrows, ncols, nvars_);
  for (int i = 0; i < nrows; ++i) {
    for (int j = 0; j < ncols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  }
  return b;
}

void PolyMatrix::set_block(int r0, int c0, const PolyMatrix& b) {
  for (int i = 0; i < b.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
}

bool PolyMatrix::is_homogeneous(std::span<const int> row_deg, std::span<const int> col_deg, int delta) const {
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      const Poly& p = (*this)(i, j);
      if (p.is_zero()) continue;
      if (!p.is_homogeneous() || p.degree() != col_deg[static_cast<std::size_t>(j)] + delta - row_deg[static_cast<std::size_t>(i)]) {
        return false;
      }
    }
  }
  return true;
}

bool pairwise_commute(std::span<const PolyMatrix> mats) {
  for (std::size_t i = 0; i < mats.size(); ++i) {
    for (std::size_t j = i + 1; j < mats.size(); ++j) {
      if (!(mats[i] * mats[j] == mats[j] * mats[i])) return false;
    }
  }
  return true;
}

PolyMatrix substitute_matrices(const Poly& g, std::span<const PolyMatrix> mats) {
  MatrixEvaluator eval(mats);
  return eval(g);
}

// ---------------------------------------------------------------- MatrixEvaluator

MatrixEvaluator::MatrixEvaluator(std::span<const PolyMatrix> mats) : mats_(mats.begin(), mats.end()) {
  if (mats_.empty()) throw std::invalid_argument("MatrixEvaluator needs at least one matrix");
  dim_ = mats_[0].rows();
  nvars_ = mats_[0].nvars();
  for (const auto& m : mats_) {
    if (m.rows() != dim_ || m.cols() != dim_) throw std::invalid_argument("substitution matrices must be square of equal size");
  }
}

const PolyMatrix& MatrixEvaluator::monomial(Monomial m) {
  auto it = cache_.find(m.key());
  if (it != cache_.end()) return it->second;
  PolyMatrix value;
  if (m.is_one()) {
    value = PolyMatrix::identity(dim_, nvars_);
  } else {
    int k = 0;
    while (m.exponent(k) == 0) ++k;
    Monomial rest = m / Monomial::variable(k);
    value = mats_[static_cast<std::size_t>(k)] * monomial(rest);
  }
  return cache_.emplace(m.key(), std::move(value)).first->second;
}

PolyMatrix MatrixEvaluator::operator()(const Poly& g) {
  PolyMatrix out(dim_, dim_, nvars_);
  for (const auto& t : g.terms()) {
    const PolyMatrix& mm = monomial(t.mono);
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) {
        const Poly& e = mm(i, j);
        if (!e.is_zero()) out(i, j).add_scaled(e, Monomial(), t.coeff);
      }
    }
  }
  return out;
}

}  // namespace soergel
