#include "soergel/hilbert.hpp"

#include <sstream>
#include <stdexcept>

#include "soergel/poly.hpp"

namespace soergel {

LaurentPoly LaurentPoly::monomial(int exponent, long long coeff) {
  LaurentPoly p;
  p.add(exponent, coeff);
  return p;
}

void LaurentPoly::add(int e, long long c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

long long LaurentPoly::coefficient(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? 0 : it->second;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  for (const auto& [e, c] : other.coeffs_) add(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  for (const auto& [e, c] : other.coeffs_) add(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [e1, c1] : a.coeffs_) {
    for (const auto& [e2, c2] : b.coeffs_) out.add(e1 + e2, c1 * c2);
  }
  return out;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly out;
  for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e + k, c);
  return out;
}

std::string LaurentPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    long long a = c;
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (a < 0) a = -a;
    first = false;
    if (e == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a << "*";
    os << "v";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

long long HilbertSeries::dim(int d) const {
  // 1/(1-v^2)^n has coefficient dim R_k at v^k.
  long long total = 0;
  for (const auto& [e, c] : num_.coefficients()) {
    if (e > d) break;
    total += c * graded_dim(nvars_, d - e);
  }
  return total;
}

std::vector<long long> HilbertSeries::truncated(int lo, int hi) const {
  std::vector<long long> out;
  for (int d = lo; d <= hi; ++d) out.push_back(dim(d));
  return out;
}

std::optional<std::vector<int>> HilbertSeries::free_generator_degrees() const {
  std::vector<int> out;
  for (const auto& [e, c] : num_.coefficients()) {
    if (c < 0) return std::nullopt;
    out.insert(out.end(), static_cast<std::size_t>(c), e);
  }
  return out;
}

HilbertSeries& HilbertSeries::operator+=(const HilbertSeries& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) nvars_ = other.nvars_;
  if (nvars_ != other.nvars_) throw std::invalid_argument("Hilbert series over different rings");
  num_ += other.num_;
  return *this;
}

HilbertSeries& HilbertSeries::operator-=(const HilbertSeries& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) nvars_ = other.nvars_;
  if (nvars_ != other.nvars_) throw std::invalid_argument("Hilbert series over different rings");
  num_ -= other.num_;
  return *this;
}

bool HilbertSeries::operator==(const HilbertSeries& other) const {
  if (is_zero() || other.is_zero()) return is_zero() == other.is_zero();
  return nvars_ == other.nvars_ && num_ == other.num_;
}

std::string HilbertSeries::to_string() const {
  return "(" + num_.to_string() + ")/(1-v^2)^" + std::to_string(nvars_);
}

HilbertSeries hilbert_series_free(std::span<const int> shifts, int nvars) {
  LaurentPoly p;
  for (int k : shifts) p += LaurentPoly::monomial(-k);
  return HilbertSeries(std::move(p), nvars);
}

HilbertSeries hilbert_series_generated(std::span<const int> degrees, int nvars) {
  LaurentPoly p;
  for (int d : degrees) p += LaurentPoly::monomial(d);
  return HilbertSeries(std::move(p), nvars);
}

}  // namespace soergel
