#include <doctest.h>

#include <map>
#include <random>

#include "soergel/coxeter.hpp"
#include "soergel/groebner.hpp"
#include "soergel/linalg.hpp"

using namespace soergel;

namespace {

Poly P(const char* s, int n) { return Poly::parse(s, n); }

// Dimension of the degree-d piece of the submodule generated by gens,
// computed by spanning all monomial multiples.
long long span_dim(int nvars, const std::vector<int>& amb, const std::vector<ModVec>& gens, int d) {
  std::map<std::pair<int, std::uint64_t>, int> col;
  SparseMatrix a;
  for (const auto& g : gens) {
    if (is_zero(g)) continue;
    int gd = vec_degree(g, amb);
    if (d < gd || (d - gd) % 2) continue;
    for (Monomial m : monomials_of_total(nvars, (d - gd) / 2)) {
      std::map<int, Rational> row;
      for (std::size_t c = 0; c < g.size(); ++c) {
        for (const auto& t : g[c].terms()) {
          auto key = std::make_pair(static_cast<int>(c), (t.mono * m).key());
          auto it = col.emplace(key, static_cast<int>(col.size())).first;
          row[it->second] += t.coeff;
        }
      }
      SparseVec v;
      for (auto& [k, val] : row) {
        if (val != 0) v.emplace_back(k, val);
      }
      a.rows.push_back(v);
    }
  }
  a.cols = static_cast<int>(col.size());
  for (auto& r : a.rows) std::sort(r.begin(), r.end(), [](auto& x, auto& y) { return x.first < y.first; });
  return a.rows.empty() ? 0 : rank(a);
}

Poly random_homogeneous(std::mt19937& rng, int nvars, int deg) {
  if (deg < 0 || deg % 2) return Poly(nvars);
  std::uniform_int_distribution<int> coef(-2, 2);
  Poly p(nvars);
  for (Monomial m : monomials_of_total(nvars, deg / 2)) {
    int c = coef(rng);
    if (c) p += Poly::monomial(nvars, m, Rational(c));
  }
  return p;
}

}  // namespace

TEST_CASE("kernel examples") {
  auto w = CoxeterSystem::build("A1");
  Poly as = w->simple_root(0);
  std::vector<int> src1{0};
  PolyMatrix m1(1, 1, 1);
  m1(0, 0) = as;
  CHECK(kernel_of_poly_matrix(m1, src1).is_zero());

  PolyMatrix m2(1, 2, 1);
  m2(0, 0) = Poly(1, Rational(1));
  m2(0, 1) = as;
  std::vector<int> src2{2, 0};
  Submodule k2 = kernel_of_poly_matrix(m2, src2);
  REQUIRE(k2.basis().size() == 1);
  ModVec expect{as, Poly(1, Rational(-1))};
  CHECK(Submodule::generated_by(1, src2, {expect}).equals(k2));

  PolyMatrix zero(2, 3, 1);
  std::vector<int> src3{0, 2, 4};
  CHECK(kernel_of_poly_matrix(zero, src3, std::vector<int>{0, 0}, 0).equals(Submodule::whole(1, src3)));
}

TEST_CASE("monomial ideal numerators") {
  Monomial x = Monomial::variable(0), y = Monomial::variable(1);
  CHECK(monomial_ideal_numerator({}) == LaurentPoly::monomial(0));
  CHECK(monomial_ideal_numerator({Monomial()}).is_zero());
  // R/(x y): 1 - v^4
  CHECK(monomial_ideal_numerator({x * y}) == LaurentPoly::monomial(0) - LaurentPoly::monomial(4));
  // R/(x^2, x y): 1 - 2 v^4 + v^6
  LaurentPoly n = monomial_ideal_numerator({x * x, x * y});
  CHECK(n == LaurentPoly::monomial(0) - LaurentPoly::monomial(4, 2) + LaurentPoly::monomial(6));
}

TEST_CASE("submodule hilbert series agree with spanning sets") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    const int nv = 2 + trial % 2;
    const int ncomp = 1 + trial % 3;
    std::vector<int> amb;
    for (int c = 0; c < ncomp; ++c) amb.push_back(2 * (static_cast<int>(rng() % 3)) - 2);
    std::vector<ModVec> gens;
    const int ngens = 1 + static_cast<int>(rng() % 4);
    for (int g = 0; g < ngens; ++g) {
      int deg = 2 * static_cast<int>(rng() % 3) + 2;
      ModVec v;
      for (int c = 0; c < ncomp; ++c) v.push_back(random_homogeneous(rng, nv, deg - amb[static_cast<std::size_t>(c)]));
      gens.push_back(v);
    }
    Submodule s = Submodule::generated_by(nv, amb, gens);
    for (const auto& g : gens) CHECK(s.contains(g));
    HilbertSeries hs = s.hilbert_series();
    for (int d = -2; d <= 10; ++d) CHECK(hs.dim(d) == span_dim(nv, amb, gens, d));
    // reduced basis generates the same module
    CHECK(Submodule::generated_by(nv, amb, s.basis()).equals(s));
  }
}

TEST_CASE("kernel is annihilated and exact against rank count") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    const int nv = 2;
    const int rows = 1 + trial % 2, cols = 2 + trial % 3;
    std::vector<int> tgt(static_cast<std::size_t>(rows), 0), src;
    for (int c = 0; c < cols; ++c) src.push_back(2 * static_cast<int>(rng() % 2));
    PolyMatrix p(rows, cols, nv);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) p(r, c) = random_homogeneous(rng, nv, src[static_cast<std::size_t>(c)] + 2);
    }
    Submodule k = kernel_of_poly_matrix(p, src, tgt, 2);
    for (const auto& g : k.basis()) CHECK(is_zero(apply_matrix(p, g)));
    // dim ker_d = dim src_d - dim image_{d+2}
    Submodule img = image_of_poly_matrix(p, tgt);
    HilbertSeries srcs = hilbert_series_generated(src, nv);
    for (int d = 0; d <= 8; ++d) CHECK(k.hilbert_series().dim(d) == srcs.dim(d) - img.hilbert_series().dim(d + 2));
  }
}

TEST_CASE("subquotient generators and coordinates") {
  const int nv = 2;
  Poly x = Poly::variable(nv, 0), y = Poly::variable(nv, 1);
  std::vector<int> amb{0, 0};
  // Sub = R^2, Low = <(x, 0), (0, y)>: not free
  Submodule sub = Submodule::whole(nv, amb);
  Submodule low = Submodule::generated_by(nv, amb, {{x, Poly(nv)}, {Poly(nv), y}});
  Subquotient q(sub, low);
  CHECK(q.generators().size() == 2);
  CHECK_FALSE(q.is_free());

  // Sub = <(x, y)>, Low = 0: free of rank one in degree 2
  Submodule sub2 = Submodule::generated_by(nv, amb, {{x, y}});
  Subquotient q2(sub2, Submodule(nv, amb));
  CHECK(q2.is_free());
  CHECK(q2.generator_degrees() == std::vector<int>{2});
  auto c = q2.coordinates({x * x + x * y, x * y + y * y});
  REQUIRE(c.size() == 1);
  CHECK(c[0] == x + y);
  CHECK_THROWS_AS(q2.coordinates({x, Poly(nv)}), std::logic_error);

  // Sub = <(1, 0), (0, x)>, Low = <(x, 0)>: free on (1,0) mod x and (0, x)? no, R/x is torsion
  Submodule sub3 = Submodule::generated_by(nv, amb, {{Poly(nv, Rational(1)), Poly(nv)}, {Poly(nv), x}});
  Submodule low3 = Submodule::generated_by(nv, amb, {{x, Poly(nv)}});
  Subquotient q3(sub3, low3);
  CHECK_FALSE(q3.is_free());
  auto c3 = q3.coordinates({x + P("x1*x2", nv), x * x});
  REQUIRE(c3.size() == 2);
  // the first coordinate only matters modulo x
  Poly recon0 = c3[0] * q3.generators()[0][0] + c3[1] * q3.generators()[1][0];
  CHECK(low3.contains(ModVec{x + P("x1*x2", nv) - recon0, Poly(nv)}));
}

TEST_CASE("stability under an action") {
  auto w = CoxeterSystem::build("A1");
  Poly as = w->simple_root(0);
  // R_s: the ideal (alpha_s) is stable under right multiplication by anything
  std::vector<int> amb{0};
  Submodule s = Submodule::generated_by(1, amb, {{as}});
  PolyMatrix rho(1, 1, 1);
  rho(0, 0) = -as;
  std::vector<PolyMatrix> r{rho};
  CHECK(s.is_stable(r));
}
