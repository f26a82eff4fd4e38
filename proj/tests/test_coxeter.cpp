#include <doctest.h>

#include <map>
#include <set>

#include "soergel/coxeter.hpp"

using namespace soergel;

namespace {

// x <= y iff y is reachable from x by reflections that raise the length.
std::vector<std::vector<char>> bruhat_by_reflection_chains(const CoxeterSystem& w) {
  const int n = w.size();
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (int x = 0; x < n; ++x) {
    std::vector<int> stack{x};
    le[x][x] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (Elem t : w.reflections()) {
        Elem v = w.multiply(u, t);
        if (w.length(v) > w.length(u) && !le[x][v]) {
          le[x][v] = 1;
          stack.push_back(v);
        }
      }
    }
  }
  return le;
}

bool braid_move_connected(const CoxeterSystem& w, Elem x) {
  auto words = w.reduced_words(x);
  std::set<std::vector<int>> seen{words.front()};
  std::vector<std::vector<int>> stack{words.front()};
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    for (int s = 0; s < w.rank(); ++s) {
      for (int t = 0; t < w.rank(); ++t) {
        if (s == t) continue;
        int m = w.coxeter_entry(s, t);
        for (std::size_t i = 0; i + m <= cur.size(); ++i) {
          bool match = true;
          for (int k = 0; k < m; ++k) match = match && cur[i + k] == (k % 2 == 0 ? s : t);
          if (!match) continue;
          auto next = cur;
          for (int k = 0; k < m; ++k) next[i + k] = (k % 2 == 0 ? t : s);
          if (seen.insert(next).second) stack.push_back(next);
        }
      }
    }
  }
  return seen.size() == words.size();
}

}  // namespace

TEST_CASE("group orders and reflections") {
  std::map<std::string, std::pair<int, int>> expected{
      {"A1", {2, 1}}, {"A2", {6, 3}}, {"A3", {24, 6}}, {"B2", {8, 4}}, {"B3", {48, 9}}, {"G2", {12, 6}}, {"I2:2", {4, 2}}};
  for (const auto& [name, ord] : expected) {
    auto w = CoxeterSystem::build(name);
    CHECK(w->size() == ord.first);
    CHECK(static_cast<int>(w->reflections().size()) == ord.second);
  }
  CHECK_THROWS_AS(CoxeterSystem::build("I2:5"), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterSystem::build("E9"), std::invalid_argument);
}

TEST_CASE("A1 acts by -1 on the root") {
  auto w = CoxeterSystem::build("A1");
  CHECK(w->size() == 2);
  CHECK(w->act(w->simple(0), Poly::variable(1, 0)) == Poly::variable(1, 0) * Rational(-1));
}

TEST_CASE("dual action in A2") {
  auto w = CoxeterSystem::build("A2");
  Elem s = w->simple(0), t = w->simple(1);
  Poly as = w->simple_root(0), at = w->simple_root(1);
  CHECK(w->act(s, as) == -as);
  CHECK(w->act(s, at) == at + as);
  CHECK(w->act(w->identity(), at) == at);
  std::vector<Rational> f{Rational(0), Rational(1)};
  CHECK(w->act_dual(s, f) == std::vector<Rational>{Rational(1), Rational(1)});
  // action is a left action: (xy)(f) = x(y(f))
  for (Elem x = 0; x < w->size(); ++x) {
    for (Elem y = 0; y < w->size(); ++y) {
      Poly g = as * as * at - at * at;
      CHECK(w->act(w->multiply(x, y), g) == w->act(x, w->act(y, g)));
    }
  }
  CHECK(w->is_reflection(w->multiply(w->multiply(s, t), s)));
  CHECK(w->root_of_reflection(w->multiply(w->multiply(s, t), s)) == as + at);
}

TEST_CASE("Bruhat order agrees with reflection chains") {
  for (const char* name : {"A2", "B2", "A3", "G2", "B3"}) {
    auto w = CoxeterSystem::build(name);
    auto oracle = bruhat_by_reflection_chains(*w);
    for (Elem x = 0; x < w->size(); ++x) {
      CHECK(w->bruhat_leq(0, x));
      CHECK(w->bruhat_leq(x, x));
      for (Elem y = 0; y < w->size(); ++y) CHECK(w->bruhat_leq(x, y) == static_cast<bool>(oracle[x][y]));
    }
  }
  auto a2 = CoxeterSystem::build("A2");
  Elem s = a2->parse("s1"), t = a2->parse("s2"), st = a2->parse("s1s2");
  CHECK(a2->bruhat_leq(s, st));
  CHECK_FALSE(a2->bruhat_leq(t, s));
}

TEST_CASE("enumerations refine the Bruhat order") {
  for (const char* name : {"A1", "A2", "B2", "A3"}) {
    auto w = CoxeterSystem::build(name);
    auto check = [&](const std::vector<Elem>& e) {
      REQUIRE(static_cast<int>(e.size()) == w->size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = 0; j < e.size(); ++j) {
          if (w->bruhat_leq(e[i], e[j])) CHECK(i <= j);
        }
      }
    };
    check(w->bruhat_enumeration());
    for (int s = 0; s < w->rank(); ++s) {
      auto e = w->bruhat_enumeration_cosets(s);
      check(e);
      for (std::size_t m = 0; m < e.size(); m += 2) {
        CHECK(e[m + 1] == w->multiply(e[m], w->simple(s)));
        CHECK(w->length(e[m]) < w->length(e[m + 1]));
      }
    }
  }
  auto a1 = CoxeterSystem::build("A1");
  CHECK(a1->bruhat_enumeration() == std::vector<Elem>{0, 1});
  auto a2 = CoxeterSystem::build("A2");
  std::vector<std::string> names;
  for (Elem x : a2->bruhat_enumeration_cosets(0)) names.push_back(a2->name(x));
  CHECK(names == std::vector<std::string>{"e", "s1", "s2", "s2s1", "s1s2", "s1s2s1"});
}

TEST_CASE("reduced words are connected by braid moves") {
  for (const char* name : {"A2", "B2", "G2"}) {
    auto w = CoxeterSystem::build(name);
    for (Elem x = 0; x < w->size(); ++x) {
      CHECK(w->reduced_words(x).front() == w->word(x));
      CHECK(braid_move_connected(*w, x));
    }
  }
}

TEST_CASE("positive lifts and braid words") {
  auto w = CoxeterSystem::build("A2");
  CHECK(positive_lift(*w, 0).letters.empty());
  Elem sts = w->parse("s1s2s1");
  BraidWord b = positive_lift(*w, sts);
  CHECK(b.to_string() == "s1 s2 s1");
  CHECK(b.epsilon() == 3);
  for (Elem x = 0; x < w->size(); ++x) {
    CHECK(positive_lift(*w, x).epsilon() == w->length(x));
    CHECK(braid_image(*w, positive_lift(*w, x)) == x);
    CHECK(w->parse(w->name(x)) == x);
  }
  BraidWord m = BraidWord::parse("s1 s2 s1^-1", 2);
  CHECK(m.letters == std::vector<std::pair<int, int>>{{0, 1}, {1, 1}, {0, -1}});
  CHECK(m.epsilon() == 1);
  CHECK(BraidWord::parse(m.to_string(), 2) == m);
  CHECK(m.inverse().to_string() == "s1 s2^-1 s1^-1");
  CHECK_THROWS_AS(BraidWord::parse("s3", 2), std::invalid_argument);
  CHECK_THROWS_AS(BraidWord::parse("s1 x", 2), std::invalid_argument);
  CHECK(BraidWord::parse("", 2).letters.empty());
}
