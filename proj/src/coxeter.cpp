#include "soergel/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "soergel/linalg.hpp"

namespace soergel {

namespace {

struct TypeData {
  int rank;
  std::vector<long long> cartan;
  long long order;
};

TypeData type_data(std::string_view t) {
  if (t == "A1") return {1, {2}, 2};
  if (t == "A2") return {2, {2, -1, -1, 2}, 6};
  if (t == "A3") return {3, {2, -1, 0, -1, 2, -1, 0, -1, 2}, 24};
  if (t == "B2") return {2, {2, -2, -1, 2}, 8};
  if (t == "B3") return {3, {2, -1, 0, -1, 2, -2, 0, -1, 2}, 48};
  if (t == "G2") return {2, {2, -3, -1, 2}, 12};
  if (t.substr(0, 3) == "I2:") {
    int m = 0;
    try {
      m = std::stoi(std::string(t.substr(3)));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad dihedral type: " + std::string(t));
    }
    switch (m) {
      case 2: return {2, {2, 0, 0, 2}, 4};
      case 3: return type_data("A2");
      case 4: return type_data("B2");
      case 6: return type_data("G2");
      default:
        throw std::invalid_argument("I2:" + std::to_string(m) +
                                    " needs an extension field; only m in {2,3,4,6} is supported");
    }
  }
  throw std::invalid_argument("unknown Cartan type: " + std::string(t));
}

using Mat = std::vector<long long>;

Mat mat_mul(const Mat& a, const Mat& b, int n) {
  Mat c(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      long long x = a[static_cast<std::size_t>(i * n + k)];
      if (x == 0) continue;
      for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(i * n + j)] += x * b[static_cast<std::size_t>(k * n + j)];
    }
  }
  return c;
}

int rank_minus_identity(const Mat& m, int n) {
  SparseMatrix a{n, {}};
  for (int i = 0; i < n; ++i) {
    SparseVec row;
    for (int j = 0; j < n; ++j) {
      long long v = m[static_cast<std::size_t>(i * n + j)] - (i == j ? 1 : 0);
      if (v != 0) row.emplace_back(j, Rational(static_cast<long>(v)));
    }
    a.rows.push_back(std::move(row));
  }
  return rank(a);
}

}  // namespace

std::shared_ptr<const CoxeterSystem> CoxeterSystem::build(std::string_view cartan_type) {
  TypeData td = type_data(cartan_type);
  auto sys = std::shared_ptr<CoxeterSystem>(new CoxeterSystem());
  sys->type_ = std::string(cartan_type);
  sys->rank_ = td.rank;
  sys->cartan_ = td.cartan;
  const int n = td.rank;
  sys->coxeter_.assign(static_cast<std::size_t>(n * n), 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      long long p = td.cartan[static_cast<std::size_t>(i * n + j)] * td.cartan[static_cast<std::size_t>(j * n + i)];
      static const int kOrder[] = {2, 3, 4, 6};
      if (p < 0 || p > 3) throw std::logic_error("non-crystallographic Cartan entry");
      sys->coxeter_[static_cast<std::size_t>(i * n + j)] = kOrder[p];
    }
  }
  sys->enumerate();
  if (sys->size() != td.order) throw std::logic_error("group order mismatch for " + sys->type_);
  sys->compute_bruhat();
  sys->verify();
  return sys;
}

void CoxeterSystem::enumerate() {
  const int n = rank_;
  std::vector<Mat> gens;
  for (int i = 0; i < n; ++i) {
    // Column j is s_i(alpha_j) = alpha_j - A_ij alpha_i.
    Mat g(static_cast<std::size_t>(n * n), 0);
    for (int j = 0; j < n; ++j) {
      g[static_cast<std::size_t>(j * n + j)] = 1;
      g[static_cast<std::size_t>(i * n + j)] -= cartan_[static_cast<std::size_t>(i * n + j)];
    }
    gens.push_back(std::move(g));
  }
  std::map<Mat, Elem> index;
  Mat id(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i * n + i)] = 1;
  mats_.push_back(id);
  words_.emplace_back();
  index.emplace(id, 0);
  std::vector<std::vector<Elem>> right;  // right[w][s] = ws
  for (std::size_t w = 0; w < mats_.size(); ++w) {
    right.emplace_back(static_cast<std::size_t>(n), -1);
    for (int s = 0; s < n; ++s) {
      Mat m = mat_mul(mats_[w], gens[static_cast<std::size_t>(s)], n);
      auto it = index.find(m);
      if (it == index.end()) {
        Elem v = static_cast<Elem>(mats_.size());
        index.emplace(m, v);
        mats_.push_back(std::move(m));
        auto word = words_[w];
        word.push_back(s);
        words_.push_back(std::move(word));
        right[w][static_cast<std::size_t>(s)] = v;
      } else {
        right[w][static_cast<std::size_t>(s)] = it->second;
      }
      if (mats_.size() > 100000) throw std::logic_error("group appears infinite");
    }
  }
  const std::size_t size = mats_.size();
  for (int s = 0; s < n; ++s) simple_.push_back(right[0][static_cast<std::size_t>(s)]);
  mult_.assign(size * size, -1);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      Elem v = static_cast<Elem>(x);
      for (int s : words_[y]) v = right[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)];
      mult_[x * size + y] = v;
    }
  }
  inv_.assign(size, -1);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      if (mult_[x * size + y] == 0) inv_[x] = static_cast<Elem>(y);
    }
  }
  reflection_.assign(size, 0);
  for (std::size_t w = 0; w < size; ++w) {
    for (int s = 0; s < n; ++s) {
      Elem t = multiply(multiply(static_cast<Elem>(w), simple(s)), inverse(static_cast<Elem>(w)));
      if (!reflection_[static_cast<std::size_t>(t)]) {
        reflection_[static_cast<std::size_t>(t)] = 1;
      }
    }
  }
  for (std::size_t w = 0; w < size; ++w) {
    if (reflection_[w]) reflections_.push_back(static_cast<Elem>(w));
  }
  images_.resize(size);
  for (std::size_t w = 0; w < size; ++w) {
    for (int j = 0; j < n; ++j) {
      Poly img(n);
      for (int i = 0; i < n; ++i) {
        long long c = mats_[w][static_cast<std::size_t>(i * n + j)];
        if (c != 0) img += Poly::variable(n, i) * Rational(static_cast<long>(c));
      }
      images_[w].push_back(std::move(img));
    }
  }
}

void CoxeterSystem::compute_bruhat() {
  const std::size_t size = words_.size();
  bruhat_.assign(size * size, 0);
  for (std::size_t y = 0; y < size; ++y) {
    const auto& w = words_[y];
    const std::size_t len = w.size();
    // Every subword of a reduced word for y multiplies to an element <= y,
    // and every x <= y arises this way.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
      Elem v = 0;
      for (std::size_t k = 0; k < len; ++k) {
        if (mask >> k & 1) v = multiply(v, simple(w[k]));
      }
      bruhat_[static_cast<std::size_t>(v) * size + y] = 1;
    }
  }
}

Elem CoxeterSystem::from_word(const std::vector<int>& word) const {
  Elem v = 0;
  for (int s : word) {
    if (s < 0 || s >= rank_) throw std::invalid_argument("generator out of range");
    v = multiply(v, simple(s));
  }
  return v;
}

std::vector<Rational> CoxeterSystem::act_dual(Elem x, const std::vector<Rational>& form) const {
  const int n = rank_;
  if (static_cast<int>(form.size()) != n) throw std::invalid_argument("linear form has wrong dimension");
  std::vector<Rational> out(static_cast<std::size_t>(n));
  const Mat& m = matrix(x);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i)] += Rational(static_cast<long>(m[static_cast<std::size_t>(i * n + j)])) * form[static_cast<std::size_t>(j)];
  }
  return out;
}

Poly CoxeterSystem::act(Elem x, const Poly& f) const {
  if (x == 0) return f;
  return f.substitute(images_[static_cast<std::size_t>(x)]);
}

Poly CoxeterSystem::root_of_reflection(Elem t) const {
  if (!is_reflection(t)) throw std::invalid_argument("not a reflection");
  const int n = rank_;
  const Mat& m = matrix(t);
  for (int j = 0; j < n; ++j) {
    std::vector<long long> col(static_cast<std::size_t>(n));
    bool nonzero = false;
    for (int i = 0; i < n; ++i) {
      col[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i * n + j)] - (i == j ? 1 : 0);
      nonzero = nonzero || col[static_cast<std::size_t>(i)] != 0;
    }
    if (!nonzero) continue;
    long long g = 0;
    for (long long c : col) g = std::gcd(g, c);
    for (long long c : col) {
      if (c != 0) {
        if (c < 0) g = -g;
        break;
      }
    }
    Poly root(n);
    for (int i = 0; i < n; ++i) {
      if (col[static_cast<std::size_t>(i)] != 0) root += Poly::variable(n, i) * Rational(static_cast<long>(col[static_cast<std::size_t>(i)] / g));
    }
    return root;
  }
  throw std::logic_error("reflection acts trivially");
}

std::vector<Elem> CoxeterSystem::bruhat_covers_up(Elem x) const {
  std::vector<Elem> out;
  for (Elem y = 0; y < size(); ++y) {
    if (length(y) == length(x) + 1 && bruhat_leq(x, y)) out.push_back(y);
  }
  return out;
}

std::vector<Elem> CoxeterSystem::bruhat_enumeration() const {
  std::vector<Elem> out(static_cast<std::size_t>(size()));
  std::iota(out.begin(), out.end(), 0);
  std::stable_sort(out.begin(), out.end(), [&](Elem a, Elem b) { return length(a) < length(b); });
  return out;
}

std::vector<Elem> CoxeterSystem::bruhat_enumeration_cosets(int s) const {
  std::vector<Elem> out;
  for (Elem w : bruhat_enumeration()) {
    Elem ws = multiply(w, simple(s));
    if (length(ws) < length(w)) continue;
    out.push_back(w);
    out.push_back(ws);
  }
  return out;
}

std::vector<std::vector<int>> CoxeterSystem::reduced_words(Elem x) const {
  if (x == 0) return {{}};
  std::vector<std::vector<int>> out;
  for (int s = 0; s < rank_; ++s) {
    if (!right_descent(x, s)) continue;
    for (auto w : reduced_words(multiply(x, simple(s)))) {
      w.push_back(s);
      out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string CoxeterSystem::name(Elem x) const {
  const auto& w = word(x);
  if (w.empty()) return "e";
  std::string out;
  for (int s : w) out += "s" + std::to_string(s + 1);
  return out;
}

Elem CoxeterSystem::parse(std::string_view text) const {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '.' && c != '*') t += c;
  }
  if (t.empty() || t == "e" || t == "id" || t == "1") return 0;
  std::vector<int> word;
  std::size_t i = 0;
  while (i < t.size()) {
    if (t[i] != 's') throw std::invalid_argument("malformed element word: " + std::string(text));
    ++i;
    std::size_t j = i;
    while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
    if (j == i) throw std::invalid_argument("malformed element word: " + std::string(text));
    int g = std::stoi(t.substr(i, j - i));
    if (g < 1 || g > rank_) throw std::invalid_argument("generator out of range in: " + std::string(text));
    word.push_back(g - 1);
    i = j;
  }
  return from_word(word);
}

void CoxeterSystem::verify() const {
  const int n = rank_;
  for (int s = 0; s < n; ++s) {
    if (multiply(simple(s), simple(s)) != 0) throw std::logic_error("generator is not an involution");
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      Elem st = multiply(simple(s), simple(t));
      Elem p = 0;
      int m = coxeter_entry(s, t);
      for (int k = 0; k < m; ++k) p = multiply(p, st);
      if (p != 0) throw std::logic_error("braid relation fails");
      Elem q = 0;
      for (int k = 1; k < m; ++k) {
        q = multiply(q, st);
        if (q == 0) throw std::logic_error("braid relation order too small");
      }
    }
  }
  // Reflection faithfulness: x fixes a hyperplane iff x is a reflection.
  for (Elem x = 0; x < size(); ++x) {
    bool fixes_hyperplane = rank_minus_identity(matrix(x), n) == 1;
    if (fixes_hyperplane != is_reflection(x)) throw std::logic_error("representation is not reflection faithful");
  }
  for (Elem x = 0; x < size(); ++x) {
    if (multiply(x, inverse(x)) != 0) throw std::logic_error("inverse table broken");
  }
}

int BraidWord::epsilon() const {
  int e = 0;
  for (const auto& [g, x] : letters) e += x;
  return e;
}

std::string BraidWord::to_string() const {
  std::string out;
  for (const auto& [g, x] : letters) {
    if (!out.empty()) out += ' ';
    out += "s" + std::to_string(g + 1);
    if (x < 0) out += "^-1";
  }
  return out;
}

BraidWord BraidWord::parse(std::string_view text, int rank) {
  BraidWord w;
  std::size_t i = 0;
  auto fail = [&] { throw std::invalid_argument("malformed braid word: " + std::string(text)); };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '.' || c == '*') {
      ++i;
      continue;
    }
    if (c != 's') fail();
    ++i;
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) fail();
    int g = std::stoi(std::string(text.substr(i, j - i)));
    if (g < 1 || g > rank) throw std::invalid_argument("generator out of range in: " + std::string(text));
    i = j;
    int exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      if (text.substr(i, 2) == "-1") {
        exp = -1;
        i += 2;
      } else if (text.substr(i, 1) == "1") {
        i += 1;
      } else if (text.substr(i, 2) == "+1") {
        i += 2;
      } else {
        fail();
      }
    }
    w.letters.emplace_back(g - 1, exp);
  }
  return w;
}

BraidWord BraidWord::inverse() const {
  BraidWord w;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.emplace_back(it->first, -it->second);
  return w;
}

BraidWord positive_lift(const CoxeterSystem& sys, Elem w) {
  BraidWord b;
  for (int s : sys.word(w)) b.letters.emplace_back(s, 1);
  return b;
}

Elem braid_image(const CoxeterSystem& sys, const BraidWord& word) {
  Elem v = 0;
  for (const auto& [g, x] : word.letters) v = sys.multiply(v, sys.simple(g));
  return v;
}

}  // namespace soergel
