#include "ellassoc/algebra.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <map>
#include <mutex>
#include <tuple>

#include "ellassoc/errors.hpp"

namespace ellassoc {

namespace {

constexpr int kLetterBits = 4;
constexpr int kMaxLetters = 15;
constexpr int kMaxTruncation = 15;

std::uint64_t encode(const Word& w) {
  std::uint64_t code = 0;
  for (auto l : w) code = (code << kLetterBits) | static_cast<std::uint64_t>(l + 1);
  return code;
}

void enumerate_words(const std::vector<Generator>& gens, int remaining, Word& prefix,
                     std::vector<Word>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (gens[g].degree > remaining) continue;
    prefix.push_back(static_cast<std::uint8_t>(g));
    enumerate_words(gens, remaining - gens[g].degree, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::uint64_t TruncatedAlgebra::concat(std::uint64_t u, std::uint64_t v) {
  if (v == 0) return u;
  const int len = (std::bit_width(v) + kLetterBits - 1) / kLetterBits;
  return (u << (kLetterBits * len)) | v;
}

TruncatedAlgebra::TruncatedAlgebra(std::string name, Presentation presentation, int truncation)
    : name_(std::move(name)), presentation_(std::move(presentation)), truncation_(truncation) {
  const auto& gens = presentation_.generators;
  if (gens.empty() || gens.size() > kMaxLetters)
    throw InvalidArgument("an algebra needs between 1 and 15 generators");
  if (truncation < 0 || truncation > kMaxTruncation)
    throw InvalidArgument("truncation must lie in [0, 15]");
  for (const auto& g : gens)
    if (g.degree < 1) throw InvalidArgument("generator degrees must be positive");

  words_.resize(truncation + 1);
  codes_.resize(truncation + 1);
  index_.resize(truncation + 1);
  for (int d = 0; d <= truncation; ++d) {
    Word prefix;
    enumerate_words(gens, d, prefix, words_[d]);
    codes_[d].reserve(words_[d].size());
    for (std::size_t i = 0; i < words_[d].size(); ++i) {
      codes_[d].push_back(encode(words_[d][i]));
      index_[d].emplace(codes_[d].back(), static_cast<int>(i));
    }
  }

  std::vector<std::vector<const FreePoly*>> relations_by_degree(truncation + 1);
  for (const auto& r : presentation_.relations) {
    if (r.empty()) continue;
    const int d = word_degree(r.begin()->first, gens);
    for (const auto& [w, c] : r)
      if (word_degree(w, gens) != d) throw InvalidArgument("relations must be homogeneous");
    if (d <= truncation) relations_by_degree[d].push_back(&r);
  }

  ideal_.reserve(truncation + 1);
  for (int d = 0; d <= truncation; ++d) {
    Echelon e(word_count(d));
    for (const FreePoly* r : relations_by_degree[d]) {
      SparseVec v;
      for (const auto& [w, c] : *r) v[word_index(w)] += c;
      e.insert(std::move(v));
    }
    // I_d = R_d + sum over generators g of (g I_{d-|g|} + I_{d-|g|} g).
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const int k = gens[g].degree;
      if (k > d) continue;
      const std::uint64_t gc = encode(Word{static_cast<std::uint8_t>(g)});
      for (const SparseVec& row : ideal_[d - k].rows()) {
        SparseVec left, right;
        for (const auto& [col, val] : row) {
          const std::uint64_t wc = codes_[d - k][col];
          left.emplace(index_[d].at(concat(gc, wc)), val);
          right.emplace(index_[d].at(concat(wc, gc)), val);
        }
        e.insert(std::move(left));
        e.insert(std::move(right));
      }
    }
    e.interreduce();
    ideal_.push_back(std::move(e));
  }
}

int TruncatedAlgebra::generator_index(std::string_view name) const {
  const auto& gens = presentation_.generators;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return static_cast<int>(i);
  if (name.size() == 3 && name[0] == 't' && name[1] > name[2]) {
    const std::string swapped{'t', name[2], name[1]};
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].name == swapped) return static_cast<int>(i);
  }
  return -1;
}

int TruncatedAlgebra::word_index(const Word& w) const {
  for (auto l : w)
    if (l >= presentation_.generators.size()) return -1;
  const int d = word_degree(w, presentation_.generators);
  if (d > truncation_) return -1;
  return word_index(d, encode(w));
}

int TruncatedAlgebra::word_index(int degree, std::uint64_t code) const {
  auto it = index_[degree].find(code);
  return it == index_[degree].end() ? -1 : it->second;
}

void TruncatedAlgebra::reduce(int degree, SparseVec& v) const {
  if (!is_free()) ideal_[degree].reduce(v);
}

AlgebraPtr build_free_assoc(const std::vector<Generator>& generators, int truncation) {
  std::string name = "free(";
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].degree != 1) throw InvalidArgument("free generators have degree 1");
    name += (i ? "," : "") + generators[i].name;
  }
  name += ")";
  return std::make_shared<TruncatedAlgebra>(name, Presentation{generators, {}}, truncation);
}

namespace {

FreePoly bracket_letters(int a, int b) {
  return FreePoly{{Word{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)}, 1},
                  {Word{static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(a)}, -1}};
}

// Index of t_ij among the pair generators that follow `offset` single letters.
int pair_index(int n, int i, int j, int offset) {
  if (i > j) std::swap(i, j);
  int idx = offset;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      if (a == i && b == j) return idx;
      ++idx;
    }
  return -1;
}

std::vector<Generator> pair_generators(int n, int degree) {
  std::vector<Generator> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      out.push_back({"t" + std::to_string(a) + std::to_string(b), degree});
  return out;
}

}  // namespace

AlgebraPtr build_t1n(int n, int truncation, MixedSign sign) {
  if (n < 1 || n > 4) throw InvalidArgument("t1n supports 1 <= n <= 4");
  Presentation p;
  for (int i = 1; i <= n; ++i) p.generators.push_back({"x" + std::to_string(i), 1});
  for (int i = 1; i <= n; ++i) p.generators.push_back({"y" + std::to_string(i), 1});
  for (auto& g : pair_generators(n, 2)) p.generators.push_back(g);
  auto x = [](int i) { return i - 1; };
  auto y = [n](int i) { return n + i - 1; };
  auto t = [n](int i, int j) { return pair_index(n, i, j, 2 * n); };
  const Rational s = sign == MixedSign::kPlus ? 1 : -1;

  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      if (i < j) {
        p.relations.push_back(bracket_letters(x(i), x(j)));
        p.relations.push_back(bracket_letters(y(i), y(j)));
      }
      FreePoly r = bracket_letters(x(i), y(j));
      add_to(r, -s, letter(t(i, j)));
      p.relations.push_back(std::move(r));
    }
    FreePoly diag = bracket_letters(x(i), y(i));
    for (int j = 1; j <= n; ++j)
      if (j != i) add_to(diag, 1, letter(t(i, j)));
    p.relations.push_back(std::move(diag));
    for (int j = 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        if (j == i || k == i) continue;
        p.relations.push_back(bracket_letters(x(i), t(j, k)));
        p.relations.push_back(bracket_letters(y(i), t(j, k)));
      }
  }
  std::string name = "t1n(" + std::to_string(n) + ")";
  if (sign == MixedSign::kIntersectionForm) name += "[intersection-form]";
  return std::make_shared<TruncatedAlgebra>(name, std::move(p), truncation);
}

AlgebraPtr build_dk(int n, int truncation) {
  if (n < 2 || n > 5) throw InvalidArgument("dk supports 2 <= n <= 5");
  Presentation p;
  p.generators = pair_generators(n, 1);
  auto t = [n](int i, int j) { return pair_index(n, i, j, 0); };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        if (i == j || j == k || i == k) continue;
        // [t_ij, t_ik + t_jk] = 0
        FreePoly r = bracket_letters(t(i, j), t(i, k));
        add_to(r, 1, bracket_letters(t(i, j), t(j, k)));
        p.relations.push_back(std::move(r));
      }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l)
          if (k != i && k != j && l != i && l != j && i < k)
            p.relations.push_back(bracket_letters(t(i, j), t(k, l)));
  return std::make_shared<TruncatedAlgebra>("dk(" + std::to_string(n) + ")", std::move(p), truncation);
}

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

AlgebraPtr cached(const std::string& kind, int n, int truncation, AlgebraPtr (*make)(int, int)) {
  static std::map<std::tuple<std::string, int, int>, AlgebraPtr> cache;
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto key = std::make_tuple(kind, n, truncation);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  AlgebraPtr a = make(n, truncation);
  cache.emplace(key, a);
  return a;
}

}  // namespace

AlgebraPtr free_ab(int truncation) {
  return cached("free", 2, truncation,
                [](int, int N) { return build_free_assoc({{"A", 1}, {"B", 1}}, N); });
}

AlgebraPtr t1n(int n, int truncation) {
  return cached("t1n", n, truncation, [](int m, int N) { return build_t1n(m, N); });
}

AlgebraPtr dk(int n, int truncation) {
  return cached("dk", n, truncation, [](int m, int N) { return build_dk(m, N); });
}

AlgebraPtr free_lift(const TruncatedAlgebra& algebra, int truncation) {
  static std::map<std::pair<std::string, int>, AlgebraPtr> cache;
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& slot = cache[{algebra.name(), truncation}];
  if (!slot)
    slot = std::make_shared<TruncatedAlgebra>("free-lift(" + algebra.name() + ")",
                                              Presentation{algebra.generators(), {}}, truncation);
  return slot;
}

AlgebraPtr algebra_by_name(std::string_view name, int truncation) {
  auto inner = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (name.size() > prefix.size() + 1 && name.substr(0, prefix.size()) == prefix &&
        name[prefix.size()] == '(' && name.back() == ')')
      return name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    return std::nullopt;
  };
  auto small_int = [&](std::string_view s) {
    if (s.size() != 1 || s[0] < '1' || s[0] > '9')
      throw InvalidArgument("bad algebra parameter in '" + std::string(name) + "'");
    return s[0] - '0';
  };
  if (auto a = inner("t1n")) return t1n(small_int(*a), truncation);
  if (auto a = inner("dk")) return dk(small_int(*a), truncation);
  if (auto a = inner("free")) {
    if (*a == "A,B") return free_ab(truncation);
    std::vector<Generator> gens;
    std::string_view rest = *a;
    while (!rest.empty()) {
      auto comma = rest.find(',');
      gens.push_back({std::string(rest.substr(0, comma)), 1});
      if (gens.back().name.empty()) throw InvalidArgument("empty generator name");
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return build_free_assoc(gens, truncation);
  }
  throw InvalidArgument("unknown algebra '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

AlgebraElement::AlgebraElement(AlgebraPtr algebra, int truncation)
    : algebra_(std::move(algebra)), truncation_(truncation) {
  if (!algebra_) throw InvalidArgument("null algebra");
  if (truncation < 0 || truncation > algebra_->truncation())
    throw InvalidArgument("element truncation exceeds the algebra truncation");
  parts_.resize(truncation + 1);
}

AlgebraElement AlgebraElement::scalar(AlgebraPtr algebra, int truncation, const Rational& c) {
  AlgebraElement e(std::move(algebra), truncation);
  if (c != 0) e.parts_[0][0] = c;
  return e;
}

AlgebraElement AlgebraElement::generator(AlgebraPtr algebra, int truncation, std::string_view name) {
  AlgebraElement e(algebra, truncation);
  const int g = algebra->generator_index(name);
  if (g < 0) throw InvalidArgument("unknown generator '" + std::string(name) + "'");
  e.add_word(Word{static_cast<std::uint8_t>(g)}, 1);
  return e;
}

AlgebraElement AlgebraElement::from_poly(AlgebraPtr algebra, int truncation, const FreePoly& p) {
  AlgebraElement e(std::move(algebra), truncation);
  std::vector<SparseVec> raw(truncation + 1);
  for (const auto& [w, c] : p) {
    const int d = word_degree(w, e.algebra().generators());
    if (d > truncation) continue;
    const int idx = e.algebra().word_index(w);
    if (idx < 0) throw InvalidArgument("word outside the algebra alphabet");
    raw[d][idx] += c;
  }
  for (int d = 0; d <= truncation; ++d) e.add_slice(d, raw[d]);
  return e;
}

void AlgebraElement::add_word(int degree, int index, const Rational& c) {
  if (degree > truncation_ || c == 0) return;
  add_slice(degree, SparseVec{{index, c}});
}

void AlgebraElement::add_word(const Word& w, const Rational& c) {
  for (auto l : w)
    if (l >= algebra_->generators().size()) throw InvalidArgument("letter outside the alphabet");
  const int d = word_degree(w, algebra_->generators());
  if (d > truncation_) return;
  add_word(d, algebra_->word_index(w), c);
}

void AlgebraElement::add_slice(int degree, const SparseVec& v, const Rational& c) {
  if (degree > truncation_ || c == 0 || v.empty()) return;
  SparseVec r;
  for (const auto& [col, val] : v)
    if (val != 0) r.emplace(col, c * val);
  algebra_->reduce(degree, r);
  axpy(parts_[degree], 1, r);
}

Rational AlgebraElement::constant() const {
  auto it = parts_[0].find(0);
  return it == parts_[0].end() ? Rational(0) : it->second;
}

int AlgebraElement::valuation() const {
  for (int d = 0; d <= truncation_; ++d)
    if (!parts_[d].empty()) return d;
  return truncation_ + 1;
}

bool AlgebraElement::is_zero() const { return valuation() > truncation_; }

std::vector<int> AlgebraElement::nonzero_counts() const {
  std::vector<int> out;
  for (const auto& p : parts_) out.push_back(static_cast<int>(p.size()));
  return out;
}

AlgebraElement AlgebraElement::truncated(int truncation) const {
  AlgebraElement e(algebra_, std::min(truncation, truncation_));
  for (int d = 0; d <= e.truncation_; ++d) e.parts_[d] = parts_[d];
  return e;
}

void AlgebraElement::check_compatible(const AlgebraElement& o) const {
  if (algebra_ != o.algebra_ && algebra_->name() != o.algebra_->name())
    throw InvalidArgument("elements of different algebras: " + algebra_->name() + " vs " +
                          o.algebra_->name());
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  check_compatible(o);
  if (o.truncation_ < truncation_) *this = truncated(o.truncation_);
  for (int d = 0; d <= truncation_; ++d) axpy(parts_[d], 1, o.parts_[d]);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  check_compatible(o);
  if (o.truncation_ < truncation_) *this = truncated(o.truncation_);
  for (int d = 0; d <= truncation_; ++d) axpy(parts_[d], -1, o.parts_[d]);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Rational& c) {
  for (auto& p : parts_) {
    if (c == 0) {
      p.clear();
      continue;
    }
    for (auto& [col, val] : p) val *= c;
  }
  return *this;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  return algebra_->name() == o.algebra_->name() && truncation_ == o.truncation_ && parts_ == o.parts_;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
AlgebraElement operator-(AlgebraElement a) { return a *= Rational(-1); }
AlgebraElement operator*(AlgebraElement a, const Rational& c) { return a *= c; }
AlgebraElement operator*(const Rational& c, AlgebraElement a) { return a *= c; }

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, int truncation) {
  if (a.algebra().name() != b.algebra().name())
    throw InvalidArgument("elements of different algebras");
  const int N = std::min({truncation, a.truncation(), b.truncation()});
  const TruncatedAlgebra& alg = a.algebra();
  std::vector<std::unordered_map<int, Rational>> acc(N + 1);
  for (int i = 0; i <= N; ++i) {
    if (a.slice(i).empty()) continue;
    for (int j = 0; i + j <= N; ++j) {
      if (b.slice(j).empty()) continue;
      auto& target = acc[i + j];
      for (const auto& [u, x] : a.slice(i)) {
        const std::uint64_t uc = alg.word_code(i, u);
        for (const auto& [v, y] : b.slice(j)) {
          const int idx = alg.word_index(i + j, TruncatedAlgebra::concat(uc, alg.word_code(j, v)));
          target[idx] += x * y;
        }
      }
    }
  }
  AlgebraElement out(a.algebra_ptr(), N);
  for (int d = 0; d <= N; ++d) {
    SparseVec v;
    for (auto& [idx, c] : acc[d])
      if (c != 0) v.emplace(idx, std::move(c));
    out.add_slice(d, v);
  }
  return out;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  return multiply(a, b, std::min(a.truncation(), b.truncation()));
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) { return a * b - b * a; }

AlgebraElement exp(const AlgebraElement& a) {
  if (a.constant() != 0) throw InvalidArgument("exp needs a zero constant term");
  const int N = a.truncation();
  AlgebraElement result = AlgebraElement::scalar(a.algebra_ptr(), N, 1);
  AlgebraElement power = result;
  const int val = a.valuation();
  for (int k = 1; k * val <= N; ++k) {
    power = power * a;
    power *= Rational(1, k);
    result += power;
  }
  return result;
}

AlgebraElement log(const AlgebraElement& g) {
  if (g.constant() != 1) throw InvalidArgument("log needs constant term 1");
  const int N = g.truncation();
  AlgebraElement x = g - AlgebraElement::scalar(g.algebra_ptr(), N, 1);
  AlgebraElement result(g.algebra_ptr(), N);
  AlgebraElement power = AlgebraElement::scalar(g.algebra_ptr(), N, 1);
  const int val = x.valuation();
  for (int k = 1; k * val <= N; ++k) {
    power = power * x;
    result += power * Rational(k % 2 ? 1 : -1, k);
  }
  return result;
}

AlgebraElement inverse(const AlgebraElement& g) {
  if (g.constant() != 1) throw InvalidArgument("inverse needs constant term 1");
  const int N = g.truncation();
  const AlgebraElement one = AlgebraElement::scalar(g.algebra_ptr(), N, 1);
  const AlgebraElement x = one - g;
  AlgebraElement result = one;
  AlgebraElement power = one;
  const int val = x.valuation();
  for (int k = 1; k * val <= N; ++k) {
    power = power * x;
    result += power;
  }
  return result;
}

AlgebraElement substitute(const AlgebraElement& series, const std::vector<AlgebraElement>& images,
                          int truncation) {
  const TruncatedAlgebra& src = series.algebra();
  if (!src.is_free()) throw InvalidArgument("substitution needs a free source algebra");
  if (images.size() != src.generators().size())
    throw InvalidArgument("one image per source generator is required");
  if (images.empty()) throw InvalidArgument("no images");
  int N = truncation;
  int min_val = N + 1;
  for (const auto& im : images) {
    if (im.algebra().name() != images[0].algebra().name())
      throw InvalidArgument("images live in different algebras");
    if (im.constant() != 0) throw InvalidArgument("images need positive valuation");
    N = std::min(N, im.truncation());
    min_val = std::min(min_val, im.valuation());
  }
  // A source word of degree k lands in degree >= k * min_val.
  if (min_val <= N && (series.truncation() + 1) * min_val <= N)
    throw InvalidArgument("source series is truncated below the requested target degree");

  AlgebraElement result(images[0].algebra_ptr(), N);
  std::map<Word, AlgebraElement> prefix_products;
  prefix_products.emplace(Word{}, AlgebraElement::scalar(images[0].algebra_ptr(), N, 1));
  // Words are visited in lexicographic order, so every proper prefix is cached first.
  std::map<Word, Rational> terms;
  for (int d = 0; d <= series.truncation(); ++d)
    for (const auto& [idx, c] : series.slice(d)) terms.emplace(src.word(d, idx), c);
  for (const auto& [w, c] : terms) {
    if (static_cast<long>(w.size()) * min_val > N) continue;
    Word prefix;
    const AlgebraElement* current = &prefix_products.at(prefix);
    for (auto l : w) {
      prefix.push_back(l);
      auto it = prefix_products.find(prefix);
      if (it == prefix_products.end())
        it = prefix_products.emplace(prefix, multiply(*current, images[l], N)).first;
      current = &it->second;
    }
    result += *current * c;
  }
  return result;
}

bool uses_only(const AlgebraElement& a, const std::vector<int>& letters) {
  for (int d = 0; d <= a.truncation(); ++d)
    for (const auto& [idx, c] : a.slice(d))
      for (auto l : a.algebra().word(d, idx))
        if (std::find(letters.begin(), letters.end(), l) == letters.end()) return false;
  return true;
}

}  // namespace ellassoc
