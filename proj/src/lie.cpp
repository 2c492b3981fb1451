#include "ellassoc/lie.hpp"

#include <mutex>

#include "ellassoc/errors.hpp"

namespace ellassoc {

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + static_cast<long>(i), w.end()))
      return false;
  return true;
}

namespace {

void words_of_degree(const std::vector<Generator>& alphabet, int remaining, Word& prefix,
                     std::vector<Word>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t g = 0; g < alphabet.size(); ++g) {
    if (alphabet[g].degree > remaining) continue;
    prefix.push_back(static_cast<std::uint8_t>(g));
    words_of_degree(alphabet, remaining - alphabet[g].degree, prefix, out);
    prefix.pop_back();
  }
}

constexpr int kUnbounded = 1 << 20;

}  // namespace

std::vector<Word> lyndon_basis(const std::vector<Generator>& alphabet, int degree) {
  std::vector<Word> all, out;
  Word prefix;
  if (degree > 0) words_of_degree(alphabet, degree, prefix, all);
  for (auto& w : all)
    if (is_lyndon(w)) out.push_back(std::move(w));
  return out;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word v(w.begin() + static_cast<long>(i), w.end());
    if (is_lyndon(v)) return {Word(w.begin(), w.begin() + static_cast<long>(i)), v};
  }
  throw InvalidArgument("standard factorization needs a Lyndon word of length >= 2");
}

const FreePoly& lyndon_expansion(const Word& w, const std::vector<Generator>& alphabet) {
  static std::mutex m;
  static std::map<Word, FreePoly> cache;
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
  }
  if (!is_lyndon(w)) throw InvalidArgument("not a Lyndon word");
  FreePoly p;
  if (w.size() == 1) {
    p = letter(w[0]);
  } else {
    auto [u, v] = standard_factorization(w);
    const FreePoly& pu = lyndon_expansion(u, alphabet);
    const FreePoly& pv = lyndon_expansion(v, alphabet);
    p = commutator(pu, pv, alphabet, kUnbounded);
  }
  std::lock_guard<std::mutex> lock(m);
  return cache.emplace(w, std::move(p)).first->second;
}

LieSeries::LieSeries(std::vector<Generator> alphabet, int truncation)
    : alphabet_(std::move(alphabet)), truncation_(truncation) {
  if (truncation < 0) throw InvalidArgument("negative truncation");
  if (alphabet_.empty()) throw InvalidArgument("empty alphabet");
  parts_.resize(truncation + 1);
}

LieSeries LieSeries::generator(std::vector<Generator> alphabet, int truncation, int index) {
  LieSeries s(std::move(alphabet), truncation);
  if (index < 0 || index >= static_cast<int>(s.alphabet_.size()))
    throw InvalidArgument("generator index out of range");
  s.add_term(Word{static_cast<std::uint8_t>(index)}, 1);
  return s;
}

void LieSeries::add_term(const Word& lyndon, const Rational& c) {
  if (!is_lyndon(lyndon)) throw InvalidArgument("term is not a Lyndon word");
  for (auto l : lyndon)
    if (l >= alphabet_.size()) throw InvalidArgument("letter outside the alphabet");
  const int d = word_degree(lyndon, alphabet_);
  if (d > truncation_ || c == 0) return;
  auto [it, inserted] = parts_[d].try_emplace(lyndon, 0);
  it->second += c;
  if (it->second == 0) parts_[d].erase(it);
}

Rational LieSeries::coefficient(const Word& lyndon) const {
  const int d = word_degree(lyndon, alphabet_);
  if (d > truncation_) return 0;
  auto it = parts_[d].find(lyndon);
  return it == parts_[d].end() ? Rational(0) : it->second;
}

LieSeries LieSeries::from_poly(std::vector<Generator> alphabet, int truncation, const FreePoly& p) {
  LieSeries s(std::move(alphabet), truncation);
  std::vector<FreePoly> by_degree(truncation + 1);
  for (const auto& [w, c] : p) {
    const int d = word_degree(w, s.alphabet_);
    if (d <= truncation) by_degree[d].emplace(w, c);
  }
  if (!by_degree[0].empty()) throw InvalidArgument("constant term in a Lie element");
  for (int d = 1; d <= truncation; ++d) {
    FreePoly& rest = by_degree[d];
    // P_w = w + larger words, so the smallest surviving word carries a Lyndon coordinate.
    while (!rest.empty()) {
      const Word w = rest.begin()->first;
      const Rational c = rest.begin()->second;
      if (!is_lyndon(w)) throw InvalidArgument("polynomial is not a Lie element");
      s.parts_[d].emplace(w, c);
      add_to(rest, -c, lyndon_expansion(w, s.alphabet_));
    }
  }
  return s;
}

FreePoly LieSeries::to_poly() const {
  FreePoly p;
  for (const auto& part : parts_)
    for (const auto& [w, c] : part) add_to(p, c, lyndon_expansion(w, alphabet_));
  return p;
}

bool LieSeries::is_zero() const { return valuation() > truncation_; }

int LieSeries::valuation() const {
  for (int d = 0; d <= truncation_; ++d)
    if (!parts_[d].empty()) return d;
  return truncation_ + 1;
}

LieSeries LieSeries::truncated(int truncation) const {
  LieSeries s(alphabet_, std::min(truncation, truncation_));
  for (int d = 0; d <= s.truncation_; ++d) s.parts_[d] = parts_[d];
  return s;
}

namespace {

void check_same_alphabet(const LieSeries& a, const LieSeries& b) {
  if (a.alphabet() != b.alphabet()) throw InvalidArgument("Lie series over different alphabets");
}

void accumulate(std::map<Word, Rational>& into, const std::map<Word, Rational>& from, const Rational& a) {
  for (const auto& [w, c] : from) {
    auto [it, inserted] = into.try_emplace(w, 0);
    it->second += a * c;
    if (it->second == 0) into.erase(it);
  }
}

}  // namespace

LieSeries& LieSeries::operator+=(const LieSeries& o) {
  check_same_alphabet(*this, o);
  if (o.truncation_ < truncation_) *this = truncated(o.truncation_);
  for (int d = 0; d <= truncation_; ++d) accumulate(parts_[d], o.parts_[d], 1);
  return *this;
}

LieSeries& LieSeries::operator-=(const LieSeries& o) {
  check_same_alphabet(*this, o);
  if (o.truncation_ < truncation_) *this = truncated(o.truncation_);
  for (int d = 0; d <= truncation_; ++d) accumulate(parts_[d], o.parts_[d], -1);
  return *this;
}

LieSeries& LieSeries::operator*=(const Rational& c) {
  for (auto& part : parts_) {
    if (c == 0) {
      part.clear();
      continue;
    }
    for (auto& [w, v] : part) v *= c;
  }
  return *this;
}

bool LieSeries::operator==(const LieSeries& o) const {
  return alphabet_ == o.alphabet_ && truncation_ == o.truncation_ && parts_ == o.parts_;
}

LieSeries operator+(LieSeries a, const LieSeries& b) { return a += b; }
LieSeries operator-(LieSeries a, const LieSeries& b) { return a -= b; }
LieSeries operator*(const Rational& c, LieSeries a) { return a *= c; }

LieSeries bracket(const LieSeries& a, const LieSeries& b) {
  check_same_alphabet(a, b);
  const int N = std::min(a.truncation(), b.truncation());
  return LieSeries::from_poly(a.alphabet(), N, commutator(a.to_poly(), b.to_poly(), a.alphabet(), N));
}

LieSeries ad_series(const LieSeries& b, const LieSeries& a, const std::vector<Rational>& coeffs) {
  check_same_alphabet(a, b);
  const int N = std::min(a.truncation(), b.truncation());
  const FreePoly pb = b.to_poly();
  FreePoly term = a.to_poly();
  FreePoly sum;
  for (std::size_t i = 0; i < coeffs.size() && !term.empty(); ++i) {
    add_to(sum, coeffs[i], term);
    term = commutator(pb, term, a.alphabet(), N);
  }
  return LieSeries::from_poly(a.alphabet(), N, sum);
}

namespace {

// Letter sequences over {a, b} (false = a) with their Dynkin coefficients.
void dynkin_terms(int max_letters, int blocks, std::vector<bool>& letters, const Rational& denom,
                  std::map<std::vector<bool>, Rational>& out) {
  if (blocks > 0) {
    const int m = static_cast<int>(letters.size());
    const Rational sign = blocks % 2 ? 1 : -1;
    auto [it, inserted] = out.try_emplace(letters, 0);
    it->second += sign / (Rational(blocks) * m * denom);
  }
  const int room = max_letters - static_cast<int>(letters.size());
  for (int r = 0; r <= room; ++r)
    for (int s = 0; r + s <= room; ++s) {
      if (r + s == 0) continue;
      letters.insert(letters.end(), r, false);
      letters.insert(letters.end(), s, true);
      dynkin_terms(max_letters, blocks + 1, letters, denom * factorial(r) * factorial(s), out);
      letters.resize(letters.size() - static_cast<std::size_t>(r + s));
    }
}

}  // namespace

LieSeries bch(const LieSeries& a, const LieSeries& b) {
  check_same_alphabet(a, b);
  const int N = std::min(a.truncation(), b.truncation());
  const int val = std::min(a.valuation(), b.valuation());
  if (val == 0) throw InvalidArgument("bch needs positive valuation");
  LieSeries result(a.alphabet(), N);
  if (val > N) return result;
  const int max_letters = N / val;

  std::map<std::vector<bool>, Rational> terms;
  std::vector<bool> letters;
  dynkin_terms(max_letters, 0, letters, Rational(1), terms);

  const FreePoly pa = a.truncated(N).to_poly();
  const FreePoly pb = b.truncated(N).to_poly();
  // Right-nested brackets [z1,[z2,...,zm]] memoized by suffix.
  std::map<std::vector<bool>, FreePoly> nested;
  auto nested_of = [&](const std::vector<bool>& seq, auto& self) -> const FreePoly& {
    auto it = nested.find(seq);
    if (it != nested.end()) return it->second;
    FreePoly value;
    const FreePoly& head = seq.front() ? pb : pa;
    if (seq.size() == 1) {
      value = head;
    } else {
      std::vector<bool> tail(seq.begin() + 1, seq.end());
      value = commutator(head, self(tail, self), a.alphabet(), N);
    }
    return nested.emplace(seq, std::move(value)).first->second;
  };
  FreePoly sum;
  for (const auto& [seq, c] : terms)
    if (c != 0) add_to(sum, c, nested_of(seq, nested_of));
  return LieSeries::from_poly(a.alphabet(), N, sum);
}

Rational bernoulli(int n) {
  if (n < 0) throw InvalidArgument("negative Bernoulli index");
  static std::mutex m;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard<std::mutex> lock(m);
  while (static_cast<int>(cache.size()) <= n) {
    const int k = static_cast<int>(cache.size());
    Rational s = 0;
    for (int j = 0; j < k; ++j) s += binomial(k + 1, j) * cache[j];
    cache.push_back(-s / (k + 1));
  }
  return cache[n];
}

}  // namespace ellassoc
