#include "ellassoc/words.hpp"

namespace ellassoc {

int word_degree(const Word& w, const std::vector<Generator>& alphabet) {
  int d = 0;
  for (auto l : w) d += alphabet[l].degree;
  return d;
}

void add_to(FreePoly& p, const Rational& a, const FreePoly& q) {
  if (a == 0) return;
  for (const auto& [w, c] : q) {
    auto [it, inserted] = p.try_emplace(w, 0);
    it->second += a * c;
    if (it->second == 0) p.erase(it);
  }
}

FreePoly scaled(const FreePoly& p, const Rational& a) {
  FreePoly out;
  add_to(out, a, p);
  return out;
}

FreePoly multiply(const FreePoly& p, const FreePoly& q, const std::vector<Generator>& alphabet,
                  int max_degree) {
  FreePoly out;
  for (const auto& [u, a] : p) {
    const int du = word_degree(u, alphabet);
    for (const auto& [v, b] : q) {
      if (du + word_degree(v, alphabet) > max_degree) continue;
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      auto [it, inserted] = out.try_emplace(std::move(uv), 0);
      it->second += a * b;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

FreePoly commutator(const FreePoly& p, const FreePoly& q, const std::vector<Generator>& alphabet,
                    int max_degree) {
  FreePoly out = multiply(p, q, alphabet, max_degree);
  add_to(out, -1, multiply(q, p, alphabet, max_degree));
  return out;
}

FreePoly letter(int index) { return FreePoly{{Word{static_cast<std::uint8_t>(index)}, 1}}; }

}  // namespace ellassoc
