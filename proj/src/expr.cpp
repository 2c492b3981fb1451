#include "ellassoc/expr.hpp"

#include <cctype>

#include "ellassoc/errors.hpp"

namespace ellassoc {

namespace {

class Parser {
 public:
  Parser(std::string_view text, AlgebraPtr algebra, int truncation)
      : text_(text), algebra_(std::move(algebra)), truncation_(truncation) {}

  AlgebraElement parse() {
    AlgebraElement e = sum();
    skip();
    if (pos_ != text_.size()) throw ParseError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) throw ParseError(pos_, std::string("expected '") + c + "' before end of input");
      throw ParseError(pos_, std::string("expected '") + c + "'");
    }
  }

  AlgebraElement scalar(const Rational& c) const { return AlgebraElement::scalar(algebra_, truncation_, c); }

  AlgebraElement sum() {
    AlgebraElement acc = product();
    for (;;) {
      if (accept('+')) acc += product();
      else if (accept('-')) acc -= product();
      else return acc;
    }
  }

  AlgebraElement product() {
    AlgebraElement acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = multiply(acc, unary(), truncation_);
      } else if (accept('/')) {
        skip();
        const std::size_t at = pos_;
        if (at >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[at])))
          throw ParseError(at, "division needs an integer divisor");
        const mpz_class q = integer();
        if (q == 0) throw ParseError(at, "division by zero");
        acc *= Rational(1, 1) / Rational(q);
      } else {
        return acc;
      }
    }
  }

  AlgebraElement unary() {
    if (accept('-')) return -unary();
    return primary();
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') throw ParseError(pos_, "decimal literals are not supported");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  AlgebraElement primary() {
    skip();
    const std::size_t at = pos_;
    if (at >= text_.size()) throw ParseError(at, "unexpected end of input");
    const char c = text_[at];
    if (std::isdigit(static_cast<unsigned char>(c))) return scalar(Rational(integer()));
    if (accept('(')) {
      AlgebraElement e = sum();
      expect(')');
      return e;
    }
    if (accept('[')) {
      AlgebraElement a = sum();
      expect(',');
      AlgebraElement b = sum();
      expect(']');
      return commutator(a, b);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(at, pos_ - at));
      skip();
      const bool call = pos_ < text_.size() && text_[pos_] == '(';
      if (call && (name == "exp" || name == "log" || name == "inverse")) return function(name, at);
      const int g = algebra_->generator_index(name);
      if (g < 0) throw ParseError(at, "unknown symbol '" + name + "' in " + algebra_->name());
      return AlgebraElement::generator(algebra_, truncation_, name);
    }
    throw ParseError(at, "unexpected '" + std::string(1, c) + "'");
  }

  AlgebraElement function(const std::string& name, std::size_t at) {
    expect('(');
    AlgebraElement arg = sum();
    expect(')');
    if (name == "exp") {
      if (arg.constant() != 0) throw ParseError(at, "exp needs an argument of positive valuation");
      return exp(arg);
    }
    const Rational c = arg.constant();
    if (c == 0) throw ParseError(at, name + " needs an invertible constant term");
    if (name == "log") {
      if (c != 1) throw ParseError(at, "log needs constant term 1");
      return log(arg);
    }
    arg *= Rational(1) / c;
    return inverse(arg) * (Rational(1) / c);
  }

  std::string_view text_;
  AlgebraPtr algebra_;
  int truncation_;
  std::size_t pos_ = 0;
};

std::string coefficient_text(const Rational& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace

AlgebraElement parse_element(std::string_view text, AlgebraPtr algebra, int truncation) {
  if (!algebra) throw InvalidArgument("no target algebra");
  if (truncation < 0 || truncation > algebra->truncation()) throw InvalidArgument("truncation out of range");
  return Parser(text, std::move(algebra), truncation).parse();
}

std::string format_element(const AlgebraElement& a) {
  const TruncatedAlgebra& alg = a.algebra();
  std::string out;
  for (int d = 0; d <= a.truncation(); ++d)
    for (const auto& [idx, c] : a.slice(d)) {
      const bool negative = c < 0;
      const Rational mag = negative ? Rational(-c) : c;
      if (out.empty()) out += negative ? "-" : "";
      else out += negative ? " - " : " + ";
      std::string word;
      for (auto l : alg.word(d, idx)) word += (word.empty() ? "" : "*") + alg.generators()[l].name;
      if (word.empty()) out += coefficient_text(mag);
      else if (mag == 1) out += word;
      else out += coefficient_text(mag) + "*" + word;
    }
  return out.empty() ? "0" : out;
}

}  // namespace ellassoc
