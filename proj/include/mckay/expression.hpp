#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "mckay/cyclotomic.hpp"
#include "mckay/error.hpp"

namespace mckay {

namespace detail {

/// Recursive-descent parser for
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' int)?
///   base   := rational | 'E(' posint ')' | '(' expr ')' | identifier
///
/// Rationals are `p` or `p/q` with an optional sign. A sign in front of any
/// other base is accepted as unary minus/plus and binds looser than '^'.
/// `Traits` supplies the value type and the leaf constructors.
template <class Traits>
class ExpressionParser {
 public:
  using Value = typename Traits::Value;

  ExpressionParser(std::string_view text, const Traits& traits) : text_(text), traits_(traits) {}

  Value parse() {
    Value v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  Value expr() {
    Value acc = term();
    for (;;) {
      skip_ws();
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = factor();
    for (;;) {
      skip_ws();
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (peek('/')) {
        const std::size_t at = pos_++;
        Value rhs = factor();
        acc = traits_.divide(acc, rhs, at);
      } else {
        return acc;
      }
    }
  }

  Value factor() {
    skip_ws();
    if ((peek('-') || peek('+')) && !sign_starts_number()) {
      const bool negate = peek('-');
      ++pos_;
      Value v = factor();
      return negate ? traits_.negate(v) : v;
    }
    Value b = base();
    skip_ws();
    if (peek('^')) {
      const std::size_t at = pos_++;
      skip_ws();
      const long e = integer(true);
      return traits_.power(b, e, at);
    }
    return b;
  }

  Value base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      skip_ws();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') return rational();
    if (c == 'E' && pos_ + 1 < text_.size() && next_nonspace(pos_ + 1) == '(') {
      const std::size_t at = pos_;
      ++pos_;
      skip_ws();
      expect('(');
      skip_ws();
      const std::size_t num_at = pos_;
      const long n = integer(false);
      if (n <= 0) throw ParseError("E(n) requires a positive integer", num_at);
      skip_ws();
      expect(')');
      (void)at;
      return traits_.root_of_unity(n);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t at = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return traits_.identifier(text_.substr(at, pos_ - at), at);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Value rational() {
    const std::size_t at = pos_;
    bool negative = false;
    if (peek('-') || peek('+')) {
      negative = peek('-');
      ++pos_;
    }
    Integer num(digits(), 10);
    Integer den(1);
    if (peek('/') && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      den = Integer(digits(), 10);
      if (den == 0) throw ParseError("division by zero", at);
    }
    Rational q(num, den);
    q.canonicalize();
    if (negative) q = -q;
    return traits_.constant(q);
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  long integer(bool allow_sign) {
    bool negative = false;
    if (allow_sign && (peek('-') || peek('+'))) {
      negative = peek('-');
      ++pos_;
    }
    const std::size_t at = pos_;
    const std::string d = digits();
    if (d.size() > 15) throw ParseError("integer too large", at);
    const long v = std::stol(d);
    return negative ? -v : v;
  }

  bool sign_starts_number() const {
    return pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
  }

  char next_nonspace(std::size_t from) const {
    while (from < text_.size() && std::isspace(static_cast<unsigned char>(text_[from]))) ++from;
    return from < text_.size() ? text_[from] : '\0';
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  void expect(char c) {
    if (!peek(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  std::string_view text_;
  const Traits& traits_;
  std::size_t pos_ = 0;
};

struct CyclotomicTraits {
  using Value = Cyclotomic;

  Value constant(const Rational& q) const { return Cyclotomic(q); }
  Value root_of_unity(long n) const { return Cyclotomic::root_of_unity(n, 1); }
  Value negate(const Value& v) const { return -v; }
  Value divide(const Value& a, const Value& b, std::size_t at) const {
    if (b.is_zero()) throw ParseError("division by zero", at);
    return a / b;
  }
  Value power(const Value& b, long e, std::size_t at) const {
    if (e < 0 && b.is_zero()) throw ParseError("division by zero", at);
    return b.pow(e);
  }
  Value identifier(std::string_view name, std::size_t at) const {
    throw ParseError("unknown identifier '" + std::string(name) + "'", at);
  }
};

}  // namespace detail

/// Parses a cyclotomic expression such as `1/2*E(5)^2 - E(3)`. `E(n)` is the
/// fixed primitive n-th root of unity; the result lives at the lcm of all
/// `E(n)` arguments seen.
inline Cyclotomic parse_cyclotomic(std::string_view text) {
  detail::CyclotomicTraits traits;
  return detail::ExpressionParser<detail::CyclotomicTraits>(text, traits).parse();
}

}  // namespace mckay
