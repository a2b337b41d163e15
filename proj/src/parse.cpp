#include <cctype>

#include "ramlab/error.hpp"
#include "ramlab/polyring.hpp"

namespace ramlab {

namespace {

class Parser {
 public:
  Parser(const AmbientPtr& amb, const std::string& text) : amb_(amb), s_(text) {}

  TowerPoly run() {
    TowerPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  const AmbientPtr& amb_;
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Int integer_literal() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Int(s_.substr(start, pos_ - start));
  }

  // Exponent after '^': a nonnegative integer, or a parenthesised (a) or (a/b).
  std::pair<Int, Int> exponent() {
    skip();
    if (accept('(')) {
      bool neg = accept('-');
      Int a = integer_literal();
      if (neg) a = -a;
      Int b = 1;
      if (accept('/')) b = integer_literal();
      expect(')');
      if (b == 0) fail("zero denominator in exponent");
      return {a, b};
    }
    return {integer_literal(), Int(1)};
  }

  TowerPoly expr() {
    TowerPoly acc(amb_);
    bool first = true;
    for (;;) {
      skip();
      bool neg = false;
      if (accept('-')) neg = true;
      else if (!first && !accept('+')) break;
      else if (first) accept('+');
      TowerPoly t = term();
      if (neg) acc -= t;
      else acc += t;
      first = false;
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return acc;
  }

  TowerPoly term() {
    TowerPoly acc = power();
    while (accept('*')) acc *= power();
    return acc;
  }

  std::uint64_t small_exponent(const Int& a, const Int& b) {
    if (b != 1 || a < 0 || !a.fits_ulong_p()) fail("exponent must be a nonnegative integer here");
    return a.get_ui();
  }

  TowerPoly power() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (auto v = amb_->index_of(name)) {
        const std::int64_t n = amb_->tower[*v];
        Int num = 1, den = 1;
        if (accept('^')) std::tie(num, den) = exponent();
        if (num < 0) fail("negative exponent");
        Int raw = num * n;
        if (raw % den != 0)
          fail("exponent denominator " + den.get_str() + " not declared in the tower of " + name);
        raw /= den;
        if (!raw.fits_slong_p()) throw Error(ErrorCode::Overflow, "exponent overflow");
        Exponents e(amb_->nvars(), 0);
        e[*v] = raw.get_si();
        return TowerPoly::monomial(amb_, e, amb_->ring.one());
      }
      TowerPoly base(amb_);
      const auto& R = amb_->ring;
      if (name == "e") base = TowerPoly::constant(amb_, R.epsilon());
      else if (name == "u") base = TowerPoly::constant(amb_, R.sub(R.epsilon(), R.one()));
      else if (name == "pi") base = TowerPoly::constant(amb_, R.uniformizer());
      else fail("unknown symbol " + name);
      if (accept('^')) {
        auto [a, b] = exponent();
        return base.pow(small_exponent(a, b));
      }
      return base;
    }
    TowerPoly base(amb_);
    if (std::isdigit(static_cast<unsigned char>(c))) {
      base = TowerPoly::integer(amb_, integer_literal());
    } else if (accept('(')) {
      base = expr();
      expect(')');
    } else {
      fail("unexpected '" + std::string(1, c) + "'");
    }
    if (accept('^')) {
      auto [a, b] = exponent();
      return base.pow(small_exponent(a, b));
    }
    return base;
  }
};

}  // namespace

TowerPoly parse_poly(const AmbientPtr& amb, const std::string& text) { return Parser(amb, text).run(); }

}  // namespace ramlab
