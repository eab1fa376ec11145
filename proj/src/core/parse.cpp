#include <cctype>

#include "pmech/errors.hpp"
#include "pmech/symbol.hpp"

namespace pmech {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t n) : s_(text), n_(n) {}

  Symbol run() {
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    Symbol e = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    e.set_provenance({Origin::Raw, "parsed"});
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Symbol expr() {
    Symbol acc = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Symbol term() {
    bool negate = false;
    if (peek('-')) {
      ++pos_;
      negate = true;
    }
    Symbol acc = factor();
    while (peek('*')) {
      ++pos_;
      acc = product(acc, factor());
    }
    return negate ? -acc : acc;
  }

  Symbol factor() {
    Symbol b = base();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == start) fail("expected non-negative integer exponent");
      if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == '/')) {
        pos_ = start;
        fail("non-integer exponent");
      }
      std::string digits(s_.substr(start, pos_ - start));
      if (digits.size() > 4) {
        pos_ = start;
        fail("exponent too large");
      }
      b = power(b, static_cast<unsigned>(std::stoul(digits)));
    }
    return b;
  }

  Symbol base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Symbol e = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return variable();
    fail(std::string("unexpected '") + c + "'");
  }

  Symbol number() {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t d = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return pos_ - d;
    };
    std::size_t whole = digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t frac = digits();
      if (whole + frac == 0) fail("malformed number");
    } else if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      if (digits() == 0) fail("expected denominator");
    }
    std::string_view text = s_.substr(start, pos_ - start);
    if (text.find('/') != std::string_view::npos &&
        text.substr(text.find('/') + 1).find_first_not_of('0') == std::string_view::npos) {
      pos_ = start;
      fail("zero denominator");
    }
    return Symbol::constant(n_, CRational(parse_rational(text)));
  }

  Symbol variable() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    std::size_t dstart = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string index(s_.substr(dstart, pos_ - dstart));
    if (name == "i" && index.empty()) return Symbol::constant(n_, CRational::i());
    if (name == "hbar" && index.empty()) return Symbol::hbar(n_);
    if (name == "q" || name == "p") {
      std::size_t j = 0;
      if (index.empty()) {
        if (n_ != 1) {
          pos_ = start;
          fail("unindexed variable '" + name + "' requires n = 1");
        }
      } else {
        if (index.size() > 6 || std::stoul(index) == 0 || std::stoul(index) > n_) {
          pos_ = dstart;
          fail("variable index out of range");
        }
        j = std::stoul(index) - 1;
      }
      return name == "q" ? Symbol::q(n_, j) : Symbol::p(n_, j);
    }
    pos_ = start;
    fail("unknown variable '" + name + index + "'");
  }

  std::string_view s_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

Symbol parse_symbol(std::string_view text, std::size_t n) {
  if (n == 0) throw DimensionError("symbol dimension must be >= 1");
  return Parser(text, n).run();
}

}  // namespace pmech
