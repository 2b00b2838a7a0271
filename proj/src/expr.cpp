#include "voa/expr.hpp"

#include <cctype>

namespace voa {

RawExpr RawExpr::specialize(const std::map<std::string, Rational>& b) const {
  RawExpr r = *this;
  for (auto& [c, t] : r.terms) {
    c = c.specialize(b);
    t = t.specialize(b);
  }
  for (auto& ch : r.children) ch = ch.specialize(b);
  return r;
}

void RawExpr::collect_names(std::vector<std::string>& out) const {
  if (kind == Kind::Name) out.push_back(name);
  for (auto& [c, t] : terms) t.collect_names(out);
  for (auto& ch : children) ch.collect_names(out);
}

std::string coeff_prefix(const Scalar& c, bool first) {
  std::string s;
  if (c.is_constant()) {
    Rational v = c.value();
    bool neg = sgn(v) < 0;
    if (first)
      s = neg ? "-" : "";
    else
      s = neg ? " - " : " + ";
    Rational a = abs(v);
    if (a != 1) s += a.get_str() + " ";
    return s;
  }
  s = first ? "" : " + ";
  return s + "[" + c.str() + "] ";
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view s, const std::function<bool(const std::string&)>& is_name, std::size_t line,
             std::size_t col)
      : s_(s), is_name_(is_name), line_(line), col0_(col) {}

  RawExpr parse_all() {
    RawExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  const std::function<bool(const std::string&)>& is_name_;
  std::size_t line_, col0_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t col = col0_ + pos_;
    throw ParseError("line " + std::to_string(line_) + ", column " + std::to_string(col) + ": " + msg, line_,
                     col);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool peek_str(std::string_view t) {
    skip();
    return s_.substr(pos_, t.size()) == t;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_end_of_term() {
    skip();
    return pos_ >= s_.size() || s_[pos_] == '+' || s_[pos_] == '-' || s_[pos_] == ')' || s_[pos_] == ';';
  }

  long integer() {
    skip();
    std::size_t st = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (st == pos_) fail("expected integer");
    return std::stol(std::string(s_.substr(st, pos_ - st)));
  }

  RawExpr expr() {
    RawExpr sum;
    sum.kind = RawExpr::Kind::Sum;
    Scalar sign(1);
    if (eat('-'))
      sign = Scalar(-1);
    else
      eat('+');
    for (;;) {
      auto [c, a] = term();
      sum.terms.emplace_back(sign * c, std::move(a));
      if (eat('+'))
        sign = Scalar(1);
      else if (eat('-'))
        sign = Scalar(-1);
      else
        break;
    }
    return sum;
  }

  std::pair<Scalar, RawExpr> term() {
    skip();
    Scalar c(1);
    bool have_coef = false;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      Rational v(mpz_class(std::to_string(integer())));
      if (peek('/') ) {
        ++pos_;
        long d = integer();
        if (d == 0) fail("zero denominator");
        v /= d;
      }
      c = Scalar(v);
      have_coef = true;
    } else if (peek('[')) {
      std::size_t st = ++pos_;
      int depth = 1;
      while (pos_ < s_.size() && depth) {
        if (s_[pos_] == '[') ++depth;
        if (s_[pos_] == ']') --depth;
        ++pos_;
      }
      if (depth) fail("unterminated '['");
      try {
        c = Scalar::parse(s_.substr(st, pos_ - 1 - st));
      } catch (const ParseError& e) {
        fail(std::string("bad coefficient: ") + e.what());
      } catch (const MathError& e) {
        fail(std::string("bad coefficient: ") + e.what());
      }
      have_coef = true;
    }
    if (have_coef) {
      eat('*');
      if (at_end_of_term()) return {c, RawExpr::vacuum()};
    }
    return {c, atom()};
  }

  RawExpr atom() {
    skip();
    std::size_t st = pos_;
    if (pos_ >= s_.size()) fail("expected a field");
    RawExpr r;
    r.line = line_;
    r.column = col0_ + pos_;
    if (peek_str("|0>")) {
      pos_ += 3;
      r.kind = RawExpr::Kind::Vacuum;
      return r;
    }
    if (peek_str(":(")) {
      pos_ += 2;
      r.kind = RawExpr::Kind::Normal;
      while (!eat(')')) {
        if (pos_ >= s_.size()) fail("unterminated ':('");
        r.children.push_back(atom());
      }
      if (r.children.empty()) fail("empty normal-ordered product");
      return r;
    }
    if (eat('(')) {
      RawExpr e = expr();
      expect(')');
      return e;
    }
    if (s_[pos_] == 'd' && pos_ + 1 < s_.size() && (s_[pos_ + 1] == '^' || s_[pos_ + 1] == '(')) {
      ++pos_;
      long j = 1;
      if (eat('^')) j = integer();
      expect('(');
      r.kind = RawExpr::Kind::Deriv;
      r.number = j;
      r.children.push_back(expr());
      expect(')');
      return r;
    }
    if (peek_str("e^{")) {
      pos_ += 3;
      long sign = 1;
      if (eat('-')) sign = -1;
      skip();
      long m = 1;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) m = integer();
      skip();
      r.kind = RawExpr::Kind::Exp;
      r.number = sign * m;
      r.name = identifier();
      expect('}');
      return r;
    }
    if (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_') {
      r.kind = RawExpr::Kind::Name;
      r.name = identifier();
      if (!is_name_(r.name)) {
        pos_ = st;
        fail("unknown field '" + r.name + "'");
      }
      return r;
    }
    fail("unexpected '" + std::string(1, s_[pos_]) + "'");
  }

  std::string identifier() {
    skip();
    std::size_t st = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '~'))
      ++pos_;
    if (st == pos_) fail("expected identifier");
    std::string id(s_.substr(st, pos_ - st));
    while (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-') && is_name_(id + s_[pos_])) {
      id += s_[pos_];
      ++pos_;
    }
    return id;
  }
};

}  // namespace

RawExpr parse_raw_expr(std::string_view text, const std::function<bool(const std::string&)>& is_name,
                       std::size_t line, std::size_t column) {
  return ExprParser(text, is_name, line, column).parse_all();
}

}  // namespace voa
