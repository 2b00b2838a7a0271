#include "voa/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace voa {

const GeneratorSymbol* Presentation::find(const std::string& n) const {
  for (auto& g : generators)
    if (g.name == n) return &g;
  return nullptr;
}

bool Presentation::is_field(const std::string& n) const {
  for (auto& [f, _] : fields)
    if (f == n) return true;
  return false;
}

Presentation Presentation::specialize(const std::map<std::string, Rational>& bindings) const {
  Presentation p = *this;
  p.params.clear();
  for (auto& x : params)
    if (!bindings.count(x)) p.params.push_back(x);
  for (auto& e : p.ope)
    for (auto& [n, r] : e.poles) r = r.specialize(bindings);
  for (auto& [n, r] : p.fields) r = r.specialize(bindings);
  for (auto& r : p.ideal) r = r.specialize(bindings);
  return p;
}

namespace {

class PresentationParser {
 public:
  explicit PresentationParser(std::string_view t) : t_(t) {}

  Presentation run() {
    prescan();
    while (skip_space_and_comments()) {
      std::size_t kw_pos = pos_;
      std::string kw = word();
      if (kw == "algebra") {
        p_.name = rest_of_line();
        if (p_.name.empty()) fail_at(kw_pos, "algebra needs a name");
      } else if (kw == "param") {
        std::string line = rest_of_line();
        for (auto& w : split_ws(line)) p_.params.push_back(w);
      } else if (kw == "generator") {
        generator(kw_pos);
      } else if (kw == "ope") {
        ope(kw_pos);
      } else if (kw == "field") {
        field(kw_pos);
      } else if (kw == "ideal") {
        ideal();
      } else if (kw == "grading") {
        p_.grading = rest_of_line();
      } else if (kw == "lattice") {
        lattice(kw_pos);
      } else if (kw == "note") {
        std::string line = rest_of_line();
        auto sp = line.find(' ');
        p_.notes.emplace_back(line.substr(0, sp), sp == std::string::npos ? "" : line.substr(sp + 1));
      } else {
        fail_at(kw_pos, "unknown statement '" + kw + "'");
      }
    }
    if (p_.name.empty()) fail_at(0, "missing 'algebra' statement");
    return p_;
  }

 private:
  std::string_view t_;
  std::size_t pos_ = 0;
  Presentation p_;
  std::set<std::string> names_;

  std::pair<std::size_t, std::size_t> line_col(std::size_t off) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < off && i < t_.size(); ++i) {
      if (t_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }
  [[noreturn]] void fail_at(std::size_t off, const std::string& msg) const {
    auto [l, c] = line_col(off);
    throw ParseError("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg, l, c);
  }

  // scan for generator, field and lattice names so expressions can refer forward
  void prescan() {
    std::size_t i = 0;
    while (i < t_.size()) {
      std::size_t e = t_.find('\n', i);
      if (e == std::string_view::npos) e = t_.size();
      auto words = split_ws(std::string(t_.substr(i, e - i)));
      if (words.size() >= 2 && (words[0] == "generator" || words[0] == "field" || words[0] == "lattice"))
        names_.insert(words[1]);
      i = e + 1;
    }
  }

  static std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      std::size_t st = i;
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      if (i > st) out.push_back(s.substr(st, i - st));
    }
    return out;
  }

  bool skip_space_and_comments() {
    for (;;) {
      while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
      if (pos_ < t_.size() && t_[pos_] == '#') {
        while (pos_ < t_.size() && t_[pos_] != '\n') ++pos_;
        continue;
      }
      return pos_ < t_.size();
    }
  }
  void skip_inline() {
    while (pos_ < t_.size() && (t_[pos_] == ' ' || t_[pos_] == '\t')) ++pos_;
  }
  std::string word() {
    skip_inline();
    std::size_t st = pos_;
    while (pos_ < t_.size() && !std::isspace(static_cast<unsigned char>(t_[pos_])) && t_[pos_] != '{' &&
           t_[pos_] != '=')
      ++pos_;
    return std::string(t_.substr(st, pos_ - st));
  }
  std::string rest_of_line() {
    std::size_t e = t_.find('\n', pos_);
    if (e == std::string_view::npos) e = t_.size();
    std::string s(t_.substr(pos_, e - pos_));
    pos_ = e;
    auto h = s.find('#');
    if (h != std::string::npos) s = s.substr(0, h);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    return s.substr(b);
  }

  RawExpr expression(std::size_t st, std::size_t en) {
    auto [l, c] = line_col(st);
    auto is_name = [this](const std::string& n) { return names_.count(n) > 0; };
    return parse_raw_expr(t_.substr(st, en - st), is_name, l, c);
  }

  // end of an expression: first ';' or closing brace at depth zero
  std::size_t expression_end(std::size_t from, bool stop_at_brace) const {
    int depth = 0;
    for (std::size_t i = from; i < t_.size(); ++i) {
      char ch = t_[i];
      if (ch == '(' || ch == '[') ++depth;
      if (ch == ')' || ch == ']') --depth;
      if (depth == 0 && (ch == ';' || (stop_at_brace && ch == '}'))) return i;
    }
    return t_.size();
  }

  void generator(std::size_t kw_pos) {
    std::string line = rest_of_line();
    auto words = split_ws(line);
    if (words.empty()) fail_at(kw_pos, "generator needs a name");
    GeneratorSymbol g;
    g.name = words[0];
    bool have_parity = false, have_weight = false;
    for (std::size_t i = 1; i < words.size(); ++i) {
      auto eq = words[i].find('=');
      if (eq == std::string::npos) fail_at(kw_pos, "malformed attribute '" + words[i] + "'");
      std::string key = words[i].substr(0, eq), val = words[i].substr(eq + 1);
      try {
        if (key == "parity") {
          if (val != "even" && val != "odd") fail_at(kw_pos, "parity must be even or odd");
          g.odd = val == "odd";
          have_parity = true;
        } else if (key == "weight") {
          g.weight = parse_rational(val);
          have_weight = true;
        } else if (key.rfind("charge.", 0) == 0) {
          g.charges[key.substr(7)] = parse_rational(val);
        } else {
          fail_at(kw_pos, "unknown attribute '" + key + "'");
        }
      } catch (const ParseError& e) {
        if (e.line() > 1 || std::string(e.what()).rfind("line", 0) == 0) throw;
        fail_at(kw_pos, "generator " + g.name + ": " + e.what());
      }
    }
    if (!have_parity || !have_weight) fail_at(kw_pos, "generator " + g.name + " needs parity and weight");
    if (p_.find(g.name)) fail_at(kw_pos, "duplicate generator '" + g.name + "'");
    p_.generators.push_back(std::move(g));
  }

  void ope(std::size_t kw_pos) {
    OpeEntry e;
    e.line = line_col(kw_pos).first;
    e.a = word();
    e.b = word();
    if (e.a.empty() || e.b.empty()) fail_at(kw_pos, "ope needs two generator names");
    skip_inline();
    if (pos_ >= t_.size() || t_[pos_] != '{') fail_at(pos_, "ope " + e.a + " " + e.b + ": expected '{'");
    ++pos_;
    for (;;) {
      skip_space_and_comments();
      if (pos_ >= t_.size()) fail_at(kw_pos, "ope " + e.a + " " + e.b + ": unterminated block");
      if (t_[pos_] == '}') {
        ++pos_;
        break;
      }
      std::size_t st = pos_;
      while (pos_ < t_.size() && t_[pos_] != ':' && t_[pos_] != '\n' && t_[pos_] != '}') ++pos_;
      std::string idx(t_.substr(st, pos_ - st));
      while (!idx.empty() && std::isspace(static_cast<unsigned char>(idx.back()))) idx.pop_back();
      std::string where = "ope " + e.a + " " + e.b + ", product index '" + idx + "'";
      if (pos_ >= t_.size() || t_[pos_] != ':') fail_at(st, where + ": expected ':'");
      long n = 0;
      bool ok = !idx.empty() && std::all_of(idx.begin(), idx.end(), [](char c) { return std::isdigit(c); });
      if (!ok) fail_at(st, where + ": product index must be a non-negative integer");
      n = std::stol(idx);
      ++pos_;
      std::size_t en = expression_end(pos_, true);
      if (en >= t_.size() || t_[en] != ';') fail_at(st, where + ": expected ';'");
      try {
        if (e.poles.count(n)) fail_at(st, where + ": duplicate product index");
        e.poles[n] = expression(pos_, en);
      } catch (const ParseError& err) {
        auto [l, c] = std::make_pair(err.line(), err.column());
        throw ParseError(where + ": " + err.what(), l, c);
      }
      pos_ = en + 1;
    }
    p_.ope.push_back(std::move(e));
  }

  void field(std::size_t kw_pos) {
    std::string name = word();
    skip_inline();
    if (pos_ >= t_.size() || t_[pos_] != '=') fail_at(kw_pos, "field " + name + ": expected '='");
    ++pos_;
    std::size_t en = expression_end(pos_, false);
    if (en >= t_.size()) fail_at(kw_pos, "field " + name + ": expected ';'");
    p_.fields.emplace_back(name, expression(pos_, en));
    pos_ = en + 1;
  }

  void ideal() {
    skip_inline();
    if (pos_ >= t_.size() || t_[pos_] != '{') fail_at(pos_, "ideal: expected '{'");
    ++pos_;
    for (;;) {
      skip_space_and_comments();
      if (pos_ >= t_.size()) fail_at(pos_, "ideal: unterminated block");
      if (t_[pos_] == '}') {
        ++pos_;
        break;
      }
      std::size_t en = expression_end(pos_, true);
      if (en >= t_.size() || t_[en] != ';') fail_at(pos_, "ideal: expected ';'");
      p_.ideal.push_back(expression(pos_, en));
      pos_ = en + 1;
    }
  }

  void lattice(std::size_t kw_pos) {
    auto words = split_ws(rest_of_line());
    if (words.size() != 2 || words[1].rfind("signature=", 0) != 0)
      fail_at(kw_pos, "lattice statement is 'lattice <field> signature=<1|-1>'");
    int q = std::stoi(words[1].substr(10));
    if (q != 1 && q != -1) fail_at(kw_pos, "lattice signature must be 1 or -1");
    if (p_.lattice) fail_at(kw_pos, "only one lattice factor is supported");
    p_.lattice = LatticeFactor{words[0], q};
  }
};

}  // namespace

Presentation parse_presentation(std::string_view text) { return PresentationParser(text).run(); }

Presentation tensor(const Presentation& a, const Presentation& b) {
  std::set<std::string> names;
  auto claim = [&](const std::string& n) {
    if (!names.insert(n).second) throw std::invalid_argument("tensor: name clash on '" + n + "'");
  };
  for (auto* p : {&a, &b}) {
    for (auto& g : p->generators) claim(g.name);
    for (auto& [f, _] : p->fields) claim(f);
    if (p->lattice) claim(p->lattice->field);
  }
  if (a.lattice && b.lattice) throw std::invalid_argument("tensor: at most one lattice factor is supported");
  Presentation t;
  t.name = a.name + "*" + b.name;
  t.params = a.params;
  for (auto& x : b.params)
    if (std::find(t.params.begin(), t.params.end(), x) == t.params.end()) t.params.push_back(x);
  t.generators = a.generators;
  t.generators.insert(t.generators.end(), b.generators.begin(), b.generators.end());
  t.ope = a.ope;
  t.ope.insert(t.ope.end(), b.ope.begin(), b.ope.end());
  t.fields = a.fields;
  t.fields.insert(t.fields.end(), b.fields.begin(), b.fields.end());
  t.ideal = a.ideal;
  t.ideal.insert(t.ideal.end(), b.ideal.begin(), b.ideal.end());
  t.grading = a.grading;
  t.lattice = a.lattice ? a.lattice : b.lattice;
  t.notes = a.notes;
  t.notes.insert(t.notes.end(), b.notes.begin(), b.notes.end());
  return t;
}

}  // namespace voa
