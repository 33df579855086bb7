#pragma once

// Model formula language:
//   response ~ term (+ term)* + (1|group) [+ offset(log(col))]
// with term := name | name^2 | name:name | name*name, where a*b expands to
// a + b + a:b. Exactly one random-intercept term is required.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixr2 {

enum class TermKind { main, square, interaction };

struct Term {
  TermKind kind = TermKind::main;
  std::string a;
  std::string b;  // interaction partner

  std::string label() const {
    switch (kind) {
      case TermKind::main: return a;
      case TermKind::square: return a + "^2";
      case TermKind::interaction: return a + ":" + b;
    }
    return a;
  }

  friend bool operator==(const Term& x, const Term& y) {
    if (x.kind != y.kind) return false;
    if (x.kind == TermKind::interaction) {
      return (x.a == y.a && x.b == y.b) || (x.a == y.b && x.b == y.a);
    }
    return x.a == y.a;
  }
};

struct ModelSpec {
  std::string response;
  std::vector<Term> fixed_terms;
  std::string group;  // random-intercept grouping column
  std::optional<std::string> offset_log_column;
  std::string family = "gaussian";

  std::string pretty() const {
    std::string s = response + " ~ ";
    if (fixed_terms.empty()) s += "1";  // intercept-only form
    for (size_t i = 0; i < fixed_terms.size(); ++i) {
      if (i > 0) s += " + ";
      s += fixed_terms[i].label();
    }
    s += " + (1|" + group + ")";
    if (offset_log_column) s += " + offset(log(" + *offset_log_column + "))";
    return s;
  }
};

class FormulaError : public std::runtime_error {
 public:
  FormulaError(const std::string& msg, size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) +
                           ")"),
        position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(const std::string& text) : text_(text) {}

  ModelSpec parse() {
    ModelSpec spec;
    spec.response = expect_name("response name");
    skip_space();
    expect('~');
    bool saw_group = false;
    while (true) {
      skip_space();
      const size_t element_pos = pos_;
      if (peek() == '(') {
        parse_random_intercept(spec, saw_group, element_pos);
      } else if (looking_at_word("offset")) {
        parse_offset(spec, element_pos);
      } else if (peek() == '1' && !std::isalnum(peek_at(1)) && peek_at(1) != '_') {
        ++pos_;  // bare intercept "1"; implied anyway
      } else {
        parse_term(spec);
      }
      skip_space();
      if (pos_ >= text_.size()) break;
      expect('+');
    }
    if (!saw_group) {
      throw FormulaError("formula requires exactly one (1|group) term",
                         text_.size());
    }
    return spec;
  }

 private:
  void parse_random_intercept(ModelSpec& spec, bool& saw_group,
                              size_t element_pos) {
    expect('(');
    skip_space();
    expect('1');
    skip_space();
    expect('|');
    skip_space();
    const std::string g = expect_name("grouping column name");
    skip_space();
    expect(')');
    if (saw_group) {
      throw FormulaError("more than one (1|...) term", element_pos);
    }
    saw_group = true;
    spec.group = g;
  }

  void parse_offset(ModelSpec& spec, size_t element_pos) {
    pos_ += 6;  // "offset"
    skip_space();
    expect('(');
    skip_space();
    if (!looking_at_word("log")) {
      throw FormulaError("offset must have the form offset(log(col))", pos_);
    }
    pos_ += 3;
    skip_space();
    expect('(');
    skip_space();
    const std::string col = expect_name("offset column name");
    skip_space();
    expect(')');
    skip_space();
    expect(')');
    if (spec.offset_log_column) {
      throw FormulaError("more than one offset term", element_pos);
    }
    spec.offset_log_column = col;
  }

  void parse_term(ModelSpec& spec) {
    const std::string a = expect_name("term name");
    skip_space();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      if (peek() != '2') {
        throw FormulaError("only squared terms (name^2) are supported", pos_);
      }
      ++pos_;
      add_term(spec, {TermKind::square, a, ""});
      return;
    }
    if (peek() == ':') {
      ++pos_;
      skip_space();
      const std::string b = expect_name("interaction partner name");
      add_term(spec, {TermKind::interaction, a, b});
      return;
    }
    if (peek() == '*') {
      ++pos_;
      skip_space();
      const std::string b = expect_name("interaction partner name");
      add_term(spec, {TermKind::main, a, ""});
      add_term(spec, {TermKind::main, b, ""});
      add_term(spec, {TermKind::interaction, a, b});
      return;
    }
    add_term(spec, {TermKind::main, a, ""});
  }

  static void add_term(ModelSpec& spec, const Term& t) {
    for (const auto& existing : spec.fixed_terms) {
      if (existing == t) return;  // duplicates keep the first occurrence
    }
    spec.fixed_terms.push_back(t);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t')) {
      ++pos_;
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char peek_at(size_t k) const {
    return pos_ + k < text_.size() ? text_[pos_ + k] : '\0';
  }

  bool looking_at_word(const std::string& w) const {
    if (text_.compare(pos_, w.size(), w) != 0) return false;
    const char next = peek_at(w.size());
    // must be followed by '(' (possibly after spaces), not a longer name
    size_t k = pos_ + w.size();
    if (std::isalnum(static_cast<unsigned char>(next)) || next == '_') {
      return false;
    }
    while (k < text_.size() && (text_[k] == ' ' || text_[k] == '\t')) ++k;
    return k < text_.size() && text_[k] == '(';
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) {
      throw FormulaError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  std::string expect_name(const std::string& what) {
    skip_space();
    const size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
         text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_' || text_[pos_] == '.')) {
        ++pos_;
      }
      return text_.substr(start, pos_ - start);
    }
    throw FormulaError("expected " + what, pos_);
  }

  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace detail

inline ModelSpec parse_formula(const std::string& text) {
  return detail::FormulaParser(text).parse();
}

}  // namespace mixr2
