#pragma once

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ifpn/errors.hpp"

namespace ifpn::detail {

// Builtin names are written as call expressions: `abs`, `scaling(1,2)`,
// `truncated(euclidean,1)`. An argument is a number or a nested expression.
struct Expr {
  std::string head;
  std::vector<std::variant<double, Expr>> args;

  bool arg_is_number(std::size_t i) const { return std::holds_alternative<double>(args.at(i)); }
  double number(std::size_t i) const {
    if (i >= args.size() || !arg_is_number(i)) throw InvalidParameter(head + ": argument " + std::to_string(i + 1) + " must be a number");
    return std::get<double>(args[i]);
  }
  const Expr& sub(std::size_t i) const {
    if (i >= args.size() || arg_is_number(i)) throw InvalidParameter(head + ": argument " + std::to_string(i + 1) + " must be a name");
    return std::get<Expr>(args[i]);
  }
  void expect_arity(std::size_t n) const {
    if (args.size() != n) throw InvalidParameter(head + " expects " + std::to_string(n) + " argument(s)");
  }
};

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return e;
  }

 private:
  Expr expr() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(s_[start]))) fail("expected a name");
    Expr e{std::string(s_.substr(start, pos_ - start)), {}};
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      for (;;) {
        skip_ws();
        if (pos_ >= s_.size()) fail("unterminated argument list");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
          e.args.emplace_back(number());
        } else {
          e.args.emplace_back(expr());
        }
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < s_.size() && s_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
    }
    return e;
  }

  double number() {
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    if (*first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) fail("bad number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const char* what) const {
    throw InvalidParameter("cannot parse '" + std::string(s_) + "': " + what);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline Expr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

inline std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace ifpn::detail
