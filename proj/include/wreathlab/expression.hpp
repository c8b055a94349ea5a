#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "group.hpp"
#include "wreath.hpp"

namespace wreathlab {

/**
 * Group expression syntax:
 *
 *   expr := "Z" | "cyclic" "(" uint ")" | name
 *         | "sum" "(" expr "," expr ")" | "wreath" "(" expr "," expr ")"
 *   name := "A5" | "S4" | "S3" | "V4"
 *
 * Whitespace is ignored. The first argument of wreath is the acting group.
 */
struct GroupExpression {
  enum class Kind { Integers, Cyclic, Named, Sum, Wreath };

  Kind kind = Kind::Integers;
  std::int64_t order = 0;  // Cyclic
  std::string name;        // Named
  std::vector<GroupExpression> args;

  /// Canonical spelling; parsing it gives back an equal expression.
  std::string to_string() const {
    switch (kind) {
      case Kind::Integers: return "Z";
      case Kind::Cyclic: return "cyclic(" + std::to_string(order) + ")";
      case Kind::Named: return name;
      case Kind::Sum: return "sum(" + args[0].to_string() + ", " + args[1].to_string() + ")";
      case Kind::Wreath: return "wreath(" + args[0].to_string() + ", " + args[1].to_string() + ")";
    }
    return "?";
  }

  friend bool operator==(const GroupExpression&, const GroupExpression&) = default;
};

namespace detail {

/// Shared cursor for the expression and element grammars. Positions reported
/// in errors are 1-based columns.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (at_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[at_]))) ++at_;
  }

  bool done() {
    skip_space();
    return at_ >= text_.size();
  }

  char peek() {
    skip_space();
    return at_ < text_.size() ? text_[at_] : '\0';
  }

  std::size_t column() const { return at_ + 1; }

  [[noreturn]] void fail(std::vector<std::string> expected) const { throw ParseError(column(), std::move(expected)); }

  void expect(char c) {
    if (peek() != c) fail({std::string("'") + c + "'"});
    ++at_;
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++at_;
    return true;
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = at_;
    while (at_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[at_])) || text_[at_] == '_')) ++at_;
    return std::string(text_.substr(start, at_ - start));
  }

  std::int64_t integer(bool allow_sign, const std::string& what) {
    skip_space();
    const std::size_t start = at_;
    bool negative = false;
    if (allow_sign && at_ < text_.size() && (text_[at_] == '-' || text_[at_] == '+')) negative = text_[at_++] == '-';
    if (at_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[at_]))) {
      at_ = start;
      fail({what});
    }
    std::int64_t v = 0;
    while (at_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[at_]))) {
      const std::int64_t digit = text_[at_] - '0';
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, negative ? -digit : digit, &v))
        throw Error(ErrorCode::Overflow, "integer literal at offset " + std::to_string(start + 1));
      ++at_;
    }
    return v;
  }

  /// Raw text up to (not including) `stop`.
  std::string until(char stop) {
    const std::size_t start = at_;
    while (at_ < text_.size() && text_[at_] != stop) ++at_;
    if (at_ >= text_.size()) fail({std::string("'") + stop + "'"});
    return std::string(text_.substr(start, at_ - start));
  }

 private:
  std::string_view text_;
  std::size_t at_ = 0;
};

inline GroupExpression parse_expr(Cursor& in) {
  static const std::vector<std::string> kStart = {"Z", "cyclic", "sum", "wreath", "A5", "S4", "S3", "V4"};
  in.skip_space();
  const std::size_t column = in.column();
  const std::string word = in.identifier();
  if (word.empty()) in.fail(kStart);

  GroupExpression e;
  if (word == "Z") {
    e.kind = GroupExpression::Kind::Integers;
  } else if (word == "cyclic") {
    e.kind = GroupExpression::Kind::Cyclic;
    in.expect('(');
    e.order = in.integer(false, "positive integer");
    if (e.order < 1) throw ParseError(column, {"positive integer"});
    if (in.peek() == ',') throw Error(ErrorCode::ArityError, "cyclic takes one argument");
    in.expect(')');
  } else if (word == "sum" || word == "wreath") {
    e.kind = word == "sum" ? GroupExpression::Kind::Sum : GroupExpression::Kind::Wreath;
    in.expect('(');
    e.args.push_back(parse_expr(in));
    if (in.peek() == ')') throw Error(ErrorCode::ArityError, word + " takes two arguments");
    in.expect(',');
    e.args.push_back(parse_expr(in));
    if (in.peek() == ',') throw Error(ErrorCode::ArityError, word + " takes two arguments");
    in.expect(')');
  } else {
    bool known = false;
    for (const std::string& n : named_permutation_groups()) known = known || n == word;
    if (!known) throw Error(ErrorCode::UnknownName, "unknown group '" + word + "' at offset " + std::to_string(column));
    e.kind = GroupExpression::Kind::Named;
    e.name = word;
  }
  return e;
}

}  // namespace detail

inline GroupExpression parse_group_expression(std::string_view text) {
  detail::Cursor in(text);
  GroupExpression e = detail::parse_expr(in);
  if (!in.done()) in.fail({"end of input"});
  return e;
}

inline GroupPtr build_group(const GroupExpression& e) {
  switch (e.kind) {
    case GroupExpression::Kind::Integers: return Group::integers();
    case GroupExpression::Kind::Cyclic: return Group::cyclic(e.order);
    case GroupExpression::Kind::Named: return named_permutation_group(e.name);
    case GroupExpression::Kind::Sum: return Group::direct_sum(build_group(e.args[0]), build_group(e.args[1]));
    case GroupExpression::Kind::Wreath: return Group::wreath(build_group(e.args[0]), build_group(e.args[1]));
  }
  throw Error(ErrorCode::InvalidArgument, "bad expression");
}

inline GroupPtr parse_group(std::string_view text) { return build_group(parse_group_expression(text)); }

namespace detail {

inline Element parse_element(const Group& g, Cursor& in) {
  switch (g.kind()) {
    case Group::Kind::Integers:
      return Element::integer(in.integer(true, "integer"));
    case Group::Kind::Cyclic: {
      const bool indexed = in.accept('#');
      std::int64_t v = in.integer(!indexed, "integer");
      if (indexed && v >= g.modulus()) in.fail({"index below " + std::to_string(g.modulus())});
      v %= g.modulus();
      if (v < 0) v += g.modulus();
      return Element::fin(v);
    }
    case Group::Kind::Permutation: {
      const PermutationTable& t = g.permutations();
      std::optional<std::int64_t> index;
      if (in.accept('#')) {
        index = in.integer(false, "element index");
        if (static_cast<std::size_t>(*index) >= t.order()) in.fail({"index below " + std::to_string(t.order())});
      }
      if (in.accept('[')) {
        const std::string cycles = in.until(']');
        in.expect(']');
        const auto found = t.index_of(t.parse_cycles(cycles));
        if (!found) throw Error(ErrorCode::DomainMismatch, "permutation " + cycles + " is not in " + g.describe());
        if (index && *index != static_cast<std::int64_t>(*found))
          throw Error(ErrorCode::DomainMismatch, "index and cycles disagree");
        index = static_cast<std::int64_t>(*found);
      }
      if (!index) in.fail({"'#'", "'['"});
      return Element::fin(*index);
    }
    case Group::Kind::DirectSum: {
      in.expect('(');
      Element l = parse_element(*g.left(), in);
      in.expect(',');
      Element r = parse_element(*g.right(), in);
      in.expect(')');
      return Element::pair(std::move(l), std::move(r));
    }
    case Group::Kind::Wreath: {
      in.expect('(');
      Element top = parse_element(*g.acting(), in);
      in.expect(',');
      in.expect('{');
      std::vector<Lamp> lamps;
      if (!in.accept('}')) {
        do {
          Element p = parse_element(*g.acting(), in);
          in.expect(':');
          Element v = parse_element(*g.lamp(), in);
          lamps.push_back({std::move(p), std::move(v)});
        } while (in.accept(','));
        in.expect('}');
      }
      in.expect(')');
      return make_wreath_element(g, top, SupportMap::from_entries(g, std::move(lamps)));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "bad group");
}

}  // namespace detail

/// Reads the notation produced by Group::format. Cyclic elements may also be
/// written as plain (possibly negative) integers, permutations as "[(1 2 3)]".
inline Element parse_element(const Group& g, std::string_view text) {
  detail::Cursor in(text);
  Element e = detail::parse_element(g, in);
  if (!in.done()) in.fail({"end of input"});
  return e;
}

}  // namespace wreathlab
