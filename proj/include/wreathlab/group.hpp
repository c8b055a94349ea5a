#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "element.hpp"
#include "error.hpp"

namespace wreathlab {

class Group;
using GroupPtr = std::shared_ptr<const Group>;

/// One-line notation on {0, ..., degree-1}; composition is (x*y)(i) = x(y(i)).
using Permutation = std::vector<int>;

/**
 * A finite permutation group closed from its generators.
 * Elements are sorted by one-line notation, so index 0 is the identity.
 */
class PermutationTable {
 public:
  static constexpr std::size_t kMaxOrder = 20000;

  PermutationTable(std::string name, int degree, std::vector<Permutation> generators)
      : name_(std::move(name)), degree_(degree), generators_(std::move(generators)) {
    if (degree_ < 1) throw Error(ErrorCode::InvalidArgument, "permutation degree must be positive");
    for (const Permutation& g : generators_) check_permutation(g);
    close();
  }

  const std::string& name() const noexcept { return name_; }
  int degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  std::size_t order() const noexcept { return perms_.size(); }
  const Permutation& permutation(std::size_t index) const { return perms_.at(index); }

  std::size_t product(std::size_t x, std::size_t y) const { return table_[x * perms_.size() + y]; }
  std::size_t inverse(std::size_t x) const { return inverse_[x]; }

  std::optional<std::size_t> index_of(const Permutation& p) const {
    auto it = std::lower_bound(perms_.begin(), perms_.end(), p);
    if (it == perms_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - perms_.begin());
  }

  /// Cycle notation with 1-based points, "()" for the identity.
  std::string cycles(std::size_t index) const {
    const Permutation& p = perms_.at(index);
    std::vector<bool> seen(p.size(), false);
    std::string out;
    for (std::size_t start = 0; start < p.size(); ++start) {
      if (seen[start] || p[start] == static_cast<int>(start)) continue;
      out += "(";
      std::size_t i = start;
      bool first = true;
      while (!seen[i]) {
        seen[i] = true;
        if (!first) out += " ";
        out += std::to_string(i + 1);
        first = false;
        i = static_cast<std::size_t>(p[i]);
      }
      out += ")";
    }
    return out.empty() ? "()" : out;
  }

  /// Parses cycle notation like "(1 2 3)(4 5)" into one-line form.
  Permutation parse_cycles(const std::string& text) const {
    Permutation p(static_cast<std::size_t>(degree_));
    std::iota(p.begin(), p.end(), 0);
    std::size_t at = 0;
    auto skip = [&] {
      while (at < text.size() && text[at] == ' ') ++at;
    };
    skip();
    while (at < text.size()) {
      if (text[at] != '(') throw Error(ErrorCode::InvalidArgument, "bad cycle notation: " + text);
      ++at;
      std::vector<int> cycle;
      skip();
      while (at < text.size() && text[at] != ')') {
        std::size_t used = 0;
        int point = std::stoi(text.substr(at), &used);
        if (point < 1 || point > degree_) throw Error(ErrorCode::InvalidArgument, "cycle point out of range");
        cycle.push_back(point - 1);
        at += used;
        skip();
      }
      if (at >= text.size()) throw Error(ErrorCode::InvalidArgument, "unterminated cycle: " + text);
      ++at;
      skip();
      // Cycles compose right to left like the group law.
      Permutation c(p.size());
      std::iota(c.begin(), c.end(), 0);
      for (std::size_t k = 0; k < cycle.size(); ++k) c[cycle[k]] = cycle[(k + 1) % cycle.size()];
      Permutation next(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) next[i] = p[c[i]];
      p = std::move(next);
    }
    return p;
  }

  static Permutation compose(const Permutation& x, const Permutation& y) {
    Permutation r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[static_cast<std::size_t>(y[i])];
    return r;
  }

 private:
  void check_permutation(const Permutation& p) const {
    if (static_cast<int>(p.size()) != degree_)
      throw Error(ErrorCode::InvalidArgument, "generator has wrong degree");
    std::vector<bool> hit(p.size(), false);
    for (int v : p) {
      if (v < 0 || v >= degree_ || hit[static_cast<std::size_t>(v)])
        throw Error(ErrorCode::InvalidArgument, "generator is not a permutation");
      hit[static_cast<std::size_t>(v)] = true;
    }
  }

  void close() {
    Permutation id(static_cast<std::size_t>(degree_));
    std::iota(id.begin(), id.end(), 0);
    std::set<Permutation> found{id};
    std::vector<Permutation> frontier{id};
    while (!frontier.empty()) {
      std::vector<Permutation> next;
      for (const Permutation& x : frontier) {
        for (const Permutation& g : generators_) {
          Permutation y = compose(g, x);
          if (found.insert(y).second) {
            if (found.size() > kMaxOrder) throw Error(ErrorCode::InvalidArgument, "permutation group too large");
            next.push_back(std::move(y));
          }
        }
      }
      frontier = std::move(next);
    }
    perms_.assign(found.begin(), found.end());
    const std::size_t n = perms_.size();
    table_.resize(n * n);
    inverse_.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        auto idx = index_of(compose(perms_[x], perms_[y]));
        table_[x * n + y] = static_cast<std::uint32_t>(*idx);
        if (*idx == 0) inverse_[x] = static_cast<std::uint32_t>(y);
      }
    }
  }

  std::string name_;
  int degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> perms_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
};

// Wreath law, defined in wreath.hpp.
inline Element wreath_mul(const Group& w, const Element& g1, const Element& g2);
inline Element wreath_inv(const Group& w, const Element& g);

/**
 * A realized group: element domain, multiplication, inversion, identity and,
 * for finite groups, an enumeration. Immutable after construction.
 */
class Group {
 public:
  enum class Kind { Integers, Cyclic, Permutation, DirectSum, Wreath };

  static GroupPtr integers() { return GroupPtr(new Group(Kind::Integers)); }

  static GroupPtr cyclic(std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "cyclic order must be positive");
    auto g = std::shared_ptr<Group>(new Group(Kind::Cyclic));
    g->modulus_ = n;
    g->finite_order_ = static_cast<std::uint64_t>(n);
    g->identity_ = Element::fin(0);
    return g;
  }

  static GroupPtr permutation(std::string name, int degree, std::vector<Permutation> generators) {
    auto g = std::shared_ptr<Group>(new Group(Kind::Permutation));
    g->perms_ = std::make_shared<const PermutationTable>(std::move(name), degree, std::move(generators));
    g->finite_order_ = g->perms_->order();
    g->identity_ = Element::fin(0);
    return g;
  }

  static GroupPtr direct_sum(GroupPtr left, GroupPtr right) {
    if (!left || !right) throw Error(ErrorCode::InvalidArgument, "null summand");
    auto g = std::shared_ptr<Group>(new Group(Kind::DirectSum));
    g->identity_ = Element::pair(left->identity(), right->identity());
    if (left->finite_order_ && right->finite_order_) {
      std::uint64_t prod;
      if (__builtin_mul_overflow(*left->finite_order_, *right->finite_order_, &prod))
        throw Error(ErrorCode::Overflow, "group order");
      g->finite_order_ = prod;
    }
    g->left_ = std::move(left);
    g->right_ = std::move(right);
    return g;
  }

  /// `acting` indexes the lamps and moves the walker; `lamp` holds the lamp values.
  static GroupPtr wreath(GroupPtr acting, GroupPtr lamp) {
    if (!acting || !lamp) throw Error(ErrorCode::InvalidArgument, "null wreath factor");
    auto g = std::shared_ptr<Group>(new Group(Kind::Wreath));
    g->identity_ = Element::wreath_from_flat({acting->identity()});
    if (acting->finite_order_ && lamp->finite_order_) {
      std::uint64_t order = *acting->finite_order_;
      for (std::uint64_t i = 0; i < *acting->finite_order_; ++i) {
        if (__builtin_mul_overflow(order, *lamp->finite_order_, &order))
          throw Error(ErrorCode::Overflow, "group order");
      }
      g->finite_order_ = order;
    }
    g->left_ = std::move(acting);
    g->right_ = std::move(lamp);
    return g;
  }

  Kind kind() const noexcept { return kind_; }
  const Element& identity() const noexcept { return identity_; }
  std::optional<std::uint64_t> finite_order() const noexcept { return finite_order_; }
  bool is_finite() const noexcept { return finite_order_.has_value(); }

  std::int64_t modulus() const { return modulus_; }
  const PermutationTable& permutations() const {
    if (!perms_) throw Error(ErrorCode::InvalidArgument, "not a permutation group");
    return *perms_;
  }

  const GroupPtr& left() const { return child(left_); }
  const GroupPtr& right() const { return child(right_); }
  const GroupPtr& acting() const { return child(left_); }
  const GroupPtr& lamp() const { return child(right_); }

  bool is_identity(const Element& x) const { return x == identity_; }

  Element mul(const Element& x, const Element& y) const {
    switch (kind_) {
      case Kind::Integers:
        expect(x, Element::Kind::Int);
        expect(y, Element::Kind::Int);
        return Element::integer(checked_add(x.scalar(), y.scalar()));
      case Kind::Cyclic:
        expect_fin(x);
        expect_fin(y);
        return Element::fin((x.scalar() + y.scalar()) % modulus_);
      case Kind::Permutation:
        expect_fin(x);
        expect_fin(y);
        return Element::fin(static_cast<std::int64_t>(
            perms_->product(static_cast<std::size_t>(x.scalar()), static_cast<std::size_t>(y.scalar()))));
      case Kind::DirectSum:
        expect_pair(x);
        expect_pair(y);
        return Element::pair(left_->mul(x.left(), y.left()), right_->mul(x.right(), y.right()));
      case Kind::Wreath:
        return wreath_mul(*this, x, y);
    }
    throw Error(ErrorCode::DomainMismatch, "unknown group kind");
  }

  Element inv(const Element& x) const {
    switch (kind_) {
      case Kind::Integers:
        expect(x, Element::Kind::Int);
        return Element::integer(checked_neg(x.scalar()));
      case Kind::Cyclic:
        expect_fin(x);
        return Element::fin((modulus_ - x.scalar()) % modulus_);
      case Kind::Permutation:
        expect_fin(x);
        return Element::fin(static_cast<std::int64_t>(perms_->inverse(static_cast<std::size_t>(x.scalar()))));
      case Kind::DirectSum:
        expect_pair(x);
        return Element::pair(left_->inv(x.left()), right_->inv(x.right()));
      case Kind::Wreath:
        return wreath_inv(*this, x);
    }
    throw Error(ErrorCode::DomainMismatch, "unknown group kind");
  }

  /// x^n for n >= 0 by repeated squaring.
  Element pow(Element x, std::uint64_t n) const {
    Element result = identity_;
    while (n) {
      if (n & 1) result = mul(result, x);
      n >>= 1;
      if (n) x = mul(x, x);
    }
    return result;
  }

  /// Full structural validation, including canonical wreath lamp order.
  bool contains(const Element& x) const {
    switch (kind_) {
      case Kind::Integers:
        return x.kind() == Element::Kind::Int;
      case Kind::Cyclic:
      case Kind::Permutation:
        return x.kind() == Element::Kind::Fin && x.scalar() >= 0 &&
               static_cast<std::uint64_t>(x.scalar()) < *finite_order_;
      case Kind::DirectSum:
        return x.kind() == Element::Kind::Pair && x.parts().size() == 2 && left_->contains(x.left()) &&
               right_->contains(x.right());
      case Kind::Wreath: {
        if (x.kind() != Element::Kind::Wreath || x.parts().empty() || x.parts().size() % 2 == 0) return false;
        if (!left_->contains(x.top())) return false;
        for (std::size_t i = 0; i < x.lamp_count(); ++i) {
          if (!left_->contains(x.lamp_position(i)) || !right_->contains(x.lamp_value(i))) return false;
          if (right_->is_identity(x.lamp_value(i))) return false;
          if (i > 0 && !(x.lamp_position(i - 1) < x.lamp_position(i))) return false;
        }
        return true;
      }
    }
    return false;
  }

  void check_member(const Element& x) const {
    if (!contains(x)) throw Error(ErrorCode::DomainMismatch, "element is not in " + describe());
  }

  /// All elements in canonical order, identity first.
  std::vector<Element> enumerate() const {
    if (!finite_order_) throw Error(ErrorCode::InfiniteGroup, describe() + " is infinite");
    if (*finite_order_ > kMaxEnumeration)
      throw Error(ErrorCode::InvalidArgument, describe() + " is too large to enumerate");
    std::vector<Element> out;
    switch (kind_) {
      case Kind::Integers:
        break;
      case Kind::Cyclic:
      case Kind::Permutation:
        for (std::uint64_t i = 0; i < *finite_order_; ++i) out.push_back(Element::fin(static_cast<std::int64_t>(i)));
        break;
      case Kind::DirectSum: {
        const auto ls = left_->enumerate();
        const auto rs = right_->enumerate();
        for (const Element& l : ls)
          for (const Element& r : rs) out.push_back(Element::pair(l, r));
        break;
      }
      case Kind::Wreath: {
        const auto positions = left_->enumerate();
        const auto values = right_->enumerate();
        // Every function positions -> values, as a mixed-radix counter.
        std::vector<std::size_t> digit(positions.size(), 0);
        std::vector<std::vector<Element>> lamp_sets;
        while (true) {
          std::vector<Element> flat;
          for (std::size_t i = 0; i < positions.size(); ++i) {
            if (digit[i] == 0) continue;
            flat.push_back(positions[i]);
            flat.push_back(values[digit[i]]);
          }
          lamp_sets.push_back(std::move(flat));
          std::size_t i = 0;
          while (i < digit.size() && ++digit[i] == values.size()) digit[i++] = 0;
          if (i == digit.size()) break;
        }
        for (const Element& top : positions) {
          for (const auto& lamps : lamp_sets) {
            std::vector<Element> flat{top};
            flat.insert(flat.end(), lamps.begin(), lamps.end());
            out.push_back(Element::wreath_from_flat(std::move(flat)));
          }
        }
        std::sort(out.begin(), out.end());
        break;
      }
    }
    return out;
  }

  /// Least common multiple of element orders; finite groups only, computed once.
  std::uint64_t exponent() const {
    if (!finite_order_) throw Error(ErrorCode::InfiniteGroup, describe() + " has no finite exponent");
    std::call_once(exponent_once_->flag, [this] { exponent_once_->value = compute_exponent(); });
    return exponent_once_->value;
  }

  /// Order of an element of a finite group, by iteration.
  std::uint64_t finite_element_order(const Element& x) const {
    if (!finite_order_) throw Error(ErrorCode::InfiniteGroup, describe() + " is infinite");
    Element y = x;
    std::uint64_t k = 1;
    while (!is_identity(y)) {
      y = mul(y, x);
      if (++k > *finite_order_) throw Error(ErrorCode::DomainMismatch, "element order exceeds group order");
    }
    return k;
  }

  /// Canonical expression, e.g. "wreath(Z, sum(Z, A5))".
  std::string describe() const {
    switch (kind_) {
      case Kind::Integers: return "Z";
      case Kind::Cyclic: return "cyclic(" + std::to_string(modulus_) + ")";
      case Kind::Permutation: return perms_->name();
      case Kind::DirectSum: return "sum(" + left_->describe() + ", " + right_->describe() + ")";
      case Kind::Wreath: return "wreath(" + left_->describe() + ", " + right_->describe() + ")";
    }
    return "?";
  }

  /// Integers in decimal, finite elements as #index (with cycles for permutations),
  /// pairs as (l, r), wreath elements as (top, {pos: val, ...}).
  std::string format(const Element& x) const {
    switch (kind_) {
      case Kind::Integers:
        return std::to_string(x.scalar());
      case Kind::Cyclic:
        return "#" + std::to_string(x.scalar());
      case Kind::Permutation:
        return "#" + std::to_string(x.scalar()) + "[" + perms_->cycles(static_cast<std::size_t>(x.scalar())) + "]";
      case Kind::DirectSum:
        return "(" + left_->format(x.left()) + ", " + right_->format(x.right()) + ")";
      case Kind::Wreath: {
        std::string out = "(" + left_->format(x.top()) + ", {";
        for (std::size_t i = 0; i < x.lamp_count(); ++i) {
          if (i) out += ", ";
          out += left_->format(x.lamp_position(i)) + ": " + right_->format(x.lamp_value(i));
        }
        return out + "})";
      }
    }
    return "?";
  }

 private:
  static constexpr std::uint64_t kMaxEnumeration = 1u << 22;

  struct ExponentCache {
    std::once_flag flag;
    std::uint64_t value = 0;
  };

  explicit Group(Kind kind) : kind_(kind), exponent_once_(std::make_shared<ExponentCache>()) {
    if (kind == Kind::Integers) identity_ = Element::integer(0);
  }

  const GroupPtr& child(const GroupPtr& p) const {
    if (!p) throw Error(ErrorCode::InvalidArgument, describe() + " has no such factor");
    return p;
  }

  std::uint64_t compute_exponent() const {
    switch (kind_) {
      case Kind::Cyclic:
        return static_cast<std::uint64_t>(modulus_);
      case Kind::DirectSum:
        return std::lcm(left_->exponent(), right_->exponent());
      default: {
        std::uint64_t e = 1;
        for (const Element& x : enumerate()) e = std::lcm(e, finite_element_order(x));
        return e;
      }
    }
  }

  void expect(const Element& x, Element::Kind k) const {
    if (x.kind() != k) throw Error(ErrorCode::DomainMismatch, "element kind does not match " + describe());
  }
  void expect_fin(const Element& x) const {
    expect(x, Element::Kind::Fin);
    if (x.scalar() < 0 || static_cast<std::uint64_t>(x.scalar()) >= *finite_order_)
      throw Error(ErrorCode::DomainMismatch, "index out of range for " + describe());
  }
  void expect_pair(const Element& x) const {
    expect(x, Element::Kind::Pair);
    if (x.parts().size() != 2) throw Error(ErrorCode::DomainMismatch, "malformed pair");
  }

  Kind kind_;
  Element identity_;
  std::optional<std::uint64_t> finite_order_;
  std::int64_t modulus_ = 0;
  std::shared_ptr<const PermutationTable> perms_;
  GroupPtr left_;
  GroupPtr right_;
  std::shared_ptr<ExponentCache> exponent_once_;
};

/// The permutation groups available by name: A5, S4, S3, V4.
inline GroupPtr named_permutation_group(const std::string& name) {
  if (name == "A5") return Group::permutation("A5", 5, {{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}});
  if (name == "S4") return Group::permutation("S4", 4, {{1, 2, 3, 0}, {1, 0, 2, 3}});
  if (name == "S3") return Group::permutation("S3", 3, {{1, 2, 0}, {1, 0, 2}});
  if (name == "V4") return Group::permutation("V4", 4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  throw Error(ErrorCode::UnknownName, "unknown permutation group '" + name + "'");
}

inline std::vector<std::string> named_permutation_groups() { return {"A5", "S4", "S3", "V4"}; }

struct Generator {
  std::string label;
  Element element;
};

/// A symmetric generating system: inverse-closed, identity-free, uniquely labeled.
class GeneratingSet {
 public:
  GeneratingSet() = default;
  explicit GeneratingSet(std::vector<Generator> entries) : entries_(std::move(entries)) {}

  const std::vector<Generator>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const Generator& operator[](std::size_t i) const { return entries_.at(i); }

  void validate(const Group& g) const {
    std::set<std::string> labels;
    std::set<Element> elements;
    for (const Generator& s : entries_) {
      g.check_member(s.element);
      if (g.is_identity(s.element)) throw Error(ErrorCode::InvalidArgument, "generator '" + s.label + "' is the identity");
      if (!labels.insert(s.label).second) throw Error(ErrorCode::InvalidArgument, "duplicate label '" + s.label + "'");
      elements.insert(s.element);
    }
    for (const Generator& s : entries_) {
      if (!elements.count(g.inv(s.element)))
        throw Error(ErrorCode::InvalidArgument, "generating set is not symmetric at '" + s.label + "'");
    }
  }

 private:
  std::vector<Generator> entries_;
};

/// Every non-identity element, labeled by its canonical index.
inline GeneratingSet all_elements_generating_set(const Group& g) {
  if (!g.is_finite()) throw Error(ErrorCode::InfiniteGroup, g.describe() + " is infinite");
  if (*g.finite_order() == 1) throw Error(ErrorCode::TrivialGroup, g.describe() + " is trivial");
  const auto elements = g.enumerate();
  std::vector<Generator> out;
  for (std::size_t i = 1; i < elements.size(); ++i) out.push_back({"#" + std::to_string(i), elements[i]});
  return GeneratingSet(std::move(out));
}

}  // namespace wreathlab

#include "wreath.hpp"
