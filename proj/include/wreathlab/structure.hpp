#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "group.hpp"
#include "sampling.hpp"
#include "wreath.hpp"

namespace wreathlab {

/// Smallest subgroup of a finite group containing `seed`, in canonical order.
inline std::vector<Element> subgroup_closure(const Group& g, const std::vector<Element>& seed) {
  if (!g.is_finite()) throw Error(ErrorCode::InfiniteGroup, g.describe() + " is infinite");
  for (const Element& s : seed) g.check_member(s);
  // In a finite group closure under products already gives inverses.
  std::set<Element> found{g.identity()};
  std::vector<Element> frontier{g.identity()};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const Element& x : frontier) {
      for (const Element& s : seed) {
        Element y = g.mul(x, s);
        if (found.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

inline Element commutator(const Group& g, const Element& x, const Element& y) {
  return g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y)));
}

struct DerivedSeries {
  /// G = G^(0), G^(1) = [G, G], ... until a term repeats or is trivial.
  std::vector<std::vector<Element>> chain;
  bool solvable = false;
  /// Number of commutator steps taken (the derived length when solvable).
  std::size_t length = 0;

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out;
    for (const auto& term : chain) out.push_back(term.size());
    return out;
  }
};

inline DerivedSeries derived_series(const Group& g) {
  DerivedSeries out;
  out.chain.push_back(g.enumerate());
  while (out.chain.back().size() > 1) {
    const auto& term = out.chain.back();
    std::set<Element> commutators;
    for (const Element& x : term)
      for (const Element& y : term) commutators.insert(commutator(g, x, y));
    auto next = subgroup_closure(g, {commutators.begin(), commutators.end()});
    const bool stable = next == term;
    out.chain.push_back(std::move(next));
    if (stable) break;
  }
  out.length = out.chain.size() - 1;
  out.solvable = out.chain.back().size() == 1;
  return out;
}

struct OrderResult {
  enum class Kind { Finite, Infinite, UnknownBeyond };
  Kind kind = Kind::Finite;
  std::uint64_t order = 0;
  /// For Infinite: why no positive power can be the identity.
  std::string certificate;

  static OrderResult finite(std::uint64_t n) { return {Kind::Finite, n, {}}; }
  static OrderResult infinite(std::string why) { return {Kind::Infinite, 0, std::move(why)}; }
  static OrderResult unknown() { return {Kind::UnknownBeyond, 0, {}}; }
};

/**
 * Element order. Finite cyclic and permutation factors are iterated (at most
 * `cap` steps); sums combine componentwise; a wreath element whose top has
 * infinite order has infinite order, because projecting to the top is a
 * homomorphism. If the top has order m, then ord(g) = m * ord(g^m) and g^m has
 * trivial top, whose powers act pointwise on the lamps.
 */
inline OrderResult element_order(const Group& g, const Element& x, std::uint64_t cap = 1'000'000) {
  g.check_member(x);
  switch (g.kind()) {
    case Group::Kind::Integers:
      if (x.scalar() == 0) return OrderResult::finite(1);
      return OrderResult::infinite("nonzero integer " + std::to_string(x.scalar()) + " in torsion-free Z");
    case Group::Kind::Cyclic:
    case Group::Kind::Permutation: {
      Element y = x;
      std::uint64_t k = 1;
      while (!g.is_identity(y)) {
        if (++k > cap) return OrderResult::unknown();
        y = g.mul(y, x);
      }
      return OrderResult::finite(k);
    }
    case Group::Kind::DirectSum: {
      const auto l = element_order(*g.left(), x.left(), cap);
      if (l.kind == OrderResult::Kind::Infinite) return OrderResult::infinite("left component: " + l.certificate);
      const auto r = element_order(*g.right(), x.right(), cap);
      if (r.kind == OrderResult::Kind::Infinite) return OrderResult::infinite("right component: " + r.certificate);
      if (l.kind != OrderResult::Kind::Finite || r.kind != OrderResult::Kind::Finite) return OrderResult::unknown();
      return OrderResult::finite(std::lcm(l.order, r.order));
    }
    case Group::Kind::Wreath: {
      const Group& c = *g.acting();
      const auto top = element_order(c, x.top(), cap);
      if (top.kind == OrderResult::Kind::Infinite)
        return OrderResult::infinite("top projection " + c.format(x.top()) + ": " + top.certificate);
      if (top.kind != OrderResult::Kind::Finite) return OrderResult::unknown();
      if (top.order > 1) {
        const auto rest = element_order(g, g.pow(x, top.order), cap);
        if (rest.kind != OrderResult::Kind::Finite) return rest;
        std::uint64_t n;
        if (__builtin_mul_overflow(top.order, rest.order, &n)) return OrderResult::unknown();
        return OrderResult::finite(n);
      }
      std::uint64_t n = 1;
      for (std::size_t i = 0; i < x.lamp_count(); ++i) {
        const auto v = element_order(*g.lamp(), x.lamp_value(i), cap);
        if (v.kind == OrderResult::Kind::Infinite)
          return OrderResult::infinite("lamp at " + c.format(x.lamp_position(i)) + ": " + v.certificate);
        if (v.kind != OrderResult::Kind::Finite) return OrderResult::unknown();
        n = std::lcm(n, v.order);
      }
      return OrderResult::finite(n);
    }
  }
  return OrderResult::unknown();
}

/// Samples pairs and checks top(g h) = top(g) top(h), the fact behind the
/// infinite-order certificates of wreath elements.
inline bool verify_top_projection(const Group& w, Rng& rng, std::size_t samples = 200, const SampleShape& shape = {}) {
  if (w.kind() != Group::Kind::Wreath) throw Error(ErrorCode::DomainMismatch, w.describe() + " is not a wreath product");
  const Group& c = *w.acting();
  for (std::size_t i = 0; i < samples; ++i) {
    const Element g = random_element(w, rng, shape);
    const Element h = random_element(w, rng, shape);
    if (w.mul(g, h).top() != c.mul(g.top(), h.top())) return false;
  }
  return true;
}

struct ProjectionImage {
  bool surjective = false;
  std::size_t image_size = 0;
};

/// Subgroup of D generated by the values of `maps` at position i of Z.
inline ProjectionImage projection_surjectivity(const GroupPtr& d, const std::vector<SupportMap>& maps, std::int64_t i) {
  if (!d->is_finite()) throw Error(ErrorCode::InfiniteGroup, d->describe() + " is infinite");
  const auto w = Group::wreath(Group::integers(), d);
  std::vector<Element> values;
  for (const SupportMap& f : maps) values.push_back(f.at(*w, Element::integer(i)));
  const auto image = subgroup_closure(*d, values);
  return {image.size() == *d->finite_order(), image.size()};
}

}  // namespace wreathlab
