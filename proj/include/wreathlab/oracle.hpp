#pragma once

// Reference evaluators used to cross-check the main implementation. They are
// deliberately naive and share no code paths with wreath.hpp or metric.hpp
// beyond the group laws of the factors.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "group.hpp"

namespace wreathlab::oracle {

/// Dense lamp function on a window [lo, hi] of Z.
struct DenseLamps {
  std::int64_t lo = 0;
  std::vector<Element> values;

  Element at(const Group& a, std::int64_t x) const {
    if (x < lo || x >= lo + static_cast<std::int64_t>(values.size())) return a.identity();
    return values[static_cast<std::size_t>(x - lo)];
  }
};

inline DenseLamps materialize(const Group& a, const Element& g, std::int64_t lo, std::int64_t hi) {
  DenseLamps d{lo, std::vector<Element>(static_cast<std::size_t>(hi - lo + 1), a.identity())};
  for (std::size_t i = 0; i < g.lamp_count(); ++i)
    d.values[static_cast<std::size_t>(g.lamp_position(i).scalar() - lo)] = g.lamp_value(i);
  return d;
}

/**
 * (a1, f1)(a2, f2) = (a1 a2, x -> f1(x - a2) f2(x)) for wreath(Z, A), evaluated
 * at every integer of a window covering both shifted supports.
 */
inline Element naive_wreath_mul_over_z(const Group& w, const Element& g1, const Element& g2) {
  if (w.kind() != Group::Kind::Wreath || w.acting()->kind() != Group::Kind::Integers)
    throw Error(ErrorCode::DomainMismatch, "reference evaluator needs wreath(Z, A)");
  const Group& a = *w.lamp();
  const std::int64_t shift = g2.top().scalar();
  std::int64_t lo = 0, hi = 0;
  auto widen = [&](std::int64_t x) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  };
  for (std::size_t i = 0; i < g1.lamp_count(); ++i) {
    widen(g1.lamp_position(i).scalar());
    widen(g1.lamp_position(i).scalar() + shift);
  }
  for (std::size_t i = 0; i < g2.lamp_count(); ++i) widen(g2.lamp_position(i).scalar());

  const DenseLamps f1 = materialize(a, g1, lo, hi);
  const DenseLamps f2 = materialize(a, g2, lo, hi);
  std::vector<Element> flat{Element::integer(g1.top().scalar() + shift)};
  for (std::int64_t x = lo; x <= hi; ++x) {
    Element v = a.mul(f1.at(a, x - shift), f2.at(a, x));
    if (a.is_identity(v)) continue;
    flat.push_back(Element::integer(x));
    flat.push_back(std::move(v));
  }
  return Element::wreath_from_flat(std::move(flat));
}

/// Lamp function as an ordered map, with identity values omitted.
inline std::map<Element, Element> lamp_map(const Element& g) {
  std::map<Element, Element> out;
  for (std::size_t i = 0; i < g.lamp_count(); ++i) out.emplace(g.lamp_position(i), g.lamp_value(i));
  return out;
}

inline Element from_lamp_map(const Group& w, const Element& top, const std::map<Element, Element>& f) {
  std::vector<Element> flat{top};
  for (const auto& [p, v] : f) {
    if (w.lamp()->is_identity(v)) continue;
    flat.push_back(p);
    flat.push_back(v);
  }
  return Element::wreath_from_flat(std::move(flat));
}

/// (c_i, delta_e)(c0, f) = (c_i c0, f).
inline Element walker_action(const Group& w, const Element& c_i, const Element& g) {
  return from_lamp_map(w, w.acting()->mul(c_i, g.top()), lamp_map(g));
}

/// (e, delta_a)(c0, f) = (c0, x -> delta_a(x c0^-1) f(x)), evaluated at every x in
/// supp(f) together with c0.
inline Element lamp_action(const Group& w, const Element& a_value, const Element& g) {
  const Group& c = *w.acting();
  const Group& a = *w.lamp();
  const Element& c0 = g.top();
  auto f = lamp_map(g);
  std::vector<Element> positions{c0};
  for (const auto& [p, v] : f) positions.push_back(p);
  std::map<Element, Element> out;
  for (const Element& x : positions) {
    const Element delta = c.is_identity(c.mul(x, c.inv(c0))) ? a_value : a.identity();
    auto it = f.find(x);
    out[x] = a.mul(delta, it == f.end() ? a.identity() : it->second);
  }
  return from_lamp_map(w, c0, out);
}

/// Minimal word length of every element reachable by a generator word of
/// length <= radius, found by listing all words explicitly.
inline std::map<Element, int> enumerate_word_lengths(const Group& g, const std::vector<Element>& gens, int radius) {
  std::map<Element, int> best;
  // Depth-first over all words s_k ... s_1, built by left multiplication.
  auto visit = [&](auto&& self, const Element& value, int depth) -> void {
    auto it = best.find(value);
    if (it == best.end() || it->second > depth) best[value] = depth;
    if (depth == radius) return;
    for (const Element& s : gens) self(self, g.mul(s, value), depth + 1);
  };
  visit(visit, g.identity(), 0);
  return best;
}

}  // namespace wreathlab::oracle
