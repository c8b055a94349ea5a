#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "group.hpp"

namespace wreathlab {

struct Lamp {
  Element position;
  Element value;

  friend bool operator==(const Lamp&, const Lamp&) = default;
};

/**
 * Finitely supported function from the acting group C to the lamp group A.
 * Identity values are never stored and positions are strictly increasing.
 */
class SupportMap {
 public:
  SupportMap() = default;

  /// Normalizes arbitrary entries: sorts by position and drops identity values.
  /// Repeated positions are rejected rather than merged.
  static SupportMap from_entries(const Group& w, std::vector<Lamp> entries) {
    const Group& c = *w.acting();
    const Group& a = *w.lamp();
    for (const Lamp& l : entries) {
      c.check_member(l.position);
      a.check_member(l.value);
    }
    std::sort(entries.begin(), entries.end(),
              [](const Lamp& x, const Lamp& y) { return x.position < y.position; });
    SupportMap out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i > 0 && entries[i].position == entries[i - 1].position)
        throw Error(ErrorCode::InvalidArgument, "duplicate lamp position " + c.format(entries[i].position));
      if (!a.is_identity(entries[i].value)) out.lamps_.push_back(std::move(entries[i]));
    }
    return out;
  }

  static SupportMap of_element(const Element& g) {
    if (g.kind() != Element::Kind::Wreath) throw Error(ErrorCode::DomainMismatch, "not a wreath element");
    SupportMap out;
    for (std::size_t i = 0; i < g.lamp_count(); ++i) out.lamps_.push_back({g.lamp_position(i), g.lamp_value(i)});
    return out;
  }

  const std::vector<Lamp>& lamps() const noexcept { return lamps_; }
  std::size_t size() const noexcept { return lamps_.size(); }
  bool empty() const noexcept { return lamps_.empty(); }

  /// f(position); the lamp group's identity off the support.
  Element at(const Group& w, const Element& position) const {
    auto it = std::lower_bound(lamps_.begin(), lamps_.end(), position,
                               [](const Lamp& l, const Element& p) { return l.position < p; });
    if (it != lamps_.end() && it->position == position) return it->value;
    return w.lamp()->identity();
  }

  friend bool operator==(const SupportMap&, const SupportMap&) = default;

 private:
  std::vector<Lamp> lamps_;
};

/// Assembles (top, lamps) into the canonical element encoding.
inline Element make_wreath_element(const Group& w, const Element& top, const SupportMap& lamps) {
  w.acting()->check_member(top);
  std::vector<Element> flat;
  flat.reserve(1 + 2 * lamps.size());
  flat.push_back(top);
  for (const Lamp& l : lamps.lamps()) {
    flat.push_back(l.position);
    flat.push_back(l.value);
  }
  return Element::wreath_from_flat(std::move(flat));
}

namespace detail {

inline void expect_wreath(const Group& w, const Element& g) {
  if (w.kind() != Group::Kind::Wreath) throw Error(ErrorCode::DomainMismatch, w.describe() + " is not a wreath product");
  if (g.kind() != Element::Kind::Wreath || g.parts().size() % 2 == 0)
    throw Error(ErrorCode::DomainMismatch, "element is not in " + w.describe());
}

inline bool position_less(const std::pair<Element, Element>& x, const std::pair<Element, Element>& y) {
  return x.first < y.first;
}

}  // namespace detail

/// (t1, f1)(t2, f2) = (t1 t2, x -> f1(x t2^-1) f2(x)).
inline Element wreath_mul(const Group& w, const Element& g1, const Element& g2) {
  detail::expect_wreath(w, g1);
  detail::expect_wreath(w, g2);
  const Group& c = *w.acting();
  const Group& a = *w.lamp();
  const Element& t2 = g2.top();

  // f1 shifted: its lamp at p now sits at p t2.
  std::vector<std::pair<Element, Element>> shifted;
  shifted.reserve(g1.lamp_count());
  for (std::size_t i = 0; i < g1.lamp_count(); ++i)
    shifted.emplace_back(c.mul(g1.lamp_position(i), t2), g1.lamp_value(i));
  if (!std::is_sorted(shifted.begin(), shifted.end(), detail::position_less))
    std::sort(shifted.begin(), shifted.end(), detail::position_less);

  std::vector<Element> flat;
  flat.reserve(1 + 2 * (shifted.size() + g2.lamp_count()));
  flat.push_back(c.mul(g1.top(), t2));

  std::size_t i = 0, j = 0;
  const std::size_t n2 = g2.lamp_count();
  while (i < shifted.size() || j < n2) {
    if (j == n2 || (i < shifted.size() && shifted[i].first < g2.lamp_position(j))) {
      flat.push_back(std::move(shifted[i].first));
      flat.push_back(std::move(shifted[i].second));
      ++i;
    } else if (i == shifted.size() || g2.lamp_position(j) < shifted[i].first) {
      flat.push_back(g2.lamp_position(j));
      flat.push_back(g2.lamp_value(j));
      ++j;
    } else {
      Element v = a.mul(shifted[i].second, g2.lamp_value(j));
      if (!a.is_identity(v)) {
        flat.push_back(std::move(shifted[i].first));
        flat.push_back(std::move(v));
      }
      ++i;
      ++j;
    }
  }
  return Element::wreath_from_flat(std::move(flat));
}

/// (t, f)^-1 = (t^-1, x -> f(x t)^-1).
inline Element wreath_inv(const Group& w, const Element& g) {
  detail::expect_wreath(w, g);
  const Group& c = *w.acting();
  const Group& a = *w.lamp();
  const Element top_inv = c.inv(g.top());

  std::vector<std::pair<Element, Element>> moved;
  moved.reserve(g.lamp_count());
  for (std::size_t i = 0; i < g.lamp_count(); ++i)
    moved.emplace_back(c.mul(g.lamp_position(i), top_inv), a.inv(g.lamp_value(i)));
  if (!std::is_sorted(moved.begin(), moved.end(), detail::position_less))
    std::sort(moved.begin(), moved.end(), detail::position_less);

  std::vector<Element> flat;
  flat.reserve(1 + 2 * moved.size());
  flat.push_back(top_inv);
  for (auto& [p, v] : moved) {
    flat.push_back(std::move(p));
    flat.push_back(std::move(v));
  }
  return Element::wreath_from_flat(std::move(flat));
}

/// delta_value: `value` at the identity of C, identity elsewhere.
inline SupportMap make_delta(const Group& w, const Element& value) {
  if (w.kind() != Group::Kind::Wreath) throw Error(ErrorCode::DomainMismatch, w.describe() + " is not a wreath product");
  return SupportMap::from_entries(w, {{w.acting()->identity(), value}});
}

/// Walker generators (c_i, empty) labeled "C:<label>", then lamp generators
/// (e, delta_{a_j}) labeled "A:<label>".
inline GeneratingSet standard_generating_set(const Group& w, const GeneratingSet& gens_c, const GeneratingSet& gens_a) {
  if (w.kind() != Group::Kind::Wreath) throw Error(ErrorCode::DomainMismatch, w.describe() + " is not a wreath product");
  gens_c.validate(*w.acting());
  gens_a.validate(*w.lamp());
  std::vector<Generator> out;
  for (const Generator& s : gens_c.entries())
    out.push_back({"C:" + s.label, make_wreath_element(w, s.element, SupportMap{})});
  for (const Generator& s : gens_a.entries())
    out.push_back({"A:" + s.label, make_wreath_element(w, w.acting()->identity(), make_delta(w, s.element))});
  return GeneratingSet(std::move(out));
}

}  // namespace wreathlab
