#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "group.hpp"
#include "wreath.hpp"

namespace wreathlab {

using Rng = std::mt19937_64;

struct SampleShape {
  /// Integers are drawn from [-int_range, int_range].
  std::int64_t int_range = 20;
  /// Wreath elements get between 0 and max_support lamps.
  std::size_t max_support = 4;
};

inline Element random_element(const Group& g, Rng& rng, const SampleShape& shape = {});

inline Element random_non_identity(const Group& g, Rng& rng, const SampleShape& shape = {}) {
  if (g.finite_order() == 1u) throw Error(ErrorCode::TrivialGroup, g.describe() + " is trivial");
  while (true) {
    Element x = random_element(g, rng, shape);
    if (!g.is_identity(x)) return x;
  }
}

/// Deterministic given the generator state; used by property checks.
inline Element random_element(const Group& g, Rng& rng, const SampleShape& shape) {
  switch (g.kind()) {
    case Group::Kind::Integers:
      return Element::integer(std::uniform_int_distribution<std::int64_t>(-shape.int_range, shape.int_range)(rng));
    case Group::Kind::Cyclic:
    case Group::Kind::Permutation: {
      const auto n = static_cast<std::int64_t>(*g.finite_order());
      return Element::fin(std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng));
    }
    case Group::Kind::DirectSum: {
      Element l = random_element(*g.left(), rng, shape);
      Element r = random_element(*g.right(), rng, shape);
      return Element::pair(std::move(l), std::move(r));
    }
    case Group::Kind::Wreath: {
      const Group& c = *g.acting();
      const Group& a = *g.lamp();
      Element top = random_element(c, rng, shape);
      std::vector<Lamp> lamps;
      if (a.finite_order() != 1u) {
        const auto count = std::uniform_int_distribution<std::size_t>(0, shape.max_support)(rng);
        std::set<Element> used;
        for (std::size_t i = 0; i < count; ++i) {
          Element p = random_element(c, rng, shape);
          if (!used.insert(p).second) continue;
          lamps.push_back({std::move(p), random_non_identity(a, rng, shape)});
        }
      }
      return make_wreath_element(g, top, SupportMap::from_entries(g, std::move(lamps)));
    }
  }
  return g.identity();
}

}  // namespace wreathlab
