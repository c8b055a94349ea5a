#pragma once

#include <set>
#include <string>
#include <vector>

#include "group.hpp"
#include "wreath.hpp"

namespace wreathlab {

enum class GeneratorStyle {
  /// ±1 for Z and cyclic groups, generators plus inverses for permutation groups.
  Standard,
  /// Like Standard, except that finite cyclic and permutation factors use every
  /// non-identity element.
  AllFiniteLeaves,
};

inline GeneratingSet default_generating_set(const Group& g, GeneratorStyle style = GeneratorStyle::Standard);

namespace detail {

inline void push_unique(std::vector<Generator>& out, std::set<Element>& seen, std::string label, Element e) {
  if (seen.insert(e).second) out.push_back({std::move(label), std::move(e)});
}

}  // namespace detail

/// Generating set of a group built from its expression tree. Direct sums label
/// their factors "L:" and "R:", wreath products "C:" and "A:".
inline GeneratingSet default_generating_set(const Group& g, GeneratorStyle style) {
  std::vector<Generator> out;
  std::set<Element> seen;
  switch (g.kind()) {
    case Group::Kind::Integers:
      out.push_back({"+1", Element::integer(1)});
      out.push_back({"-1", Element::integer(-1)});
      break;
    case Group::Kind::Cyclic:
    case Group::Kind::Permutation: {
      if (*g.finite_order() == 1) break;
      if (style == GeneratorStyle::AllFiniteLeaves) return all_elements_generating_set(g);
      if (g.kind() == Group::Kind::Cyclic) {
        detail::push_unique(out, seen, "+1", Element::fin(1));
        detail::push_unique(out, seen, "-1", g.inv(Element::fin(1)));
        break;
      }
      const PermutationTable& t = g.permutations();
      for (std::size_t i = 0; i < t.generators().size(); ++i) {
        const auto idx = t.index_of(t.generators()[i]);
        const Element e = Element::fin(static_cast<std::int64_t>(*idx));
        if (g.is_identity(e)) continue;
        const std::string label = "g" + std::to_string(i + 1);
        detail::push_unique(out, seen, label, e);
        detail::push_unique(out, seen, label + "^-1", g.inv(e));
      }
      break;
    }
    case Group::Kind::DirectSum: {
      const Group& l = *g.left();
      const Group& r = *g.right();
      const GeneratingSet ls = default_generating_set(l, style);
      const GeneratingSet rs = default_generating_set(r, style);
      for (const Generator& s : ls.entries()) out.push_back({"L:" + s.label, Element::pair(s.element, r.identity())});
      for (const Generator& s : rs.entries()) out.push_back({"R:" + s.label, Element::pair(l.identity(), s.element)});
      break;
    }
    case Group::Kind::Wreath:
      return standard_generating_set(g, default_generating_set(*g.acting(), style),
                                     default_generating_set(*g.lamp(), style));
  }
  return GeneratingSet(std::move(out));
}

}  // namespace wreathlab
