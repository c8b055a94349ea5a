#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "generators.hpp"
#include "group.hpp"
#include "metric.hpp"
#include "wreath.hpp"

namespace wreathlab {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Smallest integer >= r.
inline std::int64_t ceil_of(const Rational& r) {
  const std::int64_t n = r.numerator();
  const std::int64_t d = r.denominator();  // always positive
  return n >= 0 ? (n + d - 1) / d : -((-n) / d);
}

/**
 * A bijection between two groups given by explicit forward and backward maps.
 * The maps are total on the source and target respectively.
 */
class Bijection {
 public:
  enum class Kind { Identity, Digit, Table, Lifted, Composed };
  using Map = std::function<Element(const Element&)>;

  Bijection(Kind kind, GroupPtr source, GroupPtr target, Map forward, Map backward, std::string description)
      : kind_(kind),
        source_(std::move(source)),
        target_(std::move(target)),
        forward_(std::move(forward)),
        backward_(std::move(backward)),
        description_(std::move(description)) {}

  Kind kind() const noexcept { return kind_; }
  const GroupPtr& source() const noexcept { return source_; }
  const GroupPtr& target() const noexcept { return target_; }
  const std::string& description() const noexcept { return description_; }

  Element forward(const Element& x) const { return forward_(x); }
  Element backward(const Element& y) const { return backward_(y); }

  bool fixes_identity() const {
    return forward(source_->identity()) == target_->identity() && backward(target_->identity()) == source_->identity();
  }

 private:
  Kind kind_;
  GroupPtr source_;
  GroupPtr target_;
  Map forward_;
  Map backward_;
  std::string description_;
};

inline Bijection identity_bijection(const GroupPtr& g) {
  auto id = [](const Element& x) { return x; };
  return Bijection(Bijection::Kind::Identity, g, g, id, id, "identity on " + g->describe());
}

/// Floor division with nonnegative remainder.
inline std::pair<std::int64_t, std::int64_t> floor_divmod(std::int64_t n, std::int64_t k) {
  std::int64_t q = n / k;
  std::int64_t r = n % k;
  if (r < 0) {
    r += k;
    --q;
  }
  return {q, r};
}

/**
 * n -> (floor(n / k), d_{n mod k}) from Z onto Z + D, where d_0 = e, ..., d_{k-1}
 * is the canonical enumeration of D and k = |D|. For |D| = 1 this is n -> (n, e).
 */
inline Bijection make_digit_bijection(const GroupPtr& d) {
  if (!d->is_finite()) throw Error(ErrorCode::InfiniteGroup, d->describe() + " is infinite");
  auto z = Group::integers();
  auto target = Group::direct_sum(z, d);
  auto digits = std::make_shared<const std::vector<Element>>(d->enumerate());
  auto digit_index = std::make_shared<std::map<Element, std::int64_t>>();
  for (std::size_t i = 0; i < digits->size(); ++i) digit_index->emplace((*digits)[i], static_cast<std::int64_t>(i));
  const auto k = static_cast<std::int64_t>(digits->size());

  auto forward = [digits, k](const Element& n) {
    if (n.kind() != Element::Kind::Int) throw Error(ErrorCode::DomainMismatch, "digit bijection expects an integer");
    auto [q, r] = floor_divmod(n.scalar(), k);
    return Element::pair(Element::integer(q), (*digits)[static_cast<std::size_t>(r)]);
  };
  auto backward = [target, digit_index, k](const Element& p) {
    target->check_member(p);
    const std::int64_t r = digit_index->at(p.right());
    return Element::integer(checked_add(checked_mul(p.left().scalar(), k), r));
  };
  return Bijection(Bijection::Kind::Digit, z, target, forward, backward,
                   "digit map Z -> " + target->describe());
}

/// Matches canonical enumeration indices: the i-th element of `a` goes to the
/// ((i + shift) mod n)-th element of `b`. shift = 0 fixes the identity.
inline Bijection index_matching_bijection(const GroupPtr& a, const GroupPtr& b, std::int64_t shift = 0) {
  if (!a->is_finite()) throw Error(ErrorCode::InfiniteGroup, a->describe() + " is infinite");
  if (!b->is_finite()) throw Error(ErrorCode::InfiniteGroup, b->describe() + " is infinite");
  if (*a->finite_order() != *b->finite_order()) throw Error(ErrorCode::SizeMismatch, "groups have different orders");
  auto fwd = std::make_shared<std::map<Element, Element>>();
  auto bwd = std::make_shared<std::map<Element, Element>>();
  const auto xs = a->enumerate();
  const auto ys = b->enumerate();
  const auto n = static_cast<std::int64_t>(xs.size());
  for (std::int64_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(floor_divmod(i + shift, n).second);
    fwd->emplace(xs[static_cast<std::size_t>(i)], ys[j]);
    bwd->emplace(ys[j], xs[static_cast<std::size_t>(i)]);
  }
  return Bijection(
      Bijection::Kind::Table, a, b, [fwd](const Element& x) { return fwd->at(x); },
      [bwd](const Element& y) { return bwd->at(y); },
      "index match " + a->describe() + " -> " + b->describe() + " shift " + std::to_string(shift));
}

/// phi with the images of x1 and x2 exchanged.
inline Bijection swap_images(const Bijection& phi, const Element& x1, const Element& x2) {
  phi.source()->check_member(x1);
  phi.source()->check_member(x2);
  const Element y1 = phi.forward(x1);
  const Element y2 = phi.forward(x2);
  auto fwd = [phi, x1, x2, y1, y2](const Element& x) {
    if (x == x1) return y2;
    if (x == x2) return y1;
    return phi.forward(x);
  };
  auto bwd = [phi, x1, x2, y1, y2](const Element& y) {
    if (y == y1) return x2;
    if (y == y2) return x1;
    return phi.backward(y);
  };
  return Bijection(Bijection::Kind::Composed, phi.source(), phi.target(), fwd, bwd,
                   phi.description() + " with two images swapped");
}

namespace detail {

inline Bijection::Map pointwise_lamps(GroupPtr source_w, GroupPtr target_w, Bijection::Map value_map) {
  return [source_w, target_w, value_map](const Element& g) {
    source_w->check_member(g);
    std::vector<Lamp> lamps;
    lamps.reserve(g.lamp_count());
    for (std::size_t i = 0; i < g.lamp_count(); ++i) lamps.push_back({g.lamp_position(i), value_map(g.lamp_value(i))});
    return make_wreath_element(*target_w, g.top(), SupportMap::from_entries(*target_w, std::move(lamps)));
  };
}

inline Bijection lift(const Bijection& phi, const GroupPtr& c, bool checked) {
  if (checked && !phi.fixes_identity())
    throw Error(ErrorCode::IdentityNotFixed, phi.description() + " does not fix the identity");
  auto src = Group::wreath(c, phi.source());
  auto tgt = Group::wreath(c, phi.target());
  auto fwd = pointwise_lamps(src, tgt, [phi](const Element& a) { return phi.forward(a); });
  auto bwd = pointwise_lamps(tgt, src, [phi](const Element& b) { return phi.backward(b); });
  return Bijection(Bijection::Kind::Lifted, src, tgt, fwd, bwd,
                   std::string(checked ? "lift" : "unchecked lift") + " of " + phi.description() + " over " +
                       c->describe());
}

}  // namespace detail

/// (c, f) -> (c, phi o f) from C wr A onto C wr B. phi must fix the identity so
/// that finite supports map to finite supports.
inline Bijection lift_bijection(const Bijection& phi, const GroupPtr& c) { return detail::lift(phi, c, true); }

/**
 * Applies phi to the stored lamp values only and drops values that land on the
 * identity. Agrees with lift_bijection when phi fixes the identity; otherwise
 * the result is generally not injective. Used to build counterexamples.
 */
inline Bijection lift_on_support(const Bijection& phi, const GroupPtr& c) { return detail::lift(phi, c, false); }

struct BaseConstants {
  int radius = 0;
  std::size_t sample_count = 0;
  Rational k1{0};  // max l_A(a) / l_B(phi(a))
  Rational k2{0};  // min of the same ratio
  std::optional<Element> k1_witness;
  std::optional<Element> k2_witness;
};

/// K1 and K2 with K2 l_B(phi(a)) <= l_A(a) <= K1 l_B(phi(a)) over the
/// non-identity elements of the source ball of the given radius.
inline BaseConstants measure_base_constants(const Bijection& phi, const GeneratingSet& s_a, const GeneratingSet& s_b,
                                            int radius, const Budgets& budgets = {}) {
  const Group& a = *phi.source();
  const BallTable ball = bfs_ball(a, s_a, radius, budgets.node_cap);
  const auto target = LengthOracle::for_radius(phi.target(), s_b, budgets.max_radius, budgets.node_cap);

  BaseConstants out;
  out.radius = radius;
  for (std::size_t i = 0; i < ball.node_count(); ++i) {
    const Element& x = ball.elements()[i];
    if (a.is_identity(x)) continue;
    const Element y = phi.forward(x);
    auto lb = target.length(y, budgets.max_radius);
    if (!lb) throw NotFoundWithin(budgets.max_radius, "image " + phi.target()->format(y));
    if (*lb == 0) throw Error(ErrorCode::InvalidArgument, "map sends a non-identity element to the identity");
    const Rational ratio(ball.distances()[i], *lb);
    if (!out.k1_witness || ratio > out.k1) {
      out.k1 = ratio;
      out.k1_witness = x;
    }
    if (!out.k2_witness || ratio < out.k2) {
      out.k2 = ratio;
      out.k2_witness = x;
    }
    ++out.sample_count;
  }
  return out;
}

struct PairWitness {
  Element x;
  Element y;
  int source_distance = 0;
  /// Empty when the target distance exceeded the search limit.
  std::optional<int> target_distance;
  int target_limit = 0;
};

struct DistortionReport {
  int radius = 0;
  std::size_t ball_size = 0;
  std::size_t pair_count = 0;
  std::size_t certified_pairs = 0;
  Rational k1{0};
  Rational k2{0};
  std::optional<Rational> min_ratio;
  std::optional<Rational> max_ratio;
  std::optional<PairWitness> min_witness;
  std::optional<PairWitness> max_witness;
  /// Pairs outside [K2, K1], at most kMaxViolations of them, in pair order.
  std::vector<PairWitness> violations;
  std::size_t violation_count = 0;
  int target_reach = 0;
  bool pass = false;

  static constexpr std::size_t kMaxViolations = 16;
};

/**
 * Checks K2 <= d_source(x, y) / d_target(phi x, phi y) <= K1 over every pair of
 * distinct elements of the source ball. A target distance is searched up to
 * ceil(d_source / K2) + 2; not finding it certifies a ratio below K2.
 */
inline DistortionReport measure_distortion(const Bijection& phi, const GeneratingSet& s_source,
                                           const GeneratingSet& s_target, int radius, const Budgets& budgets,
                                           const Rational& k1, const Rational& k2) {
  if (k2 <= Rational(0) || k1 < k2) throw Error(ErrorCode::InvalidArgument, "need 0 < K2 <= K1");
  constexpr int kSlack = 2;
  const Group& src = *phi.source();
  const Group& tgt = *phi.target();

  // Pairs in a radius-r ball are at most 2r apart, exactly the source oracle's reach.
  const LengthOracle source(phi.source(), s_source, radius, budgets.node_cap);
  const int target_needed = static_cast<int>(ceil_of(Rational(2 * radius) / k2)) + kSlack;
  const auto target = LengthOracle::for_radius(phi.target(), s_target, target_needed, budgets.node_cap);

  const auto& xs = source.ball().elements();
  std::vector<Element> images;
  std::vector<Element> image_inverses;
  std::vector<Element> source_inverses;
  for (const Element& x : xs) {
    images.push_back(phi.forward(x));
    image_inverses.push_back(tgt.inv(images.back()));
    source_inverses.push_back(src.inv(x));
  }

  DistortionReport out;
  out.radius = radius;
  out.ball_size = xs.size();
  out.k1 = k1;
  out.k2 = k2;
  out.target_reach = target.reach();

  auto violate = [&out](PairWitness w) {
    if (out.violations.size() < DistortionReport::kMaxViolations) out.violations.push_back(std::move(w));
    ++out.violation_count;
  };

  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      ++out.pair_count;
      const auto ds = source.length(src.mul(xs[i], source_inverses[j]));
      if (!ds) throw NotFoundWithin(source.reach(), "source pair distance");
      const int limit = static_cast<int>(ceil_of(Rational(*ds) / k2)) + kSlack;
      PairWitness w{xs[i], xs[j], *ds, target.length(tgt.mul(images[i], image_inverses[j]), limit), limit};
      if (!w.target_distance || *w.target_distance == 0) {
        violate(std::move(w));
        continue;
      }
      ++out.certified_pairs;
      const Rational ratio(*ds, *w.target_distance);
      if (!out.max_ratio || ratio > *out.max_ratio) {
        out.max_ratio = ratio;
        out.max_witness = w;
      }
      if (!out.min_ratio || ratio < *out.min_ratio) {
        out.min_ratio = ratio;
        out.min_witness = w;
      }
      if (ratio < k2 || ratio > k1) violate(std::move(w));
    }
  }
  out.pass = out.violation_count == 0;
  return out;
}

struct IsomorphismCertificate {
  bool pass = false;
  std::string failure;
  std::vector<Element> source_witness;  // offending vertices of the first ball
  std::size_t source_ball_size = 0;
  std::size_t target_ball_size = 0;
  std::size_t edge_count = 0;
  std::vector<std::uint64_t> source_growth;
  std::vector<std::uint64_t> target_growth;
};

/**
 * Decides whether `vertex_map` restricted to the radius-r ball of (G1, S1) is a
 * rooted isomorphism onto the radius-r ball of (G2, S2), with edges x -- s x.
 */
inline IsomorphismCertificate check_cayley_ball_isomorphism(const Group& g1, const GeneratingSet& s1, const Group& g2,
                                                            const GeneratingSet& s2, const Bijection& vertex_map,
                                                            int radius, std::size_t node_cap = kDefaultNodeCap) {
  if (s1.size() != s2.size())
    throw Error(ErrorCode::SizeMismatch, "generating sets have " + std::to_string(s1.size()) + " and " +
                                             std::to_string(s2.size()) + " elements");
  const BallTable b1 = bfs_ball(g1, s1, radius, node_cap, true);
  const BallTable b2 = bfs_ball(g2, s2, radius, node_cap, true);

  IsomorphismCertificate out;
  out.source_ball_size = b1.node_count();
  out.target_ball_size = b2.node_count();
  out.source_growth = b1.sphere_sizes();
  out.target_growth = b2.sphere_sizes();

  auto fail = [&out](std::string why, std::vector<Element> witness) {
    out.pass = false;
    out.failure = std::move(why);
    out.source_witness = std::move(witness);
    return out;
  };

  if (vertex_map.forward(g1.identity()) != g2.identity()) return fail("root is not mapped to root", {g1.identity()});

  std::vector<std::size_t> image(b1.node_count());
  std::vector<std::optional<std::size_t>> preimage(b2.node_count());
  for (std::size_t i = 0; i < b1.node_count(); ++i) {
    const Element& x = b1.elements()[i];
    auto j = b2.index_of(vertex_map.forward(x));
    if (!j) return fail("vertex maps outside the target ball", {x});
    if (preimage[*j]) return fail("two vertices share an image", {b1.elements()[*preimage[*j]], x});
    if (b1.distances()[i] != b2.distances()[*j]) return fail("vertex depth not preserved", {x});
    preimage[*j] = i;
    image[i] = *j;
  }
  if (b1.node_count() != b2.node_count()) {
    for (std::size_t j = 0; j < b2.node_count(); ++j) {
      if (!preimage[j]) return fail("target vertex " + g2.format(b2.elements()[j]) + " has no preimage", {});
    }
  }

  auto undirected = [](std::size_t a, std::size_t b) { return std::minmax(a, b); };
  std::set<std::pair<std::size_t, std::size_t>> mapped, target_edges;
  for (const BallEdge& e : b1.edges()) mapped.insert(undirected(image[e.from], image[e.to]));
  for (const BallEdge& e : b2.edges()) target_edges.insert(undirected(e.from, e.to));
  out.edge_count = mapped.size();

  std::vector<std::pair<std::size_t, std::size_t>> diff;
  std::set_symmetric_difference(mapped.begin(), mapped.end(), target_edges.begin(), target_edges.end(),
                                std::back_inserter(diff));
  if (!diff.empty()) {
    const auto [a, b] = diff.front();
    const bool only_in_source = mapped.count(diff.front()) != 0;
    return fail(only_in_source ? "edge not preserved" : "edge not reflected",
                {b1.elements()[*preimage[a]], b1.elements()[*preimage[b]]});
  }
  out.pass = true;
  return out;
}

}  // namespace wreathlab
