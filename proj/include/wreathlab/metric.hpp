#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "group.hpp"
#include "wreath.hpp"

namespace wreathlab {

inline constexpr std::size_t kDefaultNodeCap = 5'000'000;

/// Search limits shared by every length computation.
struct Budgets {
  int max_radius = 8;
  std::size_t node_cap = kDefaultNodeCap;
};

struct BallEdge {
  std::size_t from;
  std::size_t generator;
  std::size_t to;
};

/**
 * Word lengths of every element within `radius` of the identity, in canonical
 * element order. Built by left multiplication g -> s g, so the stored lengths
 * are l(g) = d(g, e) for the right-invariant word metric.
 */
class BallTable {
 public:
  const Element& center() const noexcept { return center_; }
  int radius() const noexcept { return radius_; }
  bool complete() const noexcept { return complete_; }
  std::size_t node_count() const noexcept { return elements_.size(); }

  const std::vector<Element>& elements() const noexcept { return elements_; }
  const std::vector<int>& distances() const noexcept { return dist_; }
  /// sphere_sizes()[k] = #{g : l(g) = k}.
  const std::vector<std::uint64_t>& sphere_sizes() const noexcept { return spheres_; }
  /// Edges s g between stored elements, only when requested at construction.
  const std::vector<BallEdge>& edges() const noexcept { return edges_; }

  std::optional<std::size_t> index_of(const Element& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<int> find(const Element& g) const {
    auto i = index_of(g);
    if (!i) return std::nullopt;
    return dist_[*i];
  }

  bool contains(const Element& g) const { return index_.count(g) != 0; }

 private:
  friend BallTable bfs_ball(const Group&, const GeneratingSet&, int, std::size_t, bool);

  Element center_;
  int radius_ = 0;
  bool complete_ = true;
  std::vector<Element> elements_;
  std::vector<int> dist_;
  std::vector<std::uint64_t> spheres_;
  std::vector<BallEdge> edges_;
  std::unordered_map<Element, std::size_t, ElementHash> index_;
};

/**
 * Complete Cayley ball around the identity. Frontiers are expanded in canonical
 * order, so the result does not depend on hashing. Throws BallCapExceeded
 * instead of returning a truncated ball.
 */
inline BallTable bfs_ball(const Group& g, const GeneratingSet& s, int radius, std::size_t node_cap = kDefaultNodeCap,
                          bool record_edges = false) {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "radius must be nonnegative");
  if (node_cap < 1) throw Error(ErrorCode::InvalidArgument, "node cap must be positive");
  s.validate(g);

  std::unordered_map<Element, int, ElementHash> dist;
  dist.emplace(g.identity(), 0);
  std::vector<Element> frontier{g.identity()};
  std::vector<std::uint64_t> spheres{1};

  for (int level = 1; level <= radius && !frontier.empty(); ++level) {
    std::vector<Element> next;
    for (const Element& x : frontier) {
      for (const Generator& gen : s.entries()) {
        Element y = g.mul(gen.element, x);
        if (dist.count(y)) continue;
        if (dist.size() >= node_cap) throw BallCapExceeded(dist.size() + 1, node_cap);
        dist.emplace(y, level);
        next.push_back(std::move(y));
      }
    }
    std::sort(next.begin(), next.end());
    if (!next.empty()) spheres.push_back(next.size());
    frontier = std::move(next);
  }

  BallTable ball;
  ball.center_ = g.identity();
  ball.radius_ = radius;
  ball.spheres_ = std::move(spheres);
  ball.elements_.reserve(dist.size());
  for (auto& [e, d] : dist) ball.elements_.push_back(e);
  std::sort(ball.elements_.begin(), ball.elements_.end());
  ball.dist_.reserve(ball.elements_.size());
  ball.index_.reserve(ball.elements_.size());
  for (std::size_t i = 0; i < ball.elements_.size(); ++i) {
    ball.dist_.push_back(dist.at(ball.elements_[i]));
    ball.index_.emplace(ball.elements_[i], i);
  }
  if (record_edges) {
    for (std::size_t i = 0; i < ball.elements_.size(); ++i) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (auto to = ball.index_of(g.mul(s[j].element, ball.elements_[i]))) ball.edges_.push_back({i, j, *to});
      }
    }
  }
  return ball;
}

inline std::vector<std::uint64_t> growth_series(const Group& g, const GeneratingSet& s, int radius,
                                                std::size_t node_cap = kDefaultNodeCap) {
  return bfs_ball(g, s, radius, node_cap).sphere_sizes();
}

/**
 * Exact word lengths up to twice the radius of one stored ball.
 *
 * If l(g) = L with r < L <= 2r, a geodesic word for g splits as g = u v with
 * l(v) = r and l(u) = L - r, so L = r + min over v in the r-sphere of l(g v^-1).
 */
class LengthOracle {
 public:
  LengthOracle(GroupPtr group, const GeneratingSet& gens, int half_radius, std::size_t node_cap = kDefaultNodeCap)
      : group_(std::move(group)), ball_(bfs_ball(*group_, gens, half_radius, node_cap)) {
    const int r = ball_.radius();
    for (std::size_t i = 0; i < ball_.node_count(); ++i) {
      if (ball_.distances()[i] == r) sphere_inverses_.push_back(group_->inv(ball_.elements()[i]));
    }
  }

  /// Oracle sized to certify every length up to `max_radius`.
  static LengthOracle for_radius(GroupPtr group, const GeneratingSet& gens, int max_radius,
                                 std::size_t node_cap = kDefaultNodeCap) {
    if (max_radius < 0) throw Error(ErrorCode::InvalidArgument, "radius must be nonnegative");
    return LengthOracle(std::move(group), gens, (max_radius + 1) / 2, node_cap);
  }

  const Group& group() const noexcept { return *group_; }
  const BallTable& ball() const noexcept { return ball_; }
  /// Largest length this oracle can certify.
  int reach() const noexcept { return 2 * ball_.radius(); }

  /// l(g) if it is at most `limit` (clamped to reach()); nullopt otherwise.
  std::optional<int> length(const Element& g, int limit) const {
    limit = std::min(limit, reach());
    if (auto d = ball_.find(g)) {
      if (*d <= limit) return d;
      return std::nullopt;
    }
    const int r = ball_.radius();
    if (limit <= r) return std::nullopt;
    int best = limit - r + 1;
    for (const Element& v_inv : sphere_inverses_) {
      auto d = ball_.find(group_->mul(g, v_inv));
      if (d && *d < best) {
        best = *d;
        if (best == 1) break;  // g is outside B_r, so r + 1 is optimal
      }
    }
    if (best > limit - r) return std::nullopt;
    return r + best;
  }

  std::optional<int> length(const Element& g) const { return length(g, reach()); }

  std::optional<int> distance(const Element& x, const Element& y, int limit) const {
    return length(group_->mul(x, group_->inv(y)), limit);
  }

 private:
  GroupPtr group_;
  BallTable ball_;
  std::vector<Element> sphere_inverses_;
};

/// Verdict of a bounded length search; `length` is empty when the element lies
/// beyond `searched_radius`.
struct LengthVerdict {
  std::optional<int> length;
  int searched_radius = 0;
};

inline LengthVerdict word_length(GroupPtr g, const GeneratingSet& s, const Element& x, int max_radius,
                                 std::size_t node_cap = kDefaultNodeCap) {
  g->check_member(x);
  auto oracle = LengthOracle::for_radius(std::move(g), s, max_radius, node_cap);
  return {oracle.length(x, max_radius), max_radius};
}

/// d(x, y) = l(x y^-1).
inline LengthVerdict distance(const GroupPtr& g, const GeneratingSet& s, const Element& x, const Element& y,
                              int max_radius, std::size_t node_cap = kDefaultNodeCap) {
  g->check_member(x);
  g->check_member(y);
  return word_length(g, s, g->mul(x, g->inv(y)), max_radius, node_cap);
}

/// Parts of the length decomposition l(c0, f) = K + sum_c l_A(f(c)).
struct KDecomposition {
  int total_length = 0;
  int lamp_length_sum = 0;
  int k = 0;
};

/// Measures K for one wreath element from certified lengths; throws
/// NotFoundWithin when any length exceeds the oracles' reach.
inline KDecomposition wreath_K(const LengthOracle& wreath_lengths, const LengthOracle& lamp_lengths, const Element& g) {
  const Group& w = wreath_lengths.group();
  if (w.kind() != Group::Kind::Wreath) throw Error(ErrorCode::DomainMismatch, w.describe() + " is not a wreath product");
  w.check_member(g);
  KDecomposition out;
  auto total = wreath_lengths.length(g);
  if (!total) throw NotFoundWithin(wreath_lengths.reach(), "wreath element " + w.format(g));
  out.total_length = *total;
  for (std::size_t i = 0; i < g.lamp_count(); ++i) {
    auto l = lamp_lengths.length(g.lamp_value(i));
    if (!l) throw NotFoundWithin(lamp_lengths.reach(), "lamp value " + w.lamp()->format(g.lamp_value(i)));
    out.lamp_length_sum += *l;
  }
  out.k = out.total_length - out.lamp_length_sum;
  return out;
}

inline KDecomposition wreath_K(const GroupPtr& w, const GeneratingSet& s_w, const GeneratingSet& s_a, const Element& g,
                               const Budgets& budgets = {}) {
  auto wl = LengthOracle::for_radius(w, s_w, budgets.max_radius, budgets.node_cap);
  auto al = LengthOracle::for_radius(w->lamp(), s_a, budgets.max_radius, budgets.node_cap);
  return wreath_K(wl, al, g);
}

}  // namespace wreathlab
