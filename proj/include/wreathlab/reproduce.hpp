#pragma once

// The reproduction suite: each check runs one construction end to end on
// finite balls and returns a deterministic JSON record.

#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "equivalence.hpp"
#include "expression.hpp"
#include "generators.hpp"
#include "metric.hpp"
#include "oracle.hpp"
#include "sampling.hpp"
#include "structure.hpp"

namespace wreathlab::reproduce {

using Json = nlohmann::ordered_json;

struct CheckOutcome {
  int id = 0;
  std::string name;
  bool pass = false;
  Json details;
};

inline std::string verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

inline Json rational_json(const Rational& r) { return to_string(r); }

/// Associativity, identity and inverse laws on random triples.
inline CheckOutcome group_axioms(std::size_t triples = 1000) {
  CheckOutcome out{1, "group axioms", true, Json::object()};
  const std::vector<std::string> groups = {"Z",         "cyclic(60)",     "A5", "S4", "sum(Z, A5)",
                                           "wreath(Z, Z)", "wreath(Z, sum(Z, A5))"};
  Json per_group = Json::array();
  std::uint64_t seed = 1;
  for (const std::string& text : groups) {
    const auto g = parse_group(text);
    Rng rng(seed++);
    std::size_t failures = 0;
    for (std::size_t i = 0; i < triples; ++i) {
      const Element x = random_element(*g, rng);
      const Element y = random_element(*g, rng);
      const Element z = random_element(*g, rng);
      const Element e = g->identity();
      const Element xi = g->inv(x);
      const Element xy = g->mul(x, y);
      bool ok = g->mul(xy, z) == g->mul(x, g->mul(y, z));
      ok = ok && g->mul(x, e) == x && g->mul(e, x) == x;
      ok = ok && g->mul(x, xi) == e && g->mul(xi, x) == e && g->inv(xi) == x;
      ok = ok && g->contains(xy) && Element::decode(x.encode()) == x;
      if (!ok) ++failures;
    }
    per_group.push_back(Json{{"group", text}, {"triples", triples}, {"failures", failures}});
    out.pass = out.pass && failures == 0;
  }
  out.details["groups"] = per_group;
  return out;
}

/// wreath_mul against the dense pointwise evaluation of the multiplication law.
inline CheckOutcome wreath_law_oracle(std::size_t pairs = 1000) {
  CheckOutcome out{2, "wreath law vs pointwise evaluator", true, Json::object()};
  const auto w = parse_group("wreath(Z, cyclic(2))");
  Rng rng(2);
  const SampleShape shape{5, 11};
  std::size_t mismatches = 0;
  Json first_mismatch;
  for (std::size_t i = 0; i < pairs; ++i) {
    const Element g1 = random_element(*w, rng, shape);
    const Element g2 = random_element(*w, rng, shape);
    const Element fast = w->mul(g1, g2);
    const Element slow = oracle::naive_wreath_mul_over_z(*w, g1, g2);
    if (fast != slow) {
      if (!mismatches) first_mismatch = Json{w->format(g1), w->format(g2), w->format(fast), w->format(slow)};
      ++mismatches;
    }
  }
  out.pass = mismatches == 0;
  out.details = Json{{"group", w->describe()}, {"pairs", pairs}, {"support_window", Json::array({-5, 5})},
                     {"mismatches", mismatches}};
  if (mismatches) out.details["first_mismatch"] = first_mismatch;
  return out;
}

/// Left multiplication by a standard generator, against the explicit action
/// formulas for walker and lamp generators.
inline CheckOutcome generator_action(std::size_t samples = 500) {
  CheckOutcome out{3, "generator action formulas", true, Json::object()};
  const std::vector<std::string> groups = {"wreath(Z, A5)", "wreath(Z, sum(Z, A5))"};
  Rng rng(3);
  Json per_group = Json::array();
  std::size_t total = 0;
  for (const std::string& text : groups) {
    const auto w = parse_group(text);
    const GeneratingSet s = default_generating_set(*w);
    const Group& c = *w->acting();
    const Group& a = *w->lamp();
    std::size_t failures = 0, walker = 0, lamp = 0;
    const std::size_t n = samples / groups.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Generator& gen = s[std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng)];
      const Element g = random_element(*w, rng);
      const Element moved = w->mul(gen.element, g);
      const Element moved_back = w->mul(w->inv(gen.element), g);
      bool ok;
      if (gen.element.lamp_count() == 0) {
        ++walker;
        const Element& ci = gen.element.top();
        ok = moved == oracle::walker_action(*w, ci, g) && moved_back == oracle::walker_action(*w, c.inv(ci), g);
        ok = ok && oracle::lamp_map(moved) == oracle::lamp_map(g);
      } else {
        ++lamp;
        const Element& ai = gen.element.lamp_value(0);
        ok = moved == oracle::lamp_action(*w, ai, g) && moved_back == oracle::lamp_action(*w, a.inv(ai), g);
        // Only the lamp under the walker may change.
        auto before = oracle::lamp_map(g);
        auto after = oracle::lamp_map(moved);
        before.erase(g.top());
        after.erase(g.top());
        ok = ok && moved.top() == g.top() && before == after;
      }
      if (!ok) ++failures;
    }
    total += n;
    out.pass = out.pass && failures == 0;
    per_group.push_back(Json{{"group", text},
                             {"generators", s.size()},
                             {"walker_samples", walker},
                             {"lamp_samples", lamp},
                             {"failures", failures}});
  }
  out.details = Json{{"samples", total}, {"groups", per_group}};
  return out;
}

/// Breadth-first distances against exhaustive enumeration of generator words.
inline CheckOutcome bfs_vs_words(int radius = 4) {
  CheckOutcome out{4, "BFS vs word enumeration", true, Json::object()};
  const auto w = parse_group("wreath(Z, cyclic(2))");
  const GeneratingSet s = default_generating_set(*w);
  const BallTable ball = bfs_ball(*w, s, radius);
  std::vector<Element> gens;
  for (const Generator& g : s.entries()) gens.push_back(g.element);
  const auto words = oracle::enumerate_word_lengths(*w, gens, radius);

  std::size_t mismatches = ball.node_count() == words.size() ? 0 : 1;
  for (const auto& [e, d] : words) {
    auto found = ball.find(e);
    if (!found || *found != d) ++mismatches;
  }
  const auto& spheres = ball.sphere_sizes();
  const bool prefix_ok = spheres.size() >= 3 && spheres[0] == 1 && spheres[1] == 3 && spheres[2] == 6;
  out.pass = mismatches == 0 && prefix_ok;
  out.details = Json{{"group", w->describe()},     {"radius", radius},          {"ball_size", ball.node_count()},
                     {"word_elements", words.size()}, {"sphere_sizes", spheres}, {"mismatches", mismatches}};
  return out;
}

/// K = l(c0, f) - sum l_A(f(c)) for every walker position and lamp pattern
/// inside [-window, window], compared across lamp groups with unit-length lamp values.
inline CheckOutcome k_invariance(int window = 2) {
  if (window < 0 || window > 3) throw Error(ErrorCode::InvalidArgument, "window must lie in [0, 3]");
  CheckOutcome out{5, "K independent of the lamp group", true, Json::object()};
  struct LampSetup {
    std::string expr;
    std::vector<std::string> unit_values;  // all of lamp length 1
  };
  const std::vector<LampSetup> setups = {
      {"cyclic(2)", {"1"}},
      {"cyclic(3)", {"1", "-1"}},
      {"sum(Z, cyclic(2))", {"(1, #0)", "(-1, #0)", "(0, #1)"}},
  };
  const int kWindow = window;
  // A walk from 0 over [-w, w] ending at c0 is at most 5w steps, plus 2w + 1 unit lamps.
  const int kMaxLength = 7 * kWindow + 2;

  struct Prepared {
    GroupPtr w;
    LengthOracle wl;
    LengthOracle al;
    std::vector<Element> units;
  };
  std::vector<Prepared> prepared;
  for (const LampSetup& setup : setups) {
    const auto a = parse_group(setup.expr);
    const auto w = Group::wreath(Group::integers(), a);
    const GeneratingSet sa = default_generating_set(*a);
    const GeneratingSet sw = default_generating_set(*w);
    std::vector<Element> units;
    for (const std::string& u : setup.unit_values) units.push_back(parse_element(*a, u));
    prepared.push_back({w, LengthOracle::for_radius(w, sw, kMaxLength), LengthOracle::for_radius(a, sa, 2), units});
  }

  Json table = Json::array();
  std::size_t configurations = 0, disagreements = 0, negative = 0;
  int max_k = 0;
  for (int c0 = -kWindow; c0 <= kWindow; ++c0) {
    for (unsigned pattern = 0; pattern < (1u << (2 * kWindow + 1)); ++pattern) {
      // Two assignments of unit values per configuration.
      for (unsigned variant = 0; variant < 2; ++variant) {
        std::vector<int> ks;
        for (const Prepared& p : prepared) {
          std::vector<Lamp> lamps;
          for (int bit = 0; bit < 2 * kWindow + 1; ++bit) {
            if (!(pattern >> bit & 1u)) continue;
            const Element& v = p.units[(static_cast<std::size_t>(bit) + variant) % p.units.size()];
            lamps.push_back({Element::integer(bit - kWindow), v});
          }
          const Element g = make_wreath_element(*p.w, Element::integer(c0), SupportMap::from_entries(*p.w, lamps));
          const KDecomposition k = wreath_K(p.wl, p.al, g);
          ks.push_back(k.k);
          if (k.k < 0) ++negative;
          max_k = std::max(max_k, k.k);
        }
        ++configurations;
        const bool agree = std::all_of(ks.begin(), ks.end(), [&](int k) { return k == ks.front(); });
        if (!agree) ++disagreements;
        if (variant == 0) table.push_back(Json::array({c0, pattern, ks.front()}));
      }
    }
  }
  out.pass = disagreements == 0 && negative == 0;
  Json groups = Json::array();
  for (const LampSetup& s : setups) groups.push_back("wreath(Z, " + s.expr + ")");
  out.details = Json{{"groups", groups},
                     {"window", kWindow},
                     {"configurations", configurations},
                     {"disagreements", disagreements},
                     {"negative_k", negative},
                     {"max_k", max_k},
                     {"k_table", table}};
  return out;
}

struct LiftSetup {
  int base_radius = 12;
  int lift_radius = 3;
  std::string lamp = "cyclic(2)";
};

/// Base constants of the digit map Z -> Z + D, then the distortion of its lift
/// over Z checked pair by pair against the same constants.
inline CheckOutcome lift_distortion(const LiftSetup& setup = {}) {
  CheckOutcome out{6, "lifted map is bi-Lipschitz on the ball", true, Json::object()};
  const auto d = parse_group(setup.lamp);
  const Bijection phi = make_digit_bijection(d);
  const GeneratingSet sa = default_generating_set(*phi.source());
  const GeneratingSet sb = default_generating_set(*phi.target());
  const Budgets budgets{2 * setup.base_radius + 2, kDefaultNodeCap};
  const BaseConstants base = measure_base_constants(phi, sa, sb, setup.base_radius, budgets);

  const Bijection lifted = lift_bijection(phi, Group::integers());
  const DistortionReport report =
      measure_distortion(lifted, default_generating_set(*lifted.source()), default_generating_set(*lifted.target()),
                         setup.lift_radius, budgets, base.k1, base.k2);
  out.pass = report.pass;

  const Group& src = *lifted.source();
  auto witness = [&](const std::optional<PairWitness>& w) -> Json {
    if (!w) return nullptr;
    return Json{{"x", src.format(w->x)},
                {"y", src.format(w->y)},
                {"source_distance", w->source_distance},
                {"target_distance", w->target_distance ? Json(*w->target_distance) : Json(nullptr)}};
  };
  Json violations = Json::array();
  for (const auto& v : report.violations) violations.push_back(witness(v));
  out.details = Json{
      {"base", Json{{"map", phi.description()},
                    {"radius", base.radius},
                    {"samples", base.sample_count},
                    {"K1", rational_json(base.k1)},
                    {"K1_witness", phi.source()->format(*base.k1_witness)},
                    {"K2", rational_json(base.k2)},
                    {"K2_witness", phi.source()->format(*base.k2_witness)}}},
      {"lift", Json{{"source", src.describe()},
                    {"target", lifted.target()->describe()},
                    {"radius", report.radius},
                    {"ball_size", report.ball_size},
                    {"pairs", report.pair_count},
                    {"certified_pairs", report.certified_pairs},
                    {"target_reach", report.target_reach},
                    {"min_ratio", report.min_ratio ? rational_json(*report.min_ratio) : Json(nullptr)},
                    {"min_witness", witness(report.min_witness)},
                    {"max_ratio", report.max_ratio ? rational_json(*report.max_ratio) : Json(nullptr)},
                    {"max_witness", witness(report.max_witness)},
                    {"violation_count", report.violation_count},
                    {"violations", violations}}}};
  return out;
}

/// Rooted isomorphism of Cayley balls of Z wr cyclic(60) and Z wr A5 with
/// every non-identity lamp element as a generator.
inline CheckOutcome ball_isometry(int radius = 2) {
  CheckOutcome out{7, "Cayley balls of Z wr cyclic(60) and Z wr A5 coincide", true, Json::object()};
  const auto z = Group::integers();
  const Bijection beta = index_matching_bijection(Group::cyclic(60), named_permutation_group("A5"));
  const Bijection vertex_map = lift_bijection(beta, z);
  const Group& g1 = *vertex_map.source();
  const Group& g2 = *vertex_map.target();
  const GeneratingSet s1 = default_generating_set(g1, GeneratorStyle::AllFiniteLeaves);
  const GeneratingSet s2 = default_generating_set(g2, GeneratorStyle::AllFiniteLeaves);
  const IsomorphismCertificate cert = check_cayley_ball_isomorphism(g1, s1, g2, s2, vertex_map, radius);
  const bool growth_equal = cert.source_growth == cert.target_growth;
  out.pass = cert.pass && growth_equal;
  out.details = Json{{"source", g1.describe()},
                     {"target", g2.describe()},
                     {"generators", s1.size()},
                     {"radius", radius},
                     {"ball_size", cert.source_ball_size},
                     {"edges", cert.edge_count},
                     {"source_growth", cert.source_growth},
                     {"target_growth", cert.target_growth},
                     {"isomorphism", verdict(cert.pass)},
                     {"growth_equal", growth_equal}};
  if (!cert.pass) out.details["failure"] = cert.failure;
  return out;
}

/// Solvability, torsion and element-order witnesses for G = Z wr Z and
/// H = Z wr (Z + A5).
inline CheckOutcome structural_contrast(std::size_t samples = 200) {
  CheckOutcome out{8, "structural contrast of G and H", true, Json::object()};
  Json checks = Json::object();
  auto record = [&](const std::string& name, bool ok) {
    checks[name] = verdict(ok);
    out.pass = out.pass && ok;
  };

  const auto c60 = Group::cyclic(60);
  const auto a5 = named_permutation_group("A5");
  const auto s4 = named_permutation_group("S4");
  const DerivedSeries ds_c60 = derived_series(*c60);
  const DerivedSeries ds_a5 = derived_series(*a5);
  const DerivedSeries ds_s4 = derived_series(*s4);
  record("cyclic(60) solvable", ds_c60.solvable);
  record("A5 series [60, 60], not solvable", !ds_a5.solvable && ds_a5.sizes() == std::vector<std::size_t>{60, 60});
  record("S4 series [24, 12, 4, 1]", ds_s4.solvable && ds_s4.sizes() == std::vector<std::size_t>{24, 12, 4, 1});

  const auto g = parse_group("wreath(Z, Z)");
  const auto h = parse_group("wreath(Z, sum(Z, A5))");
  Rng rng(8);
  record("top projection is a homomorphism on G", verify_top_projection(*g, rng, samples));
  record("top projection is a homomorphism on H", verify_top_projection(*h, rng, samples));

  const Element walk_g = parse_element(*g, "(1, {})");
  const Element walk_h = parse_element(*h, "(1, {})");
  record("(1, {}) has infinite order in G", element_order(*g, walk_g).kind == OrderResult::Kind::Infinite);
  record("(1, {}) has infinite order in H", element_order(*h, walk_h).kind == OrderResult::Kind::Infinite);

  std::size_t torsion_in_g = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Element x = random_non_identity(*g, rng);
    if (element_order(*g, x).kind != OrderResult::Kind::Infinite) ++torsion_in_g;
  }
  record("sampled non-identity elements of G have infinite order", torsion_in_g == 0);

  // Elements of the lamp subgroup of H with values in the A5 summand: explicit
  // powering confirms each finite order, which must divide exp(A5).
  auto order_is_exact = [&](const Group& w, const Element& x, std::uint64_t n) {
    if (!w.is_identity(w.pow(x, n))) return false;
    for (std::uint64_t p = 2; p <= n; ++p) {
      if (n % p == 0 && w.is_identity(w.pow(x, n / p))) return false;
    }
    return true;
  };
  std::uint64_t exp_a5 = 1;
  std::uint64_t max_single = 0;
  for (const Element& x : a5->enumerate()) {
    std::uint64_t k = 1;
    for (Element y = x; !a5->is_identity(y); y = a5->mul(y, x)) ++k;
    exp_a5 = std::lcm(exp_a5, k);
    max_single = std::max(max_single, k);
  }
  record("exp(A5) = 30 by brute force", exp_a5 == 30 && a5->exponent() == 30);

  std::size_t torsion_failures = 0;
  std::uint64_t max_order = 1;
  const auto w_a5 = Group::wreath(Group::integers(), a5);
  for (std::size_t i = 0; i < samples; ++i) {
    const Element lamp_only = random_element(*w_a5, rng);
    std::vector<Lamp> lamps;
    for (std::size_t k = 0; k < lamp_only.lamp_count(); ++k)
      lamps.push_back({lamp_only.lamp_position(k), Element::pair(Element::integer(0), lamp_only.lamp_value(k))});
    const Element x = make_wreath_element(*h, Element::integer(0), SupportMap::from_entries(*h, lamps));
    if (h->is_identity(x)) continue;
    const OrderResult r = element_order(*h, x);
    if (r.kind != OrderResult::Kind::Finite || exp_a5 % r.order != 0 || !order_is_exact(*h, x, r.order))
      ++torsion_failures;
    else
      max_order = std::max(max_order, r.order);
  }
  record("sampled lamp elements over A5 are torsion with order dividing exp(A5)", torsion_failures == 0);

  const Element three_cycle = parse_element(*h, "(0, {0: (0, [(1 2 3)])})");
  const OrderResult three = element_order(*h, three_cycle);
  record("order of (0, {0: (0, (1 2 3))}) is 3",
         three.kind == OrderResult::Kind::Finite && three.order == 3 && order_is_exact(*h, three_cycle, 3));

  const Element mixed = parse_element(*h, "(0, {0: (0, [(1 2)(3 4)]), 1: (0, [(1 2 3)]), 2: (0, [(1 2 3 4 5)])})");
  const OrderResult thirty = element_order(*h, mixed);
  record("lamps of orders 2, 3, 5 give order 30 = exp(A5)", thirty.kind == OrderResult::Kind::Finite &&
                                                                 thirty.order == exp_a5 &&
                                                                 order_is_exact(*h, mixed, 30));

  const auto h60 = parse_group("wreath(Z, sum(Z, cyclic(60)))");
  const Element generator60 = parse_element(*h60, "(0, {0: (0, 1)})");
  const OrderResult sixty = element_order(*h60, generator60);
  record("order |D| = 60 exhibited for D = cyclic(60)",
         sixty.kind == OrderResult::Kind::Finite && sixty.order == 60 && order_is_exact(*h60, generator60, 60));

  out.details = Json{{"checks", checks},
                     {"derived_series_sizes",
                      Json{{"cyclic(60)", ds_c60.sizes()}, {"A5", ds_a5.sizes()}, {"S4", ds_s4.sizes()}}},
                     {"exp_A5", exp_a5},
                     {"max_single_order_A5", max_single},
                     {"max_sampled_lamp_order", max_order},
                     {"infinite_certificate", element_order(*h, walk_h).certificate}};
  return out;
}

/// Values at position 0 generating A5 make the projection onto that
/// coordinate surjective.
inline CheckOutcome projection_check() {
  CheckOutcome out{9, "projection onto a coordinate", true, Json::object()};
  const auto a5 = named_permutation_group("A5");
  const auto w = Group::wreath(Group::integers(), a5);
  const std::vector<SupportMap> generating = {
      SupportMap::of_element(parse_element(*w, "(0, {-1: [(1 2)(3 4)], 0: [(1 2 3 4 5)]})")),
      SupportMap::of_element(parse_element(*w, "(0, {0: [(1 2 3)], 3: [(2 4 5)]})")),
  };
  const std::vector<SupportMap> off_coordinate = {
      SupportMap::of_element(parse_element(*w, "(0, {1: [(1 2 3 4 5)], 2: [(1 2 3)]})")),
  };
  const ProjectionImage full = projection_surjectivity(a5, generating, 0);
  const ProjectionImage none = projection_surjectivity(a5, {}, 0);
  const ProjectionImage trivial = projection_surjectivity(a5, off_coordinate, 0);
  out.pass = full.surjective && full.image_size == 60 && !none.surjective && none.image_size == 1 &&
             !trivial.surjective && trivial.image_size == 1;
  out.details = Json{{"generating_image_size", full.image_size},
                     {"empty_image_size", none.image_size},
                     {"identity_values_image_size", trivial.image_size}};
  return out;
}

struct Check {
  int id;
  std::string name;
  std::function<CheckOutcome()> run;
};

inline std::vector<Check> all_checks() {
  return {
      {1, "group axioms", [] { return group_axioms(); }},
      {2, "wreath law vs pointwise evaluator", [] { return wreath_law_oracle(); }},
      {3, "generator action formulas", [] { return generator_action(); }},
      {4, "BFS vs word enumeration", [] { return bfs_vs_words(); }},
      {5, "K independent of the lamp group", [] { return k_invariance(); }},
      {6, "lifted map is bi-Lipschitz on the ball", [] { return lift_distortion(); }},
      {7, "Cayley balls of Z wr cyclic(60) and Z wr A5 coincide", [] { return ball_isometry(); }},
      {8, "structural contrast of G and H", [] { return structural_contrast(); }},
      {9, "projection onto a coordinate", [] { return projection_check(); }},
  };
}

inline Json outcome_json(const CheckOutcome& o) {
  return Json{{"id", o.id}, {"name", o.name}, {"verdict", verdict(o.pass)}, {"details", o.details}};
}

}  // namespace wreathlab::reproduce
