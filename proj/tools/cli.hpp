#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wreathlab/reproduce.hpp"
#include "wreathlab/wreathlab.hpp"

namespace wreathlab::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kFail = 1, kUsage = 2, kResource = 3 };

/// Everything a subcommand produces; rendered only once complete.
struct Report {
  std::string command;
  Json config = Json::object();
  Json result = Json::object();
  std::string verdict = "N/A";
  Json witnesses = Json::array();
  Json stats = Json::object();
  /// Rows for --format csv; the first row is the header.
  std::vector<std::vector<std::string>> table;
  std::string summary;

  Json to_json() const {
    return Json{{"command", command}, {"config", config},       {"result", result},
                {"verdict", verdict}, {"witnesses", witnesses}, {"stats", stats}};
  }
};

struct CommonOptions {
  std::string group;
  int radius = -1;
  std::size_t node_cap = kDefaultNodeCap;
  std::string format = "json";
  std::string out;
  std::string lamp_gens = "standard";
};

inline GeneratorStyle style_of(const std::string& s) {
  return s == "all" ? GeneratorStyle::AllFiniteLeaves : GeneratorStyle::Standard;
}

/// Default radius: 4 for wreath groups, 8 otherwise.
inline int default_radius(const Group& g) { return g.kind() == Group::Kind::Wreath ? 4 : 8; }

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string render_csv(const Report& r) {
  std::vector<std::vector<std::string>> rows = r.table;
  if (rows.empty()) {
    rows.push_back({"key", "value"});
    for (const auto& [k, v] : r.result.items()) rows.push_back({k, v.is_string() ? v.get<std::string>() : v.dump()});
    rows.push_back({"verdict", r.verdict});
  }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += csv_escape(row[i]);
    }
    out += "\n";
  }
  return out;
}

/// Splits `from`/`to` of the form wreath(C, A) and wreath(C, B) with equal C.
inline std::pair<GroupPtr, GroupPtr> matching_wreaths(const std::string& from, const std::string& to) {
  auto g1 = parse_group(from);
  auto g2 = parse_group(to);
  if (g1->kind() != Group::Kind::Wreath || g2->kind() != Group::Kind::Wreath)
    throw Error(ErrorCode::InvalidArgument, "--from and --to must both be wreath products");
  if (g1->acting()->describe() != g2->acting()->describe())
    throw Error(ErrorCode::InvalidArgument, "--from and --to must share the acting group");
  return {g1, g2};
}

inline Json pair_witness_json(const Group& g, const PairWitness& w) {
  return Json{{"x", g.format(w.x)},
              {"y", g.format(w.y)},
              {"source_distance", w.source_distance},
              {"target_distance", w.target_distance ? Json(*w.target_distance) : Json(nullptr)},
              {"target_limit", w.target_limit}};
}

/**
 * Parses argv (without the program name), runs one subcommand and writes the
 * report to `out` (or --out) and a short summary to `err`. Returns the exit
 * code: 0 success or PASS, 1 FAIL, 2 usage error, 3 resource limit.
 */
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wreath products, word metrics and bi-Lipschitz lifts on finite Cayley balls", "wreathlab"};
  app.require_subcommand(1);
  CommonOptions common;

  auto add_group = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("-g,--group", common.group, "group expression, e.g. \"wreath(Z, cyclic(2))\"");
    if (required) o->required();
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--node-cap", common.node_cap, "maximum number of stored ball elements")
        ->capture_default_str();
    sub->add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", common.out, "write the report to this path instead of standard output");
  };
  auto add_radius = [&](CLI::App* sub, const std::string& help) { sub->add_option("--radius", common.radius, help); };
  auto add_lamp_gens = [&](CLI::App* sub) {
    sub->add_option("--lamp-gens", common.lamp_gens,
                    "standard: ±1 and permutation generators; all: every non-identity element of finite factors")
        ->check(CLI::IsMember({"standard", "all"}))
        ->capture_default_str();
  };

  auto* ball = app.add_subcommand("ball", "list the Cayley ball around the identity");
  add_group(ball, true);
  add_radius(ball, "ball radius");
  add_lamp_gens(ball);
  add_common(ball);

  auto* growth = app.add_subcommand("growth", "sphere sizes of the Cayley ball");
  add_group(growth, true);
  add_radius(growth, "ball radius");
  add_lamp_gens(growth);
  add_common(growth);

  std::string element_text, x_text, y_text;
  auto* length = app.add_subcommand("length", "word length of one element");
  add_group(length, true);
  add_radius(length, "largest length searched");
  add_lamp_gens(length);
  length->add_option("-e,--element", element_text, "element, e.g. \"(1, {0: 1})\"")->required();
  add_common(length);

  auto* dist = app.add_subcommand("distance", "word distance d(x, y) = l(x y^-1)");
  add_group(dist, true);
  add_radius(dist, "largest distance searched");
  add_lamp_gens(dist);
  dist->add_option("--x", x_text, "first element")->required();
  dist->add_option("--y", y_text, "second element")->required();
  add_common(dist);

  int window = 2;
  auto* kinv = app.add_subcommand("k-invariance", "walk cost K of wreath elements across lamp groups");
  add_group(kinv, false);
  kinv->add_option("-e,--element", element_text, "measure K for this element of --group only");
  kinv->add_option("--window", window, "walker positions and lamps range over [-window, window]")
      ->capture_default_str();
  add_radius(kinv, "largest length searched for --element");
  add_common(kinv);

  std::string digits = "cyclic(2)";
  int max_radius = -1;
  auto* base = app.add_subcommand("base-constants", "K1, K2 of the digit map Z -> Z + D");
  base->add_option("--digits", digits, "finite group D")->capture_default_str();
  add_radius(base, "radius of the source ball (default 12)");
  base->add_option("--max-radius", max_radius, "largest image length searched (default 2 radius + 2)");
  add_common(base);

  std::string from, to;
  int base_radius = 12;
  std::vector<std::int64_t> swap;
  auto* distortion = app.add_subcommand("distortion", "pairwise distortion of the lifted digit map");
  distortion->add_option("--from", from, "wreath(C, Z)")->required();
  distortion->add_option("--to", to, "wreath(C, sum(Z, D))")->required();
  add_radius(distortion, "radius of the source ball (default 3)");
  distortion->add_option("--base-radius", base_radius, "radius for measuring K1, K2")->capture_default_str();
  distortion->add_option("--swap", swap, "exchange the base images of two integers")->expected(2);
  add_common(distortion);

  std::int64_t shift = 0;
  auto* isom = app.add_subcommand("isom-check", "rooted isomorphism of Cayley balls of wreath(C, A) and wreath(C, B)");
  isom->add_option("--from", from, "wreath(C, A), A finite")->required();
  isom->add_option("--to", to, "wreath(C, B), B finite with |B| = |A|")->required();
  add_radius(isom, "ball radius (default 2)");
  isom->add_option("--shift", shift, "match element i of A with element i + shift of B")->capture_default_str();
  add_lamp_gens(isom);
  add_common(isom);

  auto* solvable = app.add_subcommand("solvable", "derived series of a finite group");
  add_group(solvable, true);
  add_common(solvable);

  std::uint64_t cap = 1'000'000;
  auto* order = app.add_subcommand("order", "order of an element");
  add_group(order, true);
  order->add_option("-e,--element", element_text, "element")->required();
  order->add_option("--cap", cap, "iteration cap for finite factors")->capture_default_str();
  add_common(order);

  std::vector<std::string> maps;
  std::int64_t position = 0;
  auto* projection = app.add_subcommand("projection", "image of the i-th coordinate projection of sum_Z D");
  add_group(projection, true);
  projection->add_option("--map", maps, "finitely supported map, e.g. \"{0: [(1 2 3)], 2: #5}\"");
  projection->add_option("--position", position, "coordinate i")->capture_default_str();
  add_common(projection);

  auto* reproduce = app.add_subcommand("reproduce-paper", "run the full reproduction suite");
  add_common(reproduce);

  std::vector<std::string> argv_storage{"wreathlab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  Report r;
  const auto started = std::chrono::steady_clock::now();
  try {
    CLI::App* sub = app.get_subcommands().front();
    r.command = sub->get_name();

    GroupPtr g;
    if (!common.group.empty()) {
      g = parse_group(common.group);
      r.config["group"] = g->describe();
    }
    auto gens = [&] { return default_generating_set(*g, style_of(common.lamp_gens)); };
    auto radius_or = [&](int fallback) { return common.radius >= 0 ? common.radius : fallback; };

    if (sub == ball || sub == growth) {
      const int radius = radius_or(default_radius(*g));
      r.config["radius"] = radius;
      r.config["lamp_gens"] = common.lamp_gens;
      r.config["node_cap"] = common.node_cap;
      const BallTable b = bfs_ball(*g, gens(), radius, common.node_cap);
      r.result["ball_size"] = b.node_count();
      r.result["sphere_sizes"] = b.sphere_sizes();
      if (sub == ball) {
        Json elements = Json::array();
        r.table.push_back({"element", "length"});
        for (std::size_t i = 0; i < b.node_count(); ++i) {
          const std::string e = g->format(b.elements()[i]);
          elements.push_back(Json{{"element", e}, {"length", b.distances()[i]}});
          r.table.push_back({e, std::to_string(b.distances()[i])});
        }
        r.result["elements"] = elements;
      } else {
        r.table.push_back({"radius", "sphere_size"});
        for (std::size_t k = 0; k < b.sphere_sizes().size(); ++k)
          r.table.push_back({std::to_string(k), std::to_string(b.sphere_sizes()[k])});
      }
      r.stats["nodes"] = b.node_count();
      r.summary = std::to_string(b.node_count()) + " elements within radius " + std::to_string(radius);
    } else if (sub == length || sub == dist) {
      const int radius = radius_or(8);
      r.config["radius"] = radius;
      r.config["lamp_gens"] = common.lamp_gens;
      r.config["node_cap"] = common.node_cap;
      LengthVerdict v;
      if (sub == length) {
        const Element x = parse_element(*g, element_text);
        r.config["element"] = g->format(x);
        r.result["element"] = g->format(x);
        v = word_length(g, gens(), x, radius, common.node_cap);
      } else {
        const Element x = parse_element(*g, x_text);
        const Element y = parse_element(*g, y_text);
        r.config["x"] = g->format(x);
        r.config["y"] = g->format(y);
        r.result["difference"] = g->format(g->mul(x, g->inv(y)));
        v = distance(g, gens(), x, y, radius, common.node_cap);
      }
      r.result[sub == length ? "length" : "distance"] = v.length ? Json(*v.length) : Json(nullptr);
      r.result["found"] = v.length.has_value();
      r.result["searched_radius"] = v.searched_radius;
      r.summary = v.length ? "length " + std::to_string(*v.length)
                           : "not found within radius " + std::to_string(v.searched_radius);
    } else if (sub == kinv) {
      if (!element_text.empty()) {
        if (!g) throw Error(ErrorCode::InvalidArgument, "--element needs --group");
        const int radius = radius_or(16);
        r.config["element"] = element_text;
        r.config["radius"] = radius;
        const Element x = parse_element(*g, element_text);
        const GeneratingSet sw = default_generating_set(*g);
        const GeneratingSet sa = default_generating_set(*g->lamp());
        const KDecomposition k = wreath_K(g, sw, sa, x, Budgets{radius, common.node_cap});
        r.result = Json{{"element", g->format(x)},
                        {"length", k.total_length},
                        {"lamp_length_sum", k.lamp_length_sum},
                        {"K", k.k}};
        r.verdict = k.k >= 0 ? "PASS" : "FAIL";
        r.summary = "K = " + std::to_string(k.k);
      } else {
        r.config["window"] = window;
        const auto o = reproduce::k_invariance(window);
        r.result = o.details;
        r.verdict = reproduce::verdict(o.pass);
        r.summary = std::to_string(o.details["configurations"].get<std::size_t>()) + " configurations, " +
                    std::to_string(o.details["disagreements"].get<std::size_t>()) + " disagreements";
      }
    } else if (sub == base) {
      const int radius = radius_or(12);
      const int limit = max_radius >= 0 ? max_radius : 2 * radius + 2;
      r.config = Json{{"digits", digits}, {"radius", radius}, {"max_radius", limit}, {"node_cap", common.node_cap}};
      const Bijection phi = make_digit_bijection(parse_group(digits));
      const BaseConstants c =
          measure_base_constants(phi, default_generating_set(*phi.source()), default_generating_set(*phi.target()),
                                 radius, Budgets{limit, common.node_cap});
      r.result = Json{{"map", phi.description()},
                      {"samples", c.sample_count},
                      {"K1", to_string(c.k1)},
                      {"K1_witness", phi.source()->format(*c.k1_witness)},
                      {"K2", to_string(c.k2)},
                      {"K2_witness", phi.source()->format(*c.k2_witness)}};
      r.summary = "K1 = " + to_string(c.k1) + ", K2 = " + to_string(c.k2);
    } else if (sub == distortion) {
      const auto [g1, g2] = matching_wreaths(from, to);
      if (g1->lamp()->kind() != Group::Kind::Integers || g2->lamp()->kind() != Group::Kind::DirectSum ||
          g2->lamp()->left()->kind() != Group::Kind::Integers)
        throw Error(ErrorCode::InvalidArgument, "distortion lifts the digit map Z -> sum(Z, D)");
      const int radius = radius_or(3);
      r.config = Json{{"from", g1->describe()},         {"to", g2->describe()},
                      {"radius", radius},               {"base_radius", base_radius},
                      {"node_cap", common.node_cap},    {"swap", swap}};
      Bijection phi = make_digit_bijection(g2->lamp()->right());
      const Budgets budgets{2 * base_radius + 2, common.node_cap};
      const GeneratingSet sa = default_generating_set(*phi.source());
      const GeneratingSet sb = default_generating_set(*phi.target());
      const BaseConstants c = measure_base_constants(phi, sa, sb, base_radius, budgets);
      if (!swap.empty()) phi = swap_images(phi, Element::integer(swap[0]), Element::integer(swap[1]));
      const Bijection lifted = lift_bijection(phi, g1->acting());
      const DistortionReport d =
          measure_distortion(lifted, default_generating_set(*lifted.source()),
                             default_generating_set(*lifted.target()), radius, budgets, c.k1, c.k2);
      const Group& src = *lifted.source();
      r.result = Json{{"K1", to_string(c.k1)},
                      {"K2", to_string(c.k2)},
                      {"ball_size", d.ball_size},
                      {"pairs", d.pair_count},
                      {"certified_pairs", d.certified_pairs},
                      {"min_ratio", d.min_ratio ? Json(to_string(*d.min_ratio)) : Json(nullptr)},
                      {"max_ratio", d.max_ratio ? Json(to_string(*d.max_ratio)) : Json(nullptr)},
                      {"violation_count", d.violation_count}};
      if (d.min_witness) r.result["min_witness"] = pair_witness_json(src, *d.min_witness);
      if (d.max_witness) r.result["max_witness"] = pair_witness_json(src, *d.max_witness);
      for (const auto& v : d.violations) r.witnesses.push_back(pair_witness_json(src, v));
      r.verdict = d.pass ? "PASS" : "FAIL";
      r.stats["target_reach"] = d.target_reach;
      r.summary = std::to_string(d.pair_count) + " pairs, ratios in [" +
                  (d.min_ratio ? to_string(*d.min_ratio) : "-") + ", " +
                  (d.max_ratio ? to_string(*d.max_ratio) : "-") + "] against [" + to_string(c.k2) + ", " +
                  to_string(c.k1) + "]";
    } else if (sub == isom) {
      const auto [g1, g2] = matching_wreaths(from, to);
      const int radius = radius_or(2);
      r.config = Json{{"from", g1->describe()}, {"to", g2->describe()},        {"radius", radius},
                      {"shift", shift},         {"lamp_gens", common.lamp_gens}, {"node_cap", common.node_cap}};
      const Bijection beta = index_matching_bijection(g1->lamp(), g2->lamp(), shift);
      const Bijection map = beta.fixes_identity() ? lift_bijection(beta, g1->acting())
                                                  : lift_on_support(beta, g1->acting());
      const GeneratingSet s1 = default_generating_set(*map.source(), style_of(common.lamp_gens));
      const GeneratingSet s2 = default_generating_set(*map.target(), style_of(common.lamp_gens));
      const IsomorphismCertificate cert =
          check_cayley_ball_isomorphism(*map.source(), s1, *map.target(), s2, map, radius, common.node_cap);
      r.result = Json{{"ball_size", cert.source_ball_size},
                      {"target_ball_size", cert.target_ball_size},
                      {"edges", cert.edge_count},
                      {"source_growth", cert.source_growth},
                      {"target_growth", cert.target_growth}};
      if (!cert.pass) {
        r.result["failure"] = cert.failure;
        for (const Element& w : cert.source_witness) r.witnesses.push_back(map.source()->format(w));
      }
      r.verdict = cert.pass ? "PASS" : "FAIL";
      r.stats["nodes"] = cert.source_ball_size + cert.target_ball_size;
      r.summary = cert.pass ? "balls are isomorphic" : "not isomorphic: " + cert.failure;
    } else if (sub == solvable) {
      const DerivedSeries ds = derived_series(*g);
      r.result = Json{{"solvable", ds.solvable}, {"series_sizes", ds.sizes()}, {"derived_length", ds.length}};
      r.summary = std::string(ds.solvable ? "solvable" : "not solvable");
    } else if (sub == order) {
      const Element x = parse_element(*g, element_text);
      r.config["element"] = g->format(x);
      r.config["cap"] = cap;
      const OrderResult o = element_order(*g, x, cap);
      r.result["element"] = g->format(x);
      switch (o.kind) {
        case OrderResult::Kind::Finite:
          r.result["order"] = o.order;
          r.summary = "order " + std::to_string(o.order);
          break;
        case OrderResult::Kind::Infinite:
          r.result["order"] = "infinite";
          r.result["certificate"] = o.certificate;
          r.summary = "infinite order (" + o.certificate + ")";
          break;
        case OrderResult::Kind::UnknownBeyond:
          r.result["order"] = "unknown";
          r.result["cap"] = cap;
          r.summary = "order exceeds cap";
          break;
      }
    } else if (sub == projection) {
      const auto w = Group::wreath(Group::integers(), g);
      std::vector<SupportMap> parsed;
      Json echoed = Json::array();
      for (const std::string& m : maps) {
        const Element e = parse_element(*w, "(0, " + m + ")");
        parsed.push_back(SupportMap::of_element(e));
        echoed.push_back(w->format(e).substr(4, w->format(e).size() - 5));
      }
      r.config["maps"] = echoed;
      r.config["position"] = position;
      const ProjectionImage p = projection_surjectivity(g, parsed, position);
      r.result = Json{{"surjective", p.surjective}, {"image_size", p.image_size}};
      r.summary = "image of size " + std::to_string(p.image_size);
    } else if (sub == reproduce) {
      Json checks = Json::array();
      Json timings = Json::object();
      std::size_t passed = 0;
      const auto checks_list = reproduce::all_checks();
      for (const auto& c : checks_list) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto o = c.run();
        timings[std::to_string(c.id)] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        checks.push_back(reproduce::outcome_json(o));
        if (o.pass) ++passed;
        err << "[" << reproduce::verdict(o.pass) << "] " << c.id << " " << c.name << "\n";
      }
      r.result = Json{{"checks", checks}, {"passed", passed}, {"total", checks_list.size()}};
      r.verdict = passed == checks_list.size() ? "PASS" : "FAIL";
      r.stats["check_ms"] = timings;
      r.summary = std::to_string(passed) + "/" + std::to_string(checks_list.size()) + " checks passed";
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_resource_error() || e.code() == ErrorCode::Overflow ? kResource : kUsage;
  }

  r.stats["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  const std::string body = common.format == "csv" ? render_csv(r) : r.to_json().dump(2) + "\n";
  if (common.out.empty()) {
    out << body;
  } else {
    std::ofstream f(common.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << common.out << "\n";
      return kUsage;
    }
    f << body;
  }
  err << r.command << ": " << r.summary << (r.verdict != "N/A" ? " [" + r.verdict + "]" : "") << "\n";
  if (r.verdict == "FAIL") return kFail;
  return kOk;
}

}  // namespace wreathlab::cli
