// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "wreathlab/reproduce.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Limit {
  int id;
  std::optional<double> seconds;
};

// Wall-clock budgets; criteria without one only need to finish.
constexpr Limit kLimits[] = {{1, 10},  {2, std::nullopt}, {3, std::nullopt}, {4, 30},  {5, 300},
                             {6, 600}, {7, 600},          {8, 60},           {9, 1}};

std::optional<double> limit_for(int id) {
  for (const Limit& l : kLimits)
    if (l.id == id) return l.seconds;
  return std::nullopt;
}

bool report(int id, const std::string& name, bool pass, double seconds, const std::string& note) {
  std::printf("criterion %2d  %-4s  %-52s %8.3f s%s%s\n", id, pass ? "PASS" : "FAIL", name.c_str(), seconds,
              note.empty() ? "" : "  ", note.c_str());
  std::fflush(stdout);
  return pass;
}

std::string reproduce_body() {
  std::ostringstream out, err;
  const int code = wreathlab::cli::run_command({"reproduce-paper"}, out, err);
  auto j = nlohmann::ordered_json::parse(out.str());
  j.erase("stats");
  return std::to_string(code) + "\n" + j.dump(2);
}

}  // namespace

int main() {
  namespace rp = wreathlab::reproduce;
  bool all = true;
  for (const rp::Check& c : rp::all_checks()) {
    const auto t0 = Clock::now();
    std::string note;
    bool pass = false;
    try {
      const rp::CheckOutcome o = c.run();
      pass = o.pass;
      if (!pass) note = o.details.dump();
    } catch (const std::exception& e) {
      note = e.what();
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (const auto lim = limit_for(c.id); lim && seconds > *lim) {
      pass = false;
      note = "exceeded " + std::to_string(*lim) + " s";
    }
    all = report(c.id, c.name, pass, seconds, note) && all;
  }

  const auto t0 = Clock::now();
  std::string note;
  bool pass = false;
  try {
    const std::string first = reproduce_body();
    const std::string second = reproduce_body();
    pass = first == second && first.rfind("0\n", 0) == 0;
    if (!pass) note = first == second ? "reproduce-paper did not exit 0" : "bodies differ";
  } catch (const std::exception& e) {
    note = e.what();
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  all = report(10, "reproduce-paper is deterministic", pass, seconds, note) && all;
  return all ? 0 : 1;
}
