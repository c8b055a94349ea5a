#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"

using wreathlab::cli::run_command;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, GrowthExample) {
  const Outcome r = run({"growth", "--group", "wreath(Z, cyclic(2))", "--radius", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["result"]["sphere_sizes"], Json::parse("[1, 3, 6]"));
  EXPECT_EQ(j["verdict"], "N/A");
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"command", "config", "result", "verdict", "witnesses", "stats"}));
  EXPECT_EQ(j["config"]["group"], "wreath(Z, cyclic(2))");
  EXPECT_EQ(j["config"]["node_cap"], 5000000);
}

TEST(Cli, SolvableExample) {
  const Outcome r = run({"solvable", "--group", "A5"});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["result"]["solvable"], false);
  EXPECT_EQ(j["result"]["series_sizes"], Json::parse("[60, 60]"));
}

TEST(Cli, DistortionExample) {
  const Outcome r =
      run({"distortion", "--from", "wreath(Z, Z)", "--to", "wreath(Z, sum(Z, cyclic(2)))", "--radius", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "PASS");
  EXPECT_EQ(j["result"]["K1"], "2");
  EXPECT_EQ(j["result"]["K2"], "1/2");
}

TEST(Cli, ScrambledDistortionFails) {
  const Outcome r = run({"distortion", "--from", "wreath(Z, Z)", "--to", "wreath(Z, sum(Z, cyclic(2)))", "--radius", "2",
                     "--swap", "2", "-4"});
  EXPECT_EQ(r.code, 1);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "FAIL");
  EXPECT_FALSE(j["witnesses"].empty());
}

TEST(Cli, IsomorphismCheck) {
  const std::vector<std::string> base = {"isom-check", "--from", "wreath(Z, cyclic(60))", "--to", "wreath(Z, A5)",
                                         "--lamp-gens", "all", "--radius", "2"};
  EXPECT_EQ(run(base).code, 0);
  auto shifted = base;
  shifted.insert(shifted.end(), {"--shift", "1"});
  const Outcome r = run(shifted);
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(Json::parse(r.out)["verdict"], "FAIL");
}

TEST(Cli, OrderLengthProjection) {
  Json j = Json::parse(run({"order", "-g", "wreath(Z, sum(Z, A5))", "-e", "(0, {0: (0, [(1 2 3)])})"}).out);
  EXPECT_EQ(j["result"]["order"], 3);
  j = Json::parse(run({"order", "-g", "wreath(Z, Z)", "-e", "(1, {})"}).out);
  EXPECT_EQ(j["result"]["order"], "infinite");
  j = Json::parse(run({"length", "-g", "wreath(Z, cyclic(2))", "-e", "(1, {1: 1})"}).out);
  EXPECT_EQ(j["result"]["length"], 2);
  j = Json::parse(run({"distance", "-g", "Z", "--x", "3", "--y", "-2"}).out);
  EXPECT_EQ(j["result"]["distance"], 5);
  j = Json::parse(run({"projection", "-g", "A5", "--map", "{0: [(1 2 3 4 5)]}", "--map", "{0: [(1 2 3)]}"}).out);
  EXPECT_EQ(j["result"]["image_size"], 60);
  j = Json::parse(run({"projection", "-g", "A5"}).out);
  EXPECT_EQ(j["result"]["image_size"], 1);
}

TEST(Cli, BaseConstantsAndK) {
  Json j = Json::parse(run({"base-constants", "--digits", "cyclic(2)"}).out);
  EXPECT_EQ(j["result"]["K1"], "2");
  EXPECT_EQ(j["result"]["K2"], "1/2");
  EXPECT_EQ(j["result"]["K2_witness"], "-1");
  const Outcome k = run({"k-invariance", "--window", "1"});
  EXPECT_EQ(k.code, 0);
  EXPECT_EQ(Json::parse(k.out)["verdict"], "PASS");
  j = Json::parse(run({"k-invariance", "-g", "wreath(Z, cyclic(3))", "-e", "(0, {0: 1, 1: 1})"}).out);
  EXPECT_EQ(j["result"]["K"], 2);
}

TEST(Cli, CsvFormat) {
  const Outcome r = run({"growth", "-g", "Z", "--radius", "2", "--format", "csv"});
  EXPECT_EQ(r.out, "radius,sphere_size\n0,1\n1,2\n2,2\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"growth"}).code, 2);
  EXPECT_EQ(run({"growth", "-g", "wreath(Z,"}).code, 2);
  EXPECT_EQ(run({"growth", "-g", "A6"}).code, 2);
  EXPECT_EQ(run({"growth", "-g", "Z", "--format", "xml"}).code, 2);
  const Outcome cap = run({"growth", "-g", "wreath(Z, Z)", "--radius", "6", "--node-cap", "100"});
  EXPECT_EQ(cap.code, 3);
  EXPECT_TRUE(cap.out.empty());
  EXPECT_EQ(run({"length", "-g", "Z", "-e", "99999999999999999999"}).code, 3);
}

TEST(Cli, DeterministicBody) {
  const std::vector<std::string> args = {"ball", "-g", "wreath(Z, S3)", "--radius", "3"};
  Json a = Json::parse(run(args).out);
  Json b = Json::parse(run(args).out);
  a.erase("stats");
  b.erase("stats");
  EXPECT_EQ(a.dump(), b.dump());
}
