#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "graph_oracles.hpp"

using namespace wreathkit;
namespace fs = std::filesystem;

namespace {

const fs::path kInstances = WREATHKIT_INSTANCE_DIR;

Instance load(const std::string& name) { return parse_instance(kInstances / name); }

SchemaError schema_error(const std::string& text) {
  try {
    parse_instance_text(text);
  } catch (const SchemaError& e) {
    return e;
  }
  ADD_FAILURE() << "no schema error for " << text;
  return SchemaError("", "");
}

nlohmann::json run_json(int (*cmd)(const Instance&, const cli::Options&, std::ostream&), const Instance& in,
                        const cli::Options& opt, int expected_status = 0) {
  std::ostringstream out;
  EXPECT_EQ(cmd(in, opt, out), expected_status);
  return nlohmann::json::parse(out.str());
}

// Ball sizes of B wr Z for generators delta_0(b), t, t^-1 by breadth-first
// search over (lamp map, position) pairs with std::map lamps.
std::vector<std::size_t> naive_lamplighter_balls(unsigned order, unsigned radius) {
  using State = std::pair<std::map<long, unsigned>, long>;  // lamps, lamplighter position
  std::set<State> seen{{{}, 0}};
  std::vector<State> frontier{{{}, 0}};
  std::vector<std::size_t> sizes{1};
  for (unsigned r = 1; r <= radius; ++r) {
    std::vector<State> next;
    for (const auto& [f, h] : frontier) {
      std::vector<State> moves{{f, h + 1}, {f, h - 1}};
      for (unsigned b = 1; b < order; ++b) {
        auto g = f;
        const unsigned v = (g[h] + b) % order;
        if (v == 0)
          g.erase(h);
        else
          g[h] = v;
        moves.emplace_back(g, h);
      }
      for (auto& m : moves)
        if (seen.insert(m).second) next.push_back(std::move(m));
    }
    sizes.push_back(seen.size());
    frontier = std::move(next);
  }
  return sizes;
}

}  // namespace

TEST(ParseInstance, MinimalLamplighterIsAWreathOverZ) {
  const auto in = parse_instance_text(
      R"({"kind": "wreath", "B": {"kind": "cyclic", "n": 2}, "H_kind": "Z", "X_window": [-8, 8]})");
  ASSERT_EQ(kind_of(in), "wreath");
  const auto& w = std::get<WreathInstance<IntegerLine>>(in);
  EXPECT_EQ(w.wreath.lamp_group().order(), 2u);
  EXPECT_TRUE(w.a.is_trivial());
  EXPECT_EQ(w.generators.size(), 3u);  // delta_0(1) is an involution; t and t^-1
}

TEST(ParseInstance, MisspelledKindNamesTheField) {
  const auto e = schema_error(R"({"kind": "wreth", "B": {"kind": "cyclic", "n": 2}})");
  EXPECT_EQ(e.field(), "kind");
  EXPECT_NE(std::string(e.what()).find("wreth"), std::string::npos);
}

TEST(ParseInstance, NestedErrorsCarryTheFieldPath) {
  EXPECT_EQ(schema_error(R"({"kind": "wreath", "B": {"kind": "cyclc", "n": 2}, "H_kind": "Z", "X_window": [0, 1]})")
                .field(),
            "B.kind");
  EXPECT_EQ(schema_error(R"({"kind": "wreath", "B": {"kind": "cyclic", "n": 2}, "H_kind": "Z", "X_windw": [0, 1]})")
                .field(),
            "X_windw");
  EXPECT_EQ(schema_error(R"({"kind": "wreath", "B": {"kind": "cyclic", "n": 2}, "H_kind": "Z",
                             "X_window": [0, 4], "generators": [{"lamp": [[9, 1]]}]})")
                .field(),
            "generators[0].lamp[0][0]");
  EXPECT_EQ(schema_error(R"({"kind": "coxeter", "X_window": [0, 4], "rule": {"table": [1, "infinite"]}})").field(),
            "rule.table[1]");
  EXPECT_EQ(schema_error(R"({"kind": "walls", "ground": 3})").field(), "walls");
}

TEST(ParseInstance, FullGroundWallIsASchemaError) {
  const auto json = schema_error(
      R"({"kind": "walls", "ground": 3, "walls": [{"weight": 1, "mask": "100"}, {"weight": 1, "mask": "111"}]})");
  EXPECT_EQ(json.field(), "walls[1]");
  const auto text = schema_error("# comment\nground 3\n1 100\n1 111\n");
  EXPECT_EQ(text.line(), 4);
}

TEST(ParseInstance, SyntaxErrorsReportTheLine) {
  const auto e = schema_error("{\"kind\": \"wreath\",\n \"B\": {\"kind\": \"cyclic\", \"n\": 2}\n \"H_kind\": \"Z\"}");
  EXPECT_EQ(e.line(), 3);
}

TEST(ParseInstance, MissingFileIsAnIOError) {
  EXPECT_THROW(parse_instance(kInstances / "no_such_instance.json"), IOError);
}

TEST(ParseInstance, EveryShippedInstanceParses) {
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(kInstances)) {
    SCOPED_TRACE(entry.path().string());
    EXPECT_NO_THROW(parse_instance(entry.path()));
    ++n;
  }
  EXPECT_GE(n, 10u);
}

TEST(Growth, LamplighterRadiusFiveHasSixRows) {
  cli::Options opt;
  opt.radius = 5;
  std::ostringstream out;
  ASSERT_EQ(cli::growth(load("lamplighter.json"), opt, out), 0);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "radius,ball,sphere");
  const auto oracle = naive_lamplighter_balls(2, 5);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    const auto expect = std::to_string(rows) + "," + std::to_string(oracle[rows]) + "," +
                        std::to_string(rows ? oracle[rows] - oracle[rows - 1] : 1);
    EXPECT_EQ(line, expect);
    ++rows;
  }
  EXPECT_EQ(rows, 6u);
}

TEST(Growth, MatchesNaiveEnumerationForC4Lamps) {
  cli::Options opt;
  opt.radius = 6;
  std::ostringstream out;
  cli::growth(load("c4_lamplighter.json"), opt, out);
  const auto t = naive_lamplighter_balls(4, 6);
  EXPECT_EQ(out.str(), GrowthTable::from_sizes(t).csv());
}

TEST(Growth, OutputDoesNotDependOnJobs) {
  cli::Options one, four;
  one.radius = four.radius = 10;
  four.jobs = 4;
  for (const char* name : {"lamplighter.json", "grigorchuk.json"}) {
    std::ostringstream a, b;
    cli::growth(load(name), one, a);
    cli::growth(load(name), four, b);
    EXPECT_EQ(a.str(), b.str()) << name;
  }
}

TEST(Growth, BudgetIsEnforced) {
  cli::Options opt;
  opt.radius = 30;
  opt.budget_bytes = 1 << 16;
  std::ostringstream out;
  EXPECT_THROW(cli::growth(load("lamplighter.json"), opt, out), MemoryBudgetExceeded);
}

TEST(Growth, RejectsOtherKinds) {
  std::ostringstream out;
  EXPECT_THROW(cli::growth(load("neumann.json"), {}, out), SchemaError);
}

TEST(Iso, C4AndKleinLampsAgreeAtRadiusThree) {
  cli::Options opt;
  opt.radius = 3;
  std::ostringstream out;
  const auto a = load("c4_lamplighter.json"), b = load("klein_lamplighter.json");
  ASSERT_EQ(cli::iso(a, b, opt, out), 0);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_TRUE(j["isomorphic"].get<bool>());
  EXPECT_EQ(j["vertices"][0], 64);

  // Re-check the witness against balls rebuilt here.
  auto ball = [](const Instance& in) {
    const auto& w = std::get<WreathInstance<IntegerLine>>(in);
    using E = Wreath<IntegerLine>::Element;
    return cayley_ball(
        w.generators, w.wreath.identity(), [&](const E& u, const E& v) { return w.wreath.compose(u, v); },
        [&](const E& u) { return w.wreath.canonical(u); }, 3);
  };
  const auto g1 = ball(a), g2 = ball(b);
  const auto witness = j["witness"].get<std::vector<std::uint32_t>>();
  EXPECT_TRUE(oracle::witness_ok({g1.n, g1.edges, g1.root}, {g2.n, g2.edges, g2.root}, witness, true));

  std::ostringstream again;
  cli::iso(a, b, opt, again);
  EXPECT_EQ(out.str(), again.str());
}

TEST(Iso, DifferentBallsFail) {
  cli::Options opt;
  opt.radius = 2;
  std::ostringstream out;
  EXPECT_EQ(cli::iso(load("lamplighter.json"), load("c4_lamplighter.json"), opt, out), 1);
  EXPECT_FALSE(nlohmann::json::parse(out.str())["isomorphic"].get<bool>());
}

TEST(WallsCheck, CubeDistancesAreWeightedHamming) {
  const auto j = run_json(cli::walls_check, load("cube_walls.json"), {});
  const double weight[3] = {1, 1, 1.5};
  for (unsigned x = 0; x < 8; ++x)
    for (unsigned y = 0; y < 8; ++y) {
      double expect = 0;
      for (unsigned bit = 0; bit < 3; ++bit)
        if (((x ^ y) >> bit) & 1) expect += weight[bit];
      const auto s = j["distances"][x][y].get<std::string>();
      EXPECT_DOUBLE_EQ(boost::rational_cast<double>(parse_rational(s)), expect) << x << "," << y;
    }
  EXPECT_TRUE(j["pseudo_metric"].get<bool>());
  EXPECT_TRUE(j["l1_exact"].get<bool>());
  EXPECT_TRUE(j["cnd"].get<bool>());
  EXPECT_TRUE(j["cut_bound"].get<bool>());
}

TEST(WallsCheck, TextFormatInstance) {
  const auto j = run_json(cli::walls_check, load("square.walls"), {});
  EXPECT_EQ(j["distances"][0][2], "5/2");
  EXPECT_EQ(j["walls"], 3);
}

TEST(PwLengths, NaturalsGiveAbsoluteShift) {
  const auto j = run_json(cli::pw_lengths, load("naturals.json"), {});
  // #(N symdiff (h + N)) = |h|.
  const long shifts[] = {1, -1, 3};
  ASSERT_EQ(j["generators"].size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(j["generators"][i]["ell0"], std::abs(shifts[i]));
  for (const auto& e : j["elements"]) EXPECT_GE(e["ell"].get<long>(), 0);
  EXPECT_EQ(j["elements"][0]["ell"], 1);
  EXPECT_EQ(j["elements"][2]["ell_prime"], 2);
}

TEST(Radical, CyclesInstanceVerdicts) {
  const auto j = run_json(cli::radical, load("s3_cycles.json"), {});
  EXPECT_FALSE(j["W_trivial"].get<bool>());
  const auto& v = j["verdicts"];
  ASSERT_EQ(v.size(), 3u);
  // One transposition on a 3-cycle: 3 conjugates times 3 rotations.
  EXPECT_EQ(v[0]["verdict"], "bounded");
  EXPECT_EQ(v[0]["class_size"], 3 * 3);
  // Two transpositions on cycles of lengths 2 and 4 rotate together: lcm(2, 4) positions.
  EXPECT_EQ(v[1]["verdict"], "bounded");
  EXPECT_EQ(v[1]["class_size"], 3 * 3 * std::lcm(2, 4));
  EXPECT_EQ(v[2]["verdict"], "escaped");
  EXPECT_TRUE(v[2]["replayed"].get<bool>());
}

TEST(Radical, LineInstanceIsTrivial) {
  const auto j = run_json(cli::radical, load("s3_line.json"), {});
  EXPECT_TRUE(j["W_trivial"].get<bool>());
  for (const auto& v : j["verdicts"]) {
    EXPECT_EQ(v["verdict"], "escaped");
    EXPECT_EQ(v["mechanism"], "infinite-orbit");
    EXPECT_TRUE(v["replayed"].get<bool>());
  }
}

TEST(Radical, MissingOracleSurfaces) {
  const auto in = parse_instance_text(R"({"kind": "radical", "B": {"kind": "symmetric", "n": 3}, "A": [1],
                                          "H_kind": "Z", "X_window": [-4, 4]})");
  std::ostringstream out;
  EXPECT_THROW(cli::radical(in, {}, out), MissingOracle);
}

TEST(Coxeter, NeumannProbesAreIndependent) {
  cli::Options opt;
  opt.probes = {1, 2, 3, 4, 5, 6, 7, 8};
  opt.jobs = 4;
  const auto j = run_json(cli::coxeter, load("neumann.json"), opt);
  EXPECT_TRUE(j["valid"].get<bool>());
  EXPECT_EQ(j["dihedral_orders"]["3"], "3");
  ASSERT_EQ(j["probes"].size(), 8u);
  for (const auto& p : j["probes"]) EXPECT_TRUE(p["independent"].get<bool>());
}

TEST(Coxeter, BrokenInvarianceFails) {
  const auto in = parse_instance_text(
      R"({"kind": "coxeter", "X_window": [0, 4], "rule": {"table": [1, 3]}, "entries": [[1, 2, 4]]})");
  const auto j = run_json(cli::coxeter, in, {}, 1);
  EXPECT_FALSE(j["valid"].get<bool>());
  EXPECT_FALSE(j["violations"].empty());
  cli::Options opt;
  opt.probes = {1};
  std::ostringstream out;
  EXPECT_THROW(cli::coxeter(in, opt, out), SchemaError);
}

TEST(Suite, AllCriteriaPassAndSummaryIsDeterministic) {
  std::ostringstream a, b, log;
  ASSERT_EQ(cli::suite(a, log), 0) << log.str();
  cli::suite(b, log);
  EXPECT_EQ(a.str(), b.str());
  const auto j = nlohmann::json::parse(a.str());
  EXPECT_EQ(j["passed"], 10);
  EXPECT_EQ(j["total"], 10);
}
