#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "roofkit/qubit.hpp"
#include "roofkit/spec_io.hpp"

using roofkit::io::json;
namespace fs = std::filesystem;

namespace {

struct result {
  int code;
  std::string out;
};

result cli(const std::string& args) {
  const std::string cmd = "cd '" ROOFKIT_DATA "' && '" ROOFKIT_CLI "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json cli_json(const std::string& args) {
  const result r = cli(args);
  EXPECT_EQ(r.code, 0) << args;
  return json::parse(r.out);
}

fs::path work_dir() {
  fs::path p(ROOFKIT_WORK);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Cli, ConcurrenceAmplitudeDamping) {
  const json doc = cli_json("concurrence --channel ad_half.json --state center.json");
  EXPECT_NEAR(doc["concurrence"].get<double>(), 0.5, 1e-15);
  EXPECT_EQ(doc["method"], "named-closed-form");
  EXPECT_EQ(doc["channel_kind"], "amplitude_damping");
  EXPECT_NEAR(doc["theta_path_value"].get<double>(), 0.5, 1e-10);
  EXPECT_NEAR(doc["closed_form_value"].get<double>(), 0.5, 1e-15);
}

TEST(Cli, ConcurrenceMethods) {
  EXPECT_EQ(cli_json("concurrence --channel kraus_ad_half.json --state center.json")["method"], "theta");
  EXPECT_NEAR(cli_json("concurrence --channel kraus_ad_half.json --state center.json")["concurrence"].get<double>(), 0.5,
              1e-12);
  const json c = cli_json("concurrence --channel canonical.json --state tilted.json");
  EXPECT_EQ(c["method"], "canonical");
  EXPECT_LT(c["method_agreement"].get<double>(), 1e-10);
}

TEST(Cli, CapacityNoiseless) {
  const json doc = cli_json("capacity --channel ad_one.json");
  EXPECT_NEAR(doc["capacity_nats"].get<double>(), std::numbers::ln2, 1e-8);
  EXPECT_NEAR(doc["r0"].get<double>(), 0.5, 1e-6);
  EXPECT_EQ(doc["unit"], "nats");
  const json bits = cli_json("capacity --channel ad_one.json --bits");
  EXPECT_NEAR(bits["capacity_bits"].get<double>(), 1.0, 1e-8);
  EXPECT_EQ(bits["unit"], "bits");
}

TEST(Cli, EntanglementOnAxisIsZero) {
  const json doc = cli_json("entanglement --channel pd_0.json --state center.json");
  EXPECT_EQ(doc["E"].get<double>(), 0.0);
  EXPECT_EQ(doc["unit"], "nats");
  EXPECT_EQ(doc.dump().find("-0.0"), std::string::npos);
}

TEST(Cli, EntropyAndChi) {
  const json h = cli_json("entropy --channel ad_half.json --state center.json");
  EXPECT_NEAR(h["H"].get<double>(), 0.31655977795033713, 1e-14);
  const json chi = cli_json("chi --ensemble ensemble_bb84.json");
  EXPECT_NEAR(chi["chi"].get<double>(), std::numbers::ln2, 1e-14);
  EXPECT_EQ(chi["channel_kind"], "identity");
  const json chi_ad = cli_json("chi --ensemble ensemble_bb84.json --channel ad_half.json --bits");
  EXPECT_EQ(chi_ad["unit"], "bits");
  EXPECT_LT(chi_ad["chi"].get<double>(), 1.0);
}

TEST(Cli, Foliation) {
  const json doc = cli_json("foliation --channel pd_half.json --state tilted.json");
  EXPECT_EQ(doc["leaf"]["kind"], "line");
  ASSERT_EQ(doc["decomposition"].size(), 2u);
  double w = 0.0;
  for (const auto& m : doc["decomposition"]) w += m["weight"].get<double>();
  EXPECT_NEAR(w, 1.0, 1e-12);
  EXPECT_EQ(doc["zero_concurrence_states"].size(), 2u);
  EXPECT_EQ(cli_json("foliation --channel ad_half.json --state center.json")["leaf"]["kind"], "plane-disc");
}

TEST(Cli, ParseErrorsExitTwo) {
  EXPECT_EQ(cli("concurrence --channel missing.json --state center.json").code, 2);
  EXPECT_EQ(cli("concurrence --channel center.json --state center.json").code, 2);
  EXPECT_EQ(cli("concurrence --channel ad_half.json").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("").code, 2);
  const fs::path bad = work_dir() / "bad_kind.json";
  std::ofstream(bad) << R"({"kind": "depolarizing", "p": 0.1})";
  EXPECT_EQ(cli("concurrence --channel '" + bad.string() + "' --state center.json").code, 2);
  std::ofstream(work_dir() / "broken.json") << "{not json";
  EXPECT_EQ(cli("concurrence --channel '" + (work_dir() / "broken.json").string() + "' --state center.json").code, 2);
}

TEST(Cli, InvariantViolationsExitThree) {
  EXPECT_EQ(cli("concurrence --channel bad_p.json --state center.json").code, 3);
  const fs::path outside = work_dir() / "outside.json";
  std::ofstream(outside) << R"({"bloch": [0.9, 0.9, 0.0]})";
  EXPECT_EQ(cli("concurrence --channel ad_half.json --state '" + outside.string() + "'").code, 3);
  EXPECT_EQ(cli("foliation --channel ad_one.json --state center.json").code, 3);
}

TEST(Cli, SweepCapacity) {
  const fs::path out = work_dir() / "cap.csv";
  ASSERT_EQ(cli("sweep --quantity capacity --channel ad_half.json --param p --from 0.05 --to 1.0 --steps 20 -o '" +
                out.string() + "'")
                .code,
            0);
  const std::string text = slurp(out);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const auto rows = csv_rows(text);
  ASSERT_EQ(rows.size(), 21u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"p", "capacity", "r0"}));
  EXPECT_NEAR(std::stod(rows.back()[1]), std::numbers::ln2, 1e-8);
  EXPECT_EQ(std::stod(rows.back()[0]), 1.0);
  EXPECT_EQ(rows[1][0], "0.050000000000000003");  // 17 significant digits
}

TEST(Cli, SweepConcurrenceOverZ) {
  const fs::path out = work_dir() / "conc.csv";
  ASSERT_EQ(cli("sweep --quantity concurrence --channel pd_0.json --state x1_06.json --param z --from 0 --to 0.9 "
                "--steps 10 -o '" + out.string() + "'")
                .code,
            0);
  const auto rows = csv_rows(slurp(out));
  ASSERT_EQ(rows.size(), 11u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double z = std::stod(rows[i][0]);
    EXPECT_NEAR(std::stod(rows[i][1]), 0.6 * std::sqrt(1.0 - z * z), 1e-12);
  }
}

TEST(Cli, SweepEntanglementOverX1) {
  const fs::path out = work_dir() / "ent.csv";
  ASSERT_EQ(cli("sweep --quantity entanglement --channel pd_half.json --state center.json --param x1 --from 0 --to 0.95 "
                "--steps 12 -o '" + out.string() + "'")
                .code,
            0);
  const auto rows = csv_rows(slurp(out));
  ASSERT_EQ(rows.size(), 13u);
  double prev = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x1 = std::stod(rows[i][0]);
    const double e = std::stod(rows[i][1]);
    EXPECT_NEAR(e, roofkit::h2(std::sqrt(0.75) * x1), 1e-12);
    EXPECT_GE(e, prev);
    prev = e;
  }
}

TEST(Cli, SweepJobsKeepRowOrder) {
  const fs::path a = work_dir() / "serial.csv";
  const fs::path b = work_dir() / "parallel.csv";
  const std::string base = "sweep --quantity capacity --channel ad_half.json --param p --from 0.1 --to 0.9 --steps 9 ";
  ASSERT_EQ(cli(base + "-o '" + a.string() + "'").code, 0);
  ASSERT_EQ(cli(base + "--jobs 4 -o '" + b.string() + "'").code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, SweepErrors) {
  EXPECT_EQ(cli("sweep --quantity capacity --channel ad_half.json --param p --from 0 --to 1 --steps 1 -o -").code, 2);
  EXPECT_EQ(cli("sweep --quantity capacity --channel pd_0.json --param p --from 0.1 --to 1 --steps 3 -o -").code, 2);
  EXPECT_EQ(cli("sweep --quantity concurrence --channel ad_half.json --param p --from 0.1 --to 1 --steps 3 -o -").code, 2);
  EXPECT_EQ(cli("sweep --quantity volume --channel ad_half.json --state center.json --param p --from 0.1 --to 1 "
                "--steps 3 -o -")
                .code,
            2);
  EXPECT_EQ(cli("sweep --quantity capacity --channel ad_half.json --param p --from 0.5 --to 1.5 --steps 3 -o -").code, 3);
}

TEST(Cli, VerifyDefaultSeed) {
  const result r = cli("verify --seed 42 --cases 50");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("ALL PASS"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL "), std::string::npos);
}

TEST(Cli, VerifyIsDeterministic) {
  const result a = cli("verify --seed 7 --cases 5 --budget 4000");
  const result b = cli("verify --seed 7 --cases 5 --budget 4000");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, VerifyZeroCasesIsUsageError) { EXPECT_EQ(cli("verify --cases 0").code, 2); }

TEST(Cli, SpecRoundTrip) {
  for (const char* name : {"ad_half.json", "pd_half.json", "canonical.json", "kraus_ad_half.json"}) {
    const fs::path once = work_dir() / (std::string("once_") + name);
    const fs::path twice = work_dir() / (std::string("twice_") + name);
    ASSERT_EQ(cli(std::string("spec --channel ") + name + " -o '" + once.string() + "'").code, 0);
    ASSERT_EQ(cli("spec --channel '" + once.string() + "' -o '" + twice.string() + "'").code, 0);
    EXPECT_EQ(slurp(once), slurp(twice));
    const auto original = roofkit::io::channel_from_json(roofkit::io::read_json_file(std::string(ROOFKIT_DATA "/") + name));
    EXPECT_EQ(roofkit::io::channel_to_json(original), roofkit::io::read_json_file(once.string()));
  }
}
