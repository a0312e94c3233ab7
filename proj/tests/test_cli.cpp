// Drives the built qswitch executable end to end.

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

#ifndef QSWITCH_CLI_PATH
#define QSWITCH_CLI_PATH "qswitch"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = "\"" QSWITCH_CLI_PATH "\" " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, {}};
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    const int raw = pclose(p);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("qswitch-cli-" + std::to_string(std::random_device{}()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1)
        cells.push_back(line.substr(start, pos - start));
    cells.push_back(line.substr(start));
    return cells;
}

std::vector<std::vector<std::string>> rows_of(const std::string& csv) {
    std::vector<std::vector<std::string>> rows;
    std::size_t start = csv.find('\n') + 1;
    for (std::size_t pos; (pos = csv.find('\n', start)) != std::string::npos; start = pos + 1)
        rows.push_back(split(csv.substr(start, pos - start)));
    return rows;
}

}  // namespace

TEST_F(Cli, SweepDefaultGridAndSummary) {
    const auto r = run("sweep --out " + path("sg.csv"));
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("101 rows"), std::string::npos) << r.out;
    const auto csv = slurp(path("sg.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "phi,i_ab,i_ae,i_be,min_eve,gain,bell_ab,bell_ae,bell_be,qber,secure");
    const auto rows = rows_of(csv);
    ASSERT_EQ(rows.size(), 101u);
    EXPECT_EQ(rows.front()[0], "0");
    EXPECT_EQ(rows.back()[0], "1.57079633");
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(std::stod(rows[i - 1][0]), std::stod(rows[i][0]));
}

TEST_F(Cli, SwapSweepInsecureInterior) {
    ASSERT_EQ(run("sweep --scenario switch --partner swap --steps 21 --out " + path("w.csv")).status, 0);
    const auto rows = rows_of(slurp(path("w.csv")));
    ASSERT_EQ(rows.size(), 21u);
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) EXPECT_EQ(rows[i][10], "false") << i;
}

TEST_F(Cli, DraftSweepSecureInterior) {
    ASSERT_EQ(run("sweep --scenario draft-switch --partner usg --phi1 0.9 --steps 21 --out " + path("d.csv")).status,
              0);
    const auto rows = rows_of(slurp(path("d.csv")));
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) EXPECT_EQ(rows[i][10], "true") << i;
}

TEST_F(Cli, DegreesFlagMatchesRadians) {
    ASSERT_EQ(run("sweep --steps 5 --phi-end 45 --degrees --out " + path("deg.csv")).status, 0);
    ASSERT_EQ(run("sweep --steps 5 --phi-end 0.785398163397448 --out " + path("rad.csv")).status, 0);
    EXPECT_EQ(slurp(path("deg.csv")), slurp(path("rad.csv")));
}

TEST_F(Cli, MetricsSubset) {
    ASSERT_EQ(run("sweep --steps 3 --metrics gain,qber --out " + path("m.csv")).status, 0);
    const auto rows = rows_of(slurp(path("m.csv")));
    EXPECT_EQ(rows[0][5], "0.25");
    EXPECT_EQ(rows[0][9], "0");
    EXPECT_TRUE(rows[0][1].empty());
    EXPECT_TRUE(rows[0][10].empty());
}

TEST_F(Cli, SweepErrors) {
    EXPECT_EQ(run("sweep --scenario switch --out " + path("x.csv")).status, 1);
    EXPECT_EQ(run("sweep --scenario draft-switch --partner swap --out " + path("x.csv")).status, 1);
    EXPECT_EQ(run("sweep --scenario bogus --out " + path("x.csv")).status, 1);
    EXPECT_EQ(run("sweep --steps 1 --out " + path("x.csv")).status, 1);
    EXPECT_EQ(run("sweep --out /nonexistent-dir/x.csv").status, 1);
    EXPECT_EQ(run("sweep").status, 1);
    EXPECT_EQ(run("").status, 1);
    EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(Cli, StateExamples) {
    const auto sg = run("state --phi 0");
    ASSERT_EQ(sg.status, 0) << sg.out;
    EXPECT_NE(sg.out.find("|000>    0.707107 +0.000000i"), std::string::npos) << sg.out;
    EXPECT_NE(sg.out.find("|110>    0.707107 +0.000000i"), std::string::npos) << sg.out;
    EXPECT_NE(sg.out.find("rho_AB:"), std::string::npos);
    EXPECT_NE(sg.out.find("rho_BE:"), std::string::npos);

    const auto sw = run("state --scenario switch --partner swap --phi 1.5707963267948966");
    ASSERT_EQ(sw.status, 0);
    EXPECT_NE(sw.out.find("|000>    1.000000 +0.000000i"), std::string::npos) << sw.out;
    EXPECT_EQ(sw.out.find("|101>"), std::string::npos) << sw.out;

    const auto chi = run("state --scenario symmetric-cnot --phi 90 --degrees");
    ASSERT_EQ(chi.status, 0);
    for (const char* k : {"|010>", "|011>", "|100>", "|101>"})
        EXPECT_NE(chi.out.find(std::string(k) + "    0.500000 +0.000000i"), std::string::npos) << chi.out;

    EXPECT_EQ(run("state --scenario switch --phi 0.3").status, 1);
    EXPECT_EQ(run("state").status, 1);
}

TEST_F(Cli, VerifyPassesAndIsDeterministic) {
    const auto a = run("verify");
    const auto b = run("verify");
    EXPECT_EQ(a.status, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.find("[FAIL]"), std::string::npos);
    EXPECT_NE(a.out.find("[PASS] switch algebra"), std::string::npos);
}

TEST_F(Cli, PlotFromSweep) {
    ASSERT_EQ(run("sweep --steps 11 --out " + path("s.csv")).status, 0);
    ASSERT_EQ(run("plot " + path("s.csv") + " --columns i_ab,i_ae,i_be --out " + path("a.svg")).status, 0);
    ASSERT_EQ(run("plot " + path("s.csv") + " --columns i_ab,i_ae,i_be --out " + path("b.svg")).status, 0);
    const auto svg = slurp(path("a.svg"));
    EXPECT_EQ(svg, slurp(path("b.svg")));
    EXPECT_NE(svg.find("<svg"), std::string::npos);

    const auto missing = run("plot " + path("s.csv") + " --columns nope --out " + path("c.svg"));
    EXPECT_EQ(missing.status, 1);
    EXPECT_NE(missing.out.find("available: phi, i_ab"), std::string::npos) << missing.out;
    EXPECT_FALSE(fs::exists(path("c.svg")));

    std::ofstream(path("empty.csv")).close();
    EXPECT_EQ(run("plot " + path("empty.csv") + " --columns gain --out " + path("e.svg")).status, 1);
    EXPECT_FALSE(fs::exists(path("e.svg")));
}
