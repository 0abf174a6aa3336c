#include <gtest/gtest.h>

#include <fstream>

#include "cli_runner.hpp"
#include "dyncorr/dyncorr.hpp"
#include "dyncorr/io/csv.hpp"
#include "svg_check.hpp"

using namespace dyncorr;
namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace

TEST(Cli, UsageErrorsExitWithOne) {
    const auto dir = cli::scratch_dir("usage");
    EXPECT_EQ(cli::run(""), 1);
    EXPECT_EQ(cli::run("frobnicate"), 1);
    EXPECT_EQ(cli::run("simulate --design d9 --out " + (dir / "x.csv").string()), 1);
    EXPECT_EQ(cli::run("bench --methods ols --out " + (dir / "b.json").string()), 1);
    EXPECT_EQ(cli::run("estimate --input a.csv"), 1);
    EXPECT_EQ(cli::run("--help"), 0);
}

TEST(Cli, DataErrorsExitWithTwo) {
    const auto dir = cli::scratch_dir("data");
    write_file(dir / "bad.csv", "a,b\n1,2\nfoo,3\n");
    write_file(dir / "short.csv", "a,b\n1,2\n2,1\n3,5\n");
    EXPECT_EQ(cli::run("estimate --input " + (dir / "missing.csv").string() + " --out " + (dir / "o.csv").string()), 2);
    EXPECT_EQ(cli::run("estimate --input " + (dir / "bad.csv").string() + " --out " + (dir / "o.csv").string()), 2);
    EXPECT_EQ(cli::run("estimate --input " + (dir / "short.csv").string() + " --method sw --out " +
                       (dir / "o.csv").string()),
              2);
    EXPECT_EQ(cli::run("estimate --input " + (dir / "short.csv").string() + " --cols a,zz --method sw --window 2 --out " +
                       (dir / "o.csv").string()),
              2);
}

TEST(Cli, IdenticalColumnsCorrelatePerfectly) {
    const auto dir = cli::scratch_dir("identical");
    std::string csv = "x,y\n";
    for (int i = 0; i < 40; ++i) {
        const double v = std::sin(i * 1.7) + 0.01 * i;
        csv += io::format_number(v) + "," + io::format_number(v) + "\n";
    }
    write_file(dir / "in.csv", csv);
    const auto out = dir / "track.csv";
    ASSERT_EQ(cli::run("estimate --input " + (dir / "in.csv").string() + " --method sw,wvga --out " + out.string()), 0);
    const auto t = io::read_csv(out.string());
    ASSERT_EQ(t.header, (std::vector<std::string>{"t", "rho_sw", "rho_wvga"}));
    ASSERT_EQ(t.rows(), 40u);
    for (std::size_t r = 0; r < 40; ++r) {
        if (r < 14) {
            EXPECT_FALSE(t.columns[1][r]);
            EXPECT_FALSE(t.columns[2][r]);
        } else {
            EXPECT_NEAR(*t.columns[1][r], 1.0, 1e-12);
            EXPECT_NEAR(*t.columns[2][r], 1.0, 1e-12);
        }
    }
    const auto side = cli::read_json(dir / "track.json");
    EXPECT_EQ(side["window"], 15);
    EXPECT_EQ(side["methods"]["sw"]["start_index"], 15);
}

TEST(Cli, IdenticalColumnsDccIsReportedAsNotConverged) {
    const auto dir = cli::scratch_dir("identical_dcc");
    ASSERT_EQ(cli::run("simulate --design d1 --t-len 100 --seed 3 --out " + (dir / "s.csv").string()), 0);
    const auto out = dir / "track.csv";
    ASSERT_EQ(cli::run("estimate --input " + (dir / "s.csv").string() + " --cols x1,x1 --method dcc --out " +
                       out.string()),
              0);
    const auto side = cli::read_json(dir / "track.json");
    EXPECT_EQ(side["status"], "did_not_converge");
    const auto t = io::read_csv(out.string());
    for (const auto& v : t.columns[1]) EXPECT_FALSE(v);
}

TEST(Cli, SimulateWritesTruthColumn) {
    const auto dir = cli::scratch_dir("simulate");
    const auto out = dir / "d2a.csv";
    ASSERT_EQ(cli::run("simulate --design d2a --dist normal --t-len 300 --seed 7 --out " + out.string()), 0);
    const auto t = io::read_csv(out.string());
    ASSERT_EQ(t.header, (std::vector<std::string>{"t", "x1", "x2", "p_true"}));
    EXPECT_NEAR(*t.columns[3][127], 0.8414709848078965, 1e-15);

    const auto lib = sim::generate(sim::make_design(sim::DesignId::D2a, sim::Distribution::Normal, 300, 7));
    for (std::size_t i = 0; i < 300; ++i) {
        EXPECT_EQ(*t.columns[1][i], lib.first().values()[i]);
        EXPECT_EQ(*t.columns[2][i], lib.second().values()[i]);
    }
}

TEST(Cli, EstimateOrdersMethodsOnSimulatedData) {
    const auto dir = cli::scratch_dir("ordering");
    ASSERT_EQ(cli::run("simulate --design d1 --dist normal --t-len 300 --seed 7 --out " + (dir / "s.csv").string()), 0);
    ASSERT_EQ(cli::run("estimate --input " + (dir / "s.csv").string() + " --method all --out " +
                       (dir / "e.csv").string()),
              0);
    const auto side = cli::read_json(dir / "e.json");
    const double sw = side["methods"]["sw"]["mean_abs"];
    const double wvga = side["methods"]["wvga"]["mean_abs"];
    const double dcc = side["methods"]["dcc"]["mean_abs"];
    EXPECT_LT(dcc, wvga);
    EXPECT_LT(wvga, sw);
    EXPECT_EQ(side["status"], "converged");
}

TEST(Cli, PairsAll) {
    const auto dir = cli::scratch_dir("pairs");
    std::string csv = "t,a,b,c\n";
    for (int i = 1; i <= 30; ++i) {
        csv += std::to_string(i) + "," + io::format_number(std::sin(i)) + "," + io::format_number(std::cos(i * 0.7)) +
               "," + io::format_number(std::sin(i * 0.3)) + "\n";
    }
    write_file(dir / "in.csv", csv);
    ASSERT_EQ(cli::run("estimate --input " + (dir / "in.csv").string() + " --pairs all --method sw --window 5 --out " +
                       (dir / "track.csv").string()),
              0);
    for (const char* name : {"track_a_b", "track_a_c", "track_b_c"}) {
        EXPECT_TRUE(fs::exists(dir / (std::string(name) + ".csv"))) << name;
        EXPECT_TRUE(fs::exists(dir / (std::string(name) + ".json"))) << name;
    }
}

TEST(Cli, BenchReportSchema) {
    const auto dir = cli::scratch_dir("bench");
    const auto out = dir / "b.json";
    ASSERT_EQ(cli::run("bench --design d2a --dist cauchy --t-len 120 --reps 4 --methods sw,dcc --seed 5 --out " +
                       out.string()),
              0);
    const auto j = cli::read_json(out);
    for (const char* m : {"sw", "dcc"}) {
        ASSERT_TRUE(j.contains(m));
        EXPECT_EQ(j[m]["n_reps"], 4);
        for (const char* f : {"mean_abs", "max_abs", "mse"}) {
            if (j[m]["all_dnc"]) continue;
            for (const char* s : {"mean", "sd", "median"}) EXPECT_TRUE(j[m][f][s].is_number()) << m << f << s;
        }
    }
    EXPECT_FALSE(j.contains("wvga"));
    EXPECT_EQ(j["meta"]["seed"], 5);
    EXPECT_EQ(j["meta"]["design"], "d2a");
}

TEST(Cli, PlotProducesWellFormedSvg) {
    const auto dir = cli::scratch_dir("plot");
    ASSERT_EQ(cli::run("simulate --design d3a --t-len 200 --seed 1 --out " + (dir / "s.csv").string()), 0);
    ASSERT_EQ(cli::run("estimate --input " + (dir / "s.csv").string() + " --method all --out " + (dir / "e.csv").string()),
              0);
    ASSERT_EQ(cli::run("plot --input " + (dir / "e.csv").string() + " --truth " + (dir / "s.csv").string() +
                       " --title 'D3a <normal>' --out " + (dir / "p.svg").string()),
              0);
    const auto s = svg_check::inspect(cli::slurp(dir / "p.svg"));
    EXPECT_EQ(s.polylines.at("rho_sw"), 1);
    EXPECT_EQ(s.polylines.at("rho_wvga"), 1);
    EXPECT_EQ(s.polylines.at("rho_dcc"), 1);
    EXPECT_TRUE(s.has_truth);
}
