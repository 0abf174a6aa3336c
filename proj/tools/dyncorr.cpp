// dyncorr: simulate designs, estimate dynamic correlation tracks on CSV data,
// run Monte Carlo benchmarks and plot tracks.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dyncorr/dyncorr.hpp"
#include "dyncorr/io/csv.hpp"
#include "dyncorr/io/report.hpp"
#include "dyncorr/io/svg.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace dyncorr;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<Method> parse_methods(const std::string& s) {
    if (s == "all") return {Method::SW, Method::WVGA, Method::DCC};
    std::vector<Method> out;
    for (const auto& name : split_list(s)) {
        const auto m = parse_method(name);
        if (!m) throw UsageError("unknown method '" + name + "' (expected sw, wvga, dcc or all)");
        out.push_back(*m);
    }
    if (out.empty()) throw UsageError("no methods given");
    return out;
}

sim::SimDesign design_from_flags(const std::string& design, const std::string& dist,
                                 std::size_t t_len, std::uint64_t seed, const std::string& shape) {
    const auto id = sim::parse_design(design);
    if (!id) throw UsageError("unknown design '" + design + "'");
    const auto d = sim::parse_distribution(dist);
    if (!d) throw UsageError("unknown distribution '" + dist + "'");
    if (t_len < 30) throw UsageError("--t-len must be at least 30");
    auto out = sim::make_design(*id, *d, t_len, seed);
    if (shape == "cov") {
        out.cauchy_shape = sim::CauchyShape::Covariance;
    } else if (shape != "unit") {
        throw UsageError("unknown --cauchy-shape '" + shape + "' (expected unit or cov)");
    }
    return out;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io::DataError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out) throw io::DataError("write to '" + path + "' failed");
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
    std::string design = "d1";
    std::string dist = "normal";
    std::size_t t_len = 300;
    std::uint64_t seed = 0;
    std::string shape = "unit";
    std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
    const auto design = design_from_flags(a.design, a.dist, a.t_len, a.seed, a.shape);
    const auto series = sim::generate(design);
    io::Table t;
    t.header = {"t", "x1", "x2", "p_true"};
    t.columns.resize(4);
    for (std::size_t i = 1; i <= design.t_len; ++i) {
        t.columns[0].push_back(static_cast<double>(i));
        t.columns[1].push_back(series.first().at(i));
        t.columns[2].push_back(series.second().at(i));
        t.columns[3].push_back(design.profile(i));
    }
    io::write_csv(a.out, t);
    return kOk;
}

// ---- estimate ---------------------------------------------------------------

struct EstimateArgs {
    std::string input;
    std::string cols;
    std::string method = "all";
    std::size_t window = kDefaultWindow;
    std::string out;
    std::string pairs;
};

std::size_t resolve_column(const io::Table& t, const std::string& name) {
    if (const auto c = t.find(name)) return *c;
    throw io::DataError("column '" + name + "' not found in input header");
}

// Data columns: all of them, minus a leading time-index column named "t".
std::vector<std::size_t> data_columns(const io::Table& t) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        if (c == 0 && t.header[c] == "t") continue;
        out.push_back(c);
    }
    return out;
}

void estimate_pair(const io::Table& table, std::size_t ca, std::size_t cb,
                   const std::vector<Method>& methods, std::size_t window, const std::string& out,
                   const std::string& input) {
    const std::size_t t_len = table.rows();
    if (t_len < 2) throw io::DataError("input needs at least 2 rows");
    if (window > t_len) {
        throw io::DataError("window " + std::to_string(window) + " exceeds series length " +
                            std::to_string(t_len));
    }
    const BivariateSeries series(TimeSeries(table.dense(ca)), TimeSeries(table.dense(cb)));
    const WindowSize ws(window);

    io::Table result;
    result.header = {"t"};
    result.columns.emplace_back();
    for (std::size_t i = 1; i <= t_len; ++i) result.columns[0].push_back(static_cast<double>(i));

    nlohmann::json sidecar;
    sidecar["input"] = input;
    sidecar["columns"] = {table.header[ca], table.header[cb]};
    sidecar["t_len"] = t_len;
    sidecar["window"] = window;
    sidecar["methods"] = nlohmann::json::object();

    for (const Method m : {Method::SW, Method::WVGA, Method::DCC}) {
        if (std::find(methods.begin(), methods.end(), m) == methods.end()) continue;
        if (m == Method::DCC && t_len < kMinDccLength) {
            throw io::DataError("dcc needs at least 30 rows");
        }
        if (m == Method::SW && window < 2) {
            throw io::DataError("sw needs a window of at least 2");
        }
        const auto r = run_method(m, series, ws);
        result.header.push_back("rho_" + to_string(m));
        result.columns.push_back(r.track ? io::track_column(*r.track, t_len)
                                         : std::vector<std::optional<double>>(t_len));
        sidecar["methods"][to_string(m)] = io::track_summary(r);
        if (m == Method::DCC) sidecar["status"] = io::to_string(r.status);
    }
    io::write_csv(out, result);
    write_json(fs::path(out).replace_extension(".json").string(), sidecar);
}

int cmd_estimate(const EstimateArgs& a) {
    const auto methods = parse_methods(a.method);
    if (a.window < 1) throw UsageError("--window must be positive");
    const auto table = io::read_csv(a.input);
    const auto data = data_columns(table);

    if (!a.pairs.empty()) {
        if (a.pairs != "all") throw UsageError("--pairs accepts only 'all'");
        if (data.size() < 2) throw io::DataError("input needs at least 2 data columns");
        const fs::path base(a.out);
        const auto dir = base.parent_path();
        const auto stem = base.stem().string();
        const auto ext = base.has_extension() ? base.extension().string() : std::string(".csv");
        for (std::size_t i = 0; i < data.size(); ++i) {
            for (std::size_t j = i + 1; j < data.size(); ++j) {
                const auto name = stem + "_" + table.header[data[i]] + "_" + table.header[data[j]] + ext;
                estimate_pair(table, data[i], data[j], methods, a.window, (dir / name).string(), a.input);
            }
        }
        return kOk;
    }

    std::size_t ca = 0;
    std::size_t cb = 0;
    if (a.cols.empty()) {
        if (data.size() < 2) throw io::DataError("input needs at least 2 data columns");
        ca = data[0];
        cb = data[1];
    } else {
        const auto names = split_list(a.cols);
        if (names.size() != 2) throw UsageError("--cols expects exactly two names, e.g. --cols x1,x2");
        ca = resolve_column(table, names[0]);
        cb = resolve_column(table, names[1]);
    }
    estimate_pair(table, ca, cb, methods, a.window, a.out, a.input);
    return kOk;
}

// ---- bench ------------------------------------------------------------------

struct BenchArgs {
    std::string design = "d1";
    std::string dist = "normal";
    std::size_t t_len = 300;
    std::size_t reps = 200;
    std::string methods = "sw,wvga,dcc";
    std::size_t window = kDefaultWindow;
    std::uint64_t seed = 0;
    std::string shape = "unit";
    unsigned threads = 0;
    std::string out;
};

int cmd_bench(const BenchArgs& a) {
    const auto design = design_from_flags(a.design, a.dist, a.t_len, a.seed, a.shape);
    const auto methods = parse_methods(a.methods);
    if (a.reps < 1) throw UsageError("--reps must be at least 1");
    if (a.window < 2 || a.window > a.t_len) throw UsageError("--window must lie in [2, t-len]");

    const auto t0 = std::chrono::steady_clock::now();
    nlohmann::json report;
    for (const Method m : methods) {
        report[to_string(m)] = io::to_json(mc_run(design, m, WindowSize(a.window), a.reps, a.threads));
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report["meta"] = {
        {"design", a.design}, {"dist", a.dist},    {"t_len", a.t_len},
        {"reps", a.reps},     {"window", a.window}, {"seed", a.seed},
        {"cauchy_shape", a.shape}, {"wall_time_s", wall},
    };
    write_json(a.out, report);
    return kOk;
}

// ---- plot -------------------------------------------------------------------

struct PlotArgs {
    std::string input;
    std::string truth;
    std::string title;
    std::string out;
};

int cmd_plot(const PlotArgs& a) {
    const auto table = io::read_csv(a.input);
    if (table.header.empty() || table.header[0] != "t") {
        throw io::DataError("track CSV must start with a 't' column");
    }
    io::LineChart chart;
    chart.title = a.title;
    chart.x = table.dense(0);
    for (std::size_t c = 1; c < table.header.size(); ++c) {
        chart.series.push_back({table.header[c], table.columns[c], io::method_color(table.header[c])});
    }
    if (chart.series.empty()) throw io::DataError("track CSV has no method columns");

    if (!a.truth.empty()) {
        const auto truth = io::read_csv(a.truth);
        if (truth.header.size() < 2 || truth.header[0] != "t") {
            throw io::DataError("truth CSV must have a 't' column and a value column");
        }
        const std::size_t col = truth.find("p_true").value_or(1);
        if (truth.rows() != table.rows()) throw io::DataError("truth and track lengths differ");
        chart.truth = io::ChartSeries{"truth", truth.columns[col], "#000000"};
    }

    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw io::DataError("cannot write '" + a.out + "'");
    out << io::render_svg(chart);
    if (!out) throw io::DataError("write to '" + a.out + "' failed");
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic correlation estimation: sliding window, visibility graph, DCC"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Write one simulated series pair as CSV (t,x1,x2,p_true)");
    sim_cmd->add_option("--design", sim_args.design, "d1|d2a|d2b|d3a|d3b")->capture_default_str();
    sim_cmd->add_option("--dist", sim_args.dist, "normal|cauchy")->capture_default_str();
    sim_cmd->add_option("--t-len", sim_args.t_len, "Series length T")->capture_default_str();
    sim_cmd->add_option("--seed", sim_args.seed, "RNG seed")->capture_default_str();
    sim_cmd->add_option("--cauchy-shape", sim_args.shape, "unit|cov")->capture_default_str();
    sim_cmd->add_option("--out", sim_args.out, "Output CSV path")->required();

    EstimateArgs est_args;
    auto* est_cmd = app.add_subcommand("estimate", "Estimate correlation tracks for columns of a CSV file");
    est_cmd->add_option("--input", est_args.input, "Input CSV with a header row")->required();
    est_cmd->add_option("--cols", est_args.cols, "Two column names, e.g. x1,x2");
    est_cmd->add_option("--method", est_args.method, "sw|wvga|dcc|all or a comma list")->capture_default_str();
    est_cmd->add_option("--window", est_args.window, "Window size")->capture_default_str();
    est_cmd->add_option("--pairs", est_args.pairs, "'all' to estimate every column pair");
    est_cmd->add_option("--out", est_args.out, "Output track CSV path")->required();

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Monte Carlo summary of methods on a design (JSON)");
    bench_cmd->add_option("--design", bench_args.design, "d1|d2a|d2b|d3a|d3b")->capture_default_str();
    bench_cmd->add_option("--dist", bench_args.dist, "normal|cauchy")->capture_default_str();
    bench_cmd->add_option("--t-len", bench_args.t_len, "Series length T")->capture_default_str();
    bench_cmd->add_option("--reps", bench_args.reps, "Replicates")->capture_default_str();
    bench_cmd->add_option("--methods", bench_args.methods, "Comma list of sw,wvga,dcc")->capture_default_str();
    bench_cmd->add_option("--window", bench_args.window, "Window size")->capture_default_str();
    bench_cmd->add_option("--seed", bench_args.seed, "Base seed; replicate r uses seed + r")->capture_default_str();
    bench_cmd->add_option("--cauchy-shape", bench_args.shape, "unit|cov")->capture_default_str();
    bench_cmd->add_option("--threads", bench_args.threads, "Worker threads (0 = all cores)")->capture_default_str();
    bench_cmd->add_option("--out", bench_args.out, "Output JSON path")->required();

    PlotArgs plot_args;
    auto* plot_cmd = app.add_subcommand("plot", "Render a track CSV as an SVG line chart");
    plot_cmd->add_option("--input", plot_args.input, "Track CSV from 'estimate'")->required();
    plot_cmd->add_option("--truth", plot_args.truth, "CSV with t and p_true (e.g. from 'simulate')");
    plot_cmd->add_option("--title", plot_args.title, "Chart title");
    plot_cmd->add_option("--out", plot_args.out, "Output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*sim_cmd) return cmd_simulate(sim_args);
        if (*est_cmd) return cmd_estimate(est_args);
        if (*bench_cmd) return cmd_bench(bench_args);
        if (*plot_cmd) return cmd_plot(plot_args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const io::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}
