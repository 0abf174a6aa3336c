#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "dyncorr/core.hpp"
#include "dyncorr/garch_dcc.hpp"
#include "dyncorr/sim.hpp"
#include "dyncorr/sw.hpp"
#include "dyncorr/wvga.hpp"

namespace dyncorr {

enum class Method { SW, WVGA, DCC };

inline std::string to_string(Method m) {
    switch (m) {
        case Method::SW: return "sw";
        case Method::WVGA: return "wvga";
        case Method::DCC: return "dcc";
    }
    return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
    if (s == "sw") return Method::SW;
    if (s == "wvga") return Method::WVGA;
    if (s == "dcc") return Method::DCC;
    return std::nullopt;
}

/// Track produced by one method; `track` is empty when a DCC fit did not converge.
struct MethodResult {
    std::optional<CorrelationTrack> track;
    FitStatus status = FitStatus::Converged;
    std::optional<DccFitReport> dcc;
};

inline MethodResult run_method(Method m, const BivariateSeries& series, WindowSize ws) {
    MethodResult out;
    switch (m) {
        case Method::SW:
            out.track = sw_track(series, ws);
            break;
        case Method::WVGA:
            out.track = wvga_track(series, ws);
            break;
        case Method::DCC: {
            auto report = dcc_track(series);
            out.status = report.status;
            out.track = report.track;
            out.dcc = std::move(report);
            break;
        }
    }
    return out;
}

namespace metrics_detail {

inline void require_defined(const CorrelationTrack& track, const char* what) {
    if (track.defined_count() == 0) {
        throw InvalidInput(std::string(what) + ": track has no defined entries");
    }
}

}  // namespace metrics_detail

/// Mean of |v| over the defined entries.
inline double mean_abs(const CorrelationTrack& track) {
    metrics_detail::require_defined(track, "mean_abs");
    double s = 0.0;
    std::size_t n = 0;
    for (const auto& v : track.values) {
        if (v) {
            s += std::abs(*v);
            ++n;
        }
    }
    return s / static_cast<double>(n);
}

inline double max_abs(const CorrelationTrack& track) {
    metrics_detail::require_defined(track, "max_abs");
    double m = 0.0;
    for (const auto& v : track.values) {
        if (v) m = std::max(m, std::abs(*v));
    }
    return m;
}

/// Mean squared deviation from p(i) over the defined entries, each at its own time index.
inline double mse(const CorrelationTrack& track, const sim::CorrelationProfile& profile) {
    metrics_detail::require_defined(track, "mse");
    double s = 0.0;
    std::size_t n = 0;
    for (std::size_t j = 0; j < track.size(); ++j) {
        if (const auto& v = track.values[j]) {
            const double d = *v - profile(track.start_index + j);
            s += d * d;
            ++n;
        }
    }
    return s / static_cast<double>(n);
}

struct RepSummary {
    double mean_abs = 0.0;
    double max_abs = 0.0;
    std::optional<double> mse;
    bool dnc = false;
};

inline RepSummary summarize(const MethodResult& result,
                            const std::optional<sim::CorrelationProfile>& profile) {
    RepSummary rep;
    // Nothing to score: a failed fit, or a track with no defined entries.
    if (!result.track || result.track->defined_count() == 0) {
        rep.dnc = true;
        return rep;
    }
    rep.mean_abs = mean_abs(*result.track);
    rep.max_abs = max_abs(*result.track);
    if (profile) rep.mse = mse(*result.track, *profile);
    return rep;
}

/// Mean, sample sd (divisor n - 1, zero for n = 1) and median of one field.
struct FieldStats {
    double mean = 0.0;
    double sd = 0.0;
    double median = 0.0;
};

inline FieldStats field_stats(const std::vector<double>& v) {
    FieldStats s;
    if (v.empty()) return s;
    const double n = static_cast<double>(v.size());
    for (double e : v) s.mean += e;
    s.mean /= n;
    if (v.size() > 1) {
        double ss = 0.0;
        for (double e : v) ss += (e - s.mean) * (e - s.mean);
        s.sd = std::sqrt(ss / (n - 1.0));
    }
    s.median = median(v);
    return s;
}

struct McSummary {
    Method method = Method::SW;
    std::size_t n_reps = 0;
    std::size_t n_converged = 0;
    std::optional<FieldStats> mean_abs;
    std::optional<FieldStats> max_abs;
    std::optional<FieldStats> mse;
    std::vector<RepSummary> reps;

    std::size_t dnc() const noexcept { return n_reps - n_converged; }
    bool all_dnc() const noexcept { return n_converged == 0; }
};

/// Aggregates replicate summaries in index order; dnc replicates are counted, not scored.
inline McSummary aggregate(Method method, std::vector<RepSummary> reps) {
    McSummary out;
    out.method = method;
    out.n_reps = reps.size();
    std::vector<double> ma;
    std::vector<double> mx;
    std::vector<double> me;
    for (const auto& r : reps) {
        if (r.dnc) continue;
        ++out.n_converged;
        ma.push_back(r.mean_abs);
        mx.push_back(r.max_abs);
        if (r.mse) me.push_back(*r.mse);
    }
    if (out.n_converged > 0) {
        out.mean_abs = field_stats(ma);
        out.max_abs = field_stats(mx);
        if (!me.empty()) out.mse = field_stats(me);
    }
    out.reps = std::move(reps);
    return out;
}

/**
 * @brief Monte Carlo evaluation of one method on one design.
 *
 * Replicate r uses seed design.seed + r. Replicates run on up to `threads`
 * workers (0 = hardware concurrency); results are placed by index so the
 * summary does not depend on scheduling.
 */
inline McSummary mc_run(const sim::SimDesign& design, Method method, WindowSize ws,
                        std::size_t n_reps, unsigned threads = 0) {
    if (n_reps < 1) {
        throw InvalidInput("mc_run: need at least one replicate");
    }
    design.validate();
    ws.check_fits(design.t_len);

    std::vector<RepSummary> reps(n_reps);
    std::vector<std::exception_ptr> errors(n_reps);
    auto work = [&](std::size_t r) {
        try {
            const auto series = sim::generate(design.for_rep(r));
            reps[r] = summarize(run_method(method, series, ws), design.profile);
        } catch (...) {
            errors[r] = std::current_exception();
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_reps));
    if (threads <= 1) {
        for (std::size_t r = 0; r < n_reps; ++r) work(r);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t r = w; r < n_reps; r += threads) work(r);
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return aggregate(method, std::move(reps));
}

}  // namespace dyncorr
