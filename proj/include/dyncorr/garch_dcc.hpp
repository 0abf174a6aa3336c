#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dyncorr/core.hpp"
#include "dyncorr/optim.hpp"

namespace dyncorr {

/// Per-series GARCH(1,1) parameters: sigma2_t = omega + alpha * eps_{t-1}^2 + beta * sigma2_{t-1}.
struct GarchParams {
    double omega = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    bool converged = false;
    double loglik = 0.0;

    bool admissible() const noexcept {
        return omega > 0.0 && alpha >= 0.0 && beta >= 0.0 && alpha + beta < 1.0 &&
               std::isfinite(omega);
    }
};

/// DCC(1,1) coupling: Q_t = (1 - a - b) S + a z_{t-1} z_{t-1}' + b Q_{t-1}.
struct DccParams {
    double a = 0.0;
    double b = 0.0;
    Sym2 s_bar{1.0, 0.0, 1.0};
    bool converged = false;
    double loglik = 0.0;

    bool admissible() const noexcept {
        return a >= 0.0 && b >= 0.0 && a + b < 1.0 && s_bar.xx == 1.0 && s_bar.yy == 1.0 &&
               std::abs(s_bar.xy) <= 1.0;
    }
};

enum class FitStatus { Converged, DidNotConverge };

struct GarchFit {
    GarchParams params;
    std::vector<double> std_resid;  ///< eps_t / sigma_t; empty if the fit failed
};

struct DccFitReport {
    std::array<GarchParams, 2> garch{};
    DccParams dcc;
    std::optional<CorrelationTrack> track;
    FitStatus status = FitStatus::DidNotConverge;
};

inline constexpr std::size_t kMinDccLength = 30;

namespace garch_detail {

/// Persistence cap applied to the softmax shares.
inline constexpr double kPersistenceCap = 0.999;

inline double mean_square(std::span<const double> eps) {
    double s = 0.0;
    for (double e : eps) s += e * e;
    return s / static_cast<double>(eps.size());
}

/// Two of three softmax shares, with the third logit pinned at zero.
inline std::array<double, 2> capped_shares(double l1, double l2) {
    const double m = std::max({l1, l2, 0.0});
    const double e1 = std::exp(l1 - m);
    const double e2 = std::exp(l2 - m);
    const double e3 = std::exp(-m);
    const double total = e1 + e2 + e3;
    return {kPersistenceCap * e1 / total, kPersistenceCap * e2 / total};
}

inline std::array<double, 2> shares_to_logits(double first, double second) {
    const double rest = 1.0 - (first + second) / kPersistenceCap;
    return {std::log(first / kPersistenceCap / rest), std::log(second / kPersistenceCap / rest)};
}

// Fills `sigma2`; returns false on a non-finite or non-positive value.
inline bool filter_into(double omega, double alpha, double beta, std::span<const double> eps,
                        std::vector<double>& sigma2) {
    sigma2.resize(eps.size());
    // Pre-sample state: both the lagged variance and the lagged squared
    // innovation are set to the sample variance.
    const double backcast = mean_square(eps);
    double prev_var = backcast;
    double prev_sq = backcast;
    for (std::size_t t = 0; t < eps.size(); ++t) {
        const double v = omega + alpha * prev_sq + beta * prev_var;
        if (!std::isfinite(v) || v <= 0.0) {
            return false;
        }
        sigma2[t] = v;
        prev_var = v;
        prev_sq = eps[t] * eps[t];
    }
    return true;
}

inline double loglik_from(std::span<const double> eps, std::span<const double> sigma2) {
    double s = 0.0;
    for (std::size_t t = 0; t < eps.size(); ++t) {
        s += std::log(sigma2[t]) + eps[t] * eps[t] / sigma2[t];
    }
    return -0.5 * s;
}

/// Correlation path of the DCC recursion; an empty result signals |rho| >= 1
/// or a non-finite state.
inline std::vector<double> rho_path(double a, double b, const Sym2& s_bar,
                                    std::span<const double> z1, std::span<const double> z2,
                                    std::vector<Sym2>* q_path = nullptr) {
    const std::size_t n = z1.size();
    std::vector<double> rho(n);
    if (q_path) q_path->resize(n);
    const double c = 1.0 - a - b;
    Sym2 q = s_bar;
    for (std::size_t t = 0; t < n; ++t) {
        if (t > 0) {
            q = {c * s_bar.xx + a * z1[t - 1] * z1[t - 1] + b * q.xx,
                 c * s_bar.xy + a * z1[t - 1] * z2[t - 1] + b * q.xy,
                 c * s_bar.yy + a * z2[t - 1] * z2[t - 1] + b * q.yy};
        }
        if (q_path) (*q_path)[t] = q;
        const double r = q.xy / std::sqrt(q.xx * q.yy);
        if (!std::isfinite(r)) {
            return {};
        }
        rho[t] = std::clamp(r, -1.0, 1.0);
    }
    return rho;
}

inline double dcc_loglik_from(std::span<const double> rho, std::span<const double> z1,
                              std::span<const double> z2) {
    double s = 0.0;
    for (std::size_t t = 0; t < rho.size(); ++t) {
        const double one_minus = 1.0 - rho[t] * rho[t];
        if (!(one_minus > 0.0)) {
            return -HUGE_VAL;
        }
        s += std::log(one_minus) +
             (z1[t] * z1[t] + z2[t] * z2[t] - 2.0 * rho[t] * z1[t] * z2[t]) / one_minus;
    }
    return -0.5 * s;
}

}  // namespace garch_detail

/**
 * @brief Conditional variances of a GARCH(1,1) process.
 *
 * The recursion starts from a pre-sample state in which the lagged variance
 * and the lagged squared innovation both equal the sample variance (mean of
 * squares of the demeaned input), so every output is at least omega.
 */
inline std::vector<double> garch_filter(const GarchParams& params, std::span<const double> eps) {
    if (!params.admissible()) {
        throw InvalidInput("garch_filter: parameters violate omega > 0, alpha, beta >= 0, alpha + beta < 1");
    }
    if (eps.size() < 2) {
        throw InvalidInput("garch_filter: need at least 2 observations");
    }
    std::vector<double> sigma2;
    if (!garch_detail::filter_into(params.omega, params.alpha, params.beta, eps, sigma2)) {
        throw NumericalFailure("garch_filter: non-finite conditional variance");
    }
    return sigma2;
}

inline std::vector<double> garch_filter(const GarchParams& params, const TimeSeries& eps) {
    return garch_filter(params, eps.values());
}

/// Gaussian quasi log-likelihood without the additive constant.
inline double garch_loglik(const GarchParams& params, std::span<const double> eps) {
    const auto sigma2 = garch_filter(params, eps);
    return garch_detail::loglik_from(eps, sigma2);
}

inline double garch_loglik(const GarchParams& params, const TimeSeries& eps) {
    return garch_loglik(params, eps.values());
}

/**
 * @brief Stage-one maximum likelihood fit of GARCH(1,1).
 *
 * Demeans the input and maximizes the quasi-likelihood over
 * omega = exp(u), (alpha, beta) = 0.999 * softmax(l1, l2, 0)[0..1].
 * Failure to converge is reported through `params.converged`.
 */
inline GarchFit garch_fit(const TimeSeries& x, optim::NelderMeadOptions opts = {}) {
    const std::size_t n = x.size();
    if (n < kMinDccLength) {
        throw InvalidInput("garch_fit: need at least 30 observations");
    }
    const double mu = detail::mean(x.values());
    std::vector<double> eps(n);
    for (std::size_t t = 0; t < n; ++t) eps[t] = x.values()[t] - mu;

    GarchFit fit;
    const double var = garch_detail::mean_square(eps);
    if (!(var > 0.0) || detail::is_constant(x.values())) {
        return fit;
    }

    constexpr double alpha0 = 0.05;
    constexpr double beta0 = 0.90;
    const auto logits0 = garch_detail::shares_to_logits(alpha0, beta0);
    std::vector<double> theta0{std::log((1.0 - alpha0 - beta0) * var), logits0[0], logits0[1]};

    std::vector<double> sigma2;
    auto negloglik = [&](const std::vector<double>& theta) {
        const double omega = std::exp(theta[0]);
        const auto s = garch_detail::capped_shares(theta[1], theta[2]);
        if (!(omega > 0.0) || !std::isfinite(omega) ||
            !garch_detail::filter_into(omega, s[0], s[1], eps, sigma2)) {
            return HUGE_VAL;
        }
        const double ll = garch_detail::loglik_from(eps, sigma2);
        return std::isfinite(ll) ? -ll : HUGE_VAL;
    };

    const auto res = optim::minimize(negloglik, theta0, opts);
    const auto s = garch_detail::capped_shares(res.x_min[1], res.x_min[2]);
    GarchParams& p = fit.params;
    p.omega = std::exp(res.x_min[0]);
    p.alpha = s[0];
    p.beta = s[1];
    p.loglik = -res.f_min;
    p.converged = res.converged && std::isfinite(p.loglik) && p.admissible();
    if (!p.converged) {
        return fit;
    }

    garch_detail::filter_into(p.omega, p.alpha, p.beta, eps, sigma2);
    fit.std_resid.resize(n);
    for (std::size_t t = 0; t < n; ++t) fit.std_resid[t] = eps[t] / std::sqrt(sigma2[t]);
    return fit;
}

/// DCC correlation path for given coupling parameters; Q_1 = S.
inline std::vector<double> dcc_filter(const DccParams& params, std::span<const double> z1,
                                      std::span<const double> z2) {
    if (z1.size() != z2.size()) {
        throw InvalidInput("dcc_filter: residual lengths differ");
    }
    if (!(params.a >= 0.0 && params.b >= 0.0 && params.a + params.b < 1.0)) {
        throw InvalidInput("dcc_filter: parameters violate a, b >= 0, a + b < 1");
    }
    auto rho = garch_detail::rho_path(params.a, params.b, params.s_bar, z1, z2);
    if (rho.empty() && !z1.empty()) {
        throw NumericalFailure("dcc_filter: non-finite correlation");
    }
    return rho;
}

/// The Q_t matrices along a filtered path.
inline std::vector<Sym2> dcc_q_path(const DccParams& params, std::span<const double> z1,
                                    std::span<const double> z2) {
    std::vector<Sym2> q;
    garch_detail::rho_path(params.a, params.b, params.s_bar, z1, z2, &q);
    return q;
}

/// Stage-two log-likelihood of the coupling parameters.
inline double dcc_loglik(const DccParams& params, std::span<const double> z1,
                         std::span<const double> z2) {
    const auto rho = dcc_filter(params, z1, z2);
    return garch_detail::dcc_loglik_from(rho, z1, z2);
}

/**
 * @brief Stage-two fit of the DCC(1,1) coupling on standardized residuals.
 *
 * S is the sample correlation of (z1, z2). A degenerate S with |S_12| at 1
 * leaves the likelihood unbounded and is reported as non-convergence.
 */
inline DccParams dcc_fit(std::span<const double> z1, std::span<const double> z2,
                         optim::NelderMeadOptions opts = {}) {
    if (z1.size() != z2.size()) {
        throw InvalidInput("dcc_fit: residual lengths differ");
    }
    if (z1.size() < 2) {
        throw InvalidInput("dcc_fit: need at least 2 observations");
    }
    DccParams p;
    const auto r = pearson(z1, z2);
    if (!r) {
        return p;
    }
    p.s_bar = {1.0, *r, 1.0};
    if (1.0 - std::abs(*r) < 1e-12) {
        return p;
    }

    constexpr double a0 = 0.05;
    constexpr double b0 = 0.90;
    const auto logits0 = garch_detail::shares_to_logits(a0, b0);

    auto negloglik = [&](const std::vector<double>& theta) {
        const auto s = garch_detail::capped_shares(theta[0], theta[1]);
        const auto rho = garch_detail::rho_path(s[0], s[1], p.s_bar, z1, z2);
        if (rho.empty()) {
            return HUGE_VAL;
        }
        const double ll = garch_detail::dcc_loglik_from(rho, z1, z2);
        return std::isfinite(ll) ? -ll : HUGE_VAL;
    };

    const std::vector<double> theta0{logits0[0], logits0[1]};
    if (!std::isfinite(negloglik(theta0))) {
        return p;
    }
    const auto res = optim::minimize(negloglik, theta0, opts);
    const auto s = garch_detail::capped_shares(res.x_min[0], res.x_min[1]);
    p.a = s[0];
    p.b = s[1];
    p.loglik = -res.f_min;
    p.converged = res.converged && std::isfinite(p.loglik) && p.admissible();
    return p;
}

/// Two-stage DCC estimate of the dynamic correlation; the track starts at t = 1.
inline DccFitReport dcc_track(const BivariateSeries& series, optim::NelderMeadOptions opts = {}) {
    if (series.size() < kMinDccLength) {
        throw InvalidInput("dcc_track: need at least 30 observations");
    }
    DccFitReport report;
    const auto g1 = garch_fit(series.first(), opts);
    const auto g2 = garch_fit(series.second(), opts);
    report.garch = {g1.params, g2.params};
    if (!g1.params.converged || !g2.params.converged) {
        return report;
    }
    report.dcc = dcc_fit(g1.std_resid, g2.std_resid, opts);
    if (!report.dcc.converged) {
        return report;
    }
    auto rho = garch_detail::rho_path(report.dcc.a, report.dcc.b, report.dcc.s_bar,
                                      g1.std_resid, g2.std_resid);
    if (rho.empty()) {
        return report;
    }
    CorrelationTrack track;
    track.start_index = 1;
    track.values.assign(rho.begin(), rho.end());
    report.track = std::move(track);
    report.status = FitStatus::Converged;
    return report;
}

}  // namespace dyncorr
