#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dyncorr/core.hpp"

namespace dyncorr::sim {

enum class ProfileKind { Zero, Sine, Gauss };

/**
 * @brief True correlation p(t) of a simulation design.
 *
 * Sine(k): sin(t / delta) with delta = 1024 / 2^k.
 * Gauss(k): exp(-(t - 250)^2 / (2 (15k)^2)), an unnormalized kernel with
 * peak 1 at t = 250.
 */
struct CorrelationProfile {
    ProfileKind kind = ProfileKind::Zero;
    int k = 0;

    static CorrelationProfile zero() { return {ProfileKind::Zero, 0}; }
    static CorrelationProfile sine(int k) { return {ProfileKind::Sine, k}; }
    static CorrelationProfile gauss(int k) { return {ProfileKind::Gauss, k}; }

    double operator()(std::size_t t) const {
        const double x = static_cast<double>(t);
        switch (kind) {
            case ProfileKind::Zero:
                return 0.0;
            case ProfileKind::Sine: {
                const double delta = 1024.0 / std::ldexp(1.0, k);
                return std::sin(x / delta);
            }
            case ProfileKind::Gauss: {
                const double sd = 15.0 * k;
                const double d = x - 250.0;
                return std::exp(-(d * d) / (2.0 * sd * sd));
            }
        }
        return 0.0;
    }

    friend bool operator==(const CorrelationProfile&, const CorrelationProfile&) = default;
};

inline double profile_eval(const CorrelationProfile& profile, std::size_t t) {
    if (t < 1) {
        throw InvalidInput("profile_eval: time index starts at 1");
    }
    return profile(t);
}

enum class Distribution { Normal, Cauchy };

/// The five named scenarios.
enum class DesignId { D1, D2a, D2b, D3a, D3b };

inline CorrelationProfile profile_for(DesignId id) {
    switch (id) {
        case DesignId::D1: return CorrelationProfile::zero();
        case DesignId::D2a: return CorrelationProfile::sine(3);
        case DesignId::D2b: return CorrelationProfile::sine(4);
        case DesignId::D3a: return CorrelationProfile::gauss(3);
        case DesignId::D3b: return CorrelationProfile::gauss(4);
    }
    return CorrelationProfile::zero();
}

inline std::optional<DesignId> parse_design(std::string_view s) {
    if (s == "d1") return DesignId::D1;
    if (s == "d2a") return DesignId::D2a;
    if (s == "d2b") return DesignId::D2b;
    if (s == "d3a") return DesignId::D3a;
    if (s == "d3b") return DesignId::D3b;
    return std::nullopt;
}

inline std::string to_string(DesignId id) {
    switch (id) {
        case DesignId::D1: return "d1";
        case DesignId::D2a: return "d2a";
        case DesignId::D2b: return "d2b";
        case DesignId::D3a: return "d3a";
        case DesignId::D3b: return "d3b";
    }
    return "?";
}

inline std::optional<Distribution> parse_distribution(std::string_view s) {
    if (s == "normal") return Distribution::Normal;
    if (s == "cauchy") return Distribution::Cauchy;
    return std::nullopt;
}

inline std::string to_string(Distribution d) {
    return d == Distribution::Normal ? "normal" : "cauchy";
}

inline constexpr double kCauchyClip = 50.0;

/**
 * Shape matrix of the Cauchy draws. UnitCorrelation uses [[1, p], [p, 1]],
 * the parameterization of the common bivariate Cauchy generators (a
 * correlation argument, unit scales). Covariance reuses cov_at(p), which
 * rescales the coordinates and so changes how often the clip is hit.
 */
enum class CauchyShape { UnitCorrelation, Covariance };

struct SimDesign {
    CorrelationProfile profile;
    Distribution dist = Distribution::Normal;
    std::size_t t_len = 300;
    double clip = kCauchyClip;
    std::uint64_t seed = 0;
    CauchyShape cauchy_shape = CauchyShape::UnitCorrelation;

    void validate() const {
        if (t_len < 30) throw InvalidInput("SimDesign: t_len must be at least 30");
        if (!(clip > 0.0)) throw InvalidInput("SimDesign: clip must be positive");
    }

    /// Same design with the per-replicate seed seed + rep.
    SimDesign for_rep(std::uint64_t rep) const {
        SimDesign d = *this;
        d.seed = seed + rep;
        return d;
    }
};

inline SimDesign make_design(DesignId id, Distribution dist, std::size_t t_len, std::uint64_t seed) {
    SimDesign d{profile_for(id), dist, t_len, kCauchyClip, seed};
    d.validate();
    return d;
}

/// Covariance [[2, sqrt(6) p], [sqrt(6) p, 3]].
inline Sym2 cov_at(double p) {
    if (!(std::abs(p) <= 1.0)) {
        throw InvalidInput("cov_at: |p| must not exceed 1");
    }
    return {2.0, std::sqrt(6.0) * p, 3.0};
}

/// Generator used by every simulation path (std::mt19937_64 seeded with the design seed).
using Rng = std::mt19937_64;

namespace sim_detail {

struct Chol2 {
    double l11;
    double l21;
    double l22;
};

inline Sym2 shape_at(const SimDesign& design, double p) {
    if (design.dist == Distribution::Cauchy && design.cauchy_shape == CauchyShape::UnitCorrelation) {
        if (!(std::abs(p) <= 1.0)) throw InvalidInput("shape_at: |p| must not exceed 1");
        return {1.0, p, 1.0};
    }
    return cov_at(p);
}

inline Chol2 cholesky(Sym2 c, double p) {
    if (std::abs(p) >= 1.0) {
        c.xx += 1e-12;
        c.yy += 1e-12;
    }
    const double l11 = std::sqrt(c.xx);
    const double l21 = c.xy / l11;
    return {l11, l21, std::sqrt(std::max(c.yy - l21 * l21, 0.0))};
}

// Draws per t, in order: two standard normals for the Gaussian pair, then
// (Cauchy only) one more standard normal whose square is the chi-square(1)
// mixing variable shared by both coordinates.
inline BivariateSeries generate(const SimDesign& design) {
    design.validate();
    Rng rng(design.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x1(design.t_len);
    std::vector<double> x2(design.t_len);
    for (std::size_t i = 0; i < design.t_len; ++i) {
        const double p = design.profile(i + 1);
        const Chol2 l = cholesky(shape_at(design, p), p);
        const double g1 = gauss(rng);
        const double g2 = gauss(rng);
        double z1 = l.l11 * g1;
        double z2 = l.l21 * g1 + l.l22 * g2;
        if (design.dist == Distribution::Cauchy) {
            double u = 0.0;
            while (u == 0.0) {
                const double g = gauss(rng);
                u = g * g;
            }
            const double scale = 1.0 / std::sqrt(u);
            z1 = std::clamp(z1 * scale, -design.clip, design.clip);
            z2 = std::clamp(z2 * scale, -design.clip, design.clip);
        }
        x1[i] = z1;
        x2[i] = z2;
    }
    return {TimeSeries(std::move(x1)), TimeSeries(std::move(x2))};
}

}  // namespace sim_detail

/// Mean-zero bivariate normal draws with covariance cov_at(p(t)) at each t.
inline BivariateSeries gen_normal_pair(const SimDesign& design) {
    if (design.dist != Distribution::Normal) {
        throw InvalidInput("gen_normal_pair: design is not normal");
    }
    return sim_detail::generate(design);
}

/**
 * @brief Bivariate Cauchy draws clipped per coordinate to [-clip, clip].
 *
 * Each pair is a bivariate normal with the design's shape matrix divided by
 * the square root of one chi-square(1) variable shared by both coordinates
 * (a multivariate t with 1 df).
 */
inline BivariateSeries gen_cauchy_pair(const SimDesign& design) {
    if (design.dist != Distribution::Cauchy) {
        throw InvalidInput("gen_cauchy_pair: design is not Cauchy");
    }
    return sim_detail::generate(design);
}

inline BivariateSeries generate(const SimDesign& design) { return sim_detail::generate(design); }

}  // namespace dyncorr::sim
