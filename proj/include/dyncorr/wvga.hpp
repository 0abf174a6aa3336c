#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "dyncorr/core.hpp"

namespace dyncorr {

/// Signed visibility weight between two samples `gap` steps apart, in radians.
inline double visibility_weight(double x_a, double x_b, std::size_t gap) {
    if (gap == 0) {
        throw InvalidInput("visibility_weight: gap must be positive");
    }
    return std::atan((x_b - x_a) / static_cast<double>(gap));
}

/**
 * @brief Dense symmetric T x T matrix of visibility weights.
 *
 * Every pair of time points is connected. For a < b the entry is
 * atan((x_b - x_a) / (b - a)), mirrored below the diagonal; the diagonal
 * is zero. Row i is the weight vector of node i.
 */
class WeightMatrix {
public:
    explicit WeightMatrix(const TimeSeries& x) : n_(x.size()), w_(n_ * n_, 0.0) {
        const auto v = x.values();
        for (std::size_t a = 0; a < n_; ++a) {
            for (std::size_t b = a + 1; b < n_; ++b) {
                const double weight = visibility_weight(v[a], v[b], b - a);
                w_[a * n_ + b] = weight;
                w_[b * n_ + a] = weight;
            }
        }
    }

    std::size_t t_len() const noexcept { return n_; }

    /// Entry for 1-based time indices (a, b).
    double operator()(std::size_t a, std::size_t b) const {
        if (a < 1 || b < 1 || a > n_ || b > n_) {
            throw InvalidInput("WeightMatrix: index out of range");
        }
        return w_[(a - 1) * n_ + (b - 1)];
    }

    /// Weight vector of node i (1-based).
    std::span<const double> row(std::size_t i) const {
        if (i < 1 || i > n_) {
            throw InvalidInput("WeightMatrix: row out of range");
        }
        return {w_.data() + (i - 1) * n_, n_};
    }

private:
    std::size_t n_;
    std::vector<double> w_;
};

inline WeightMatrix weight_matrix(const TimeSeries& x) { return WeightMatrix(x); }

struct MedianWeightVector {
    std::size_t right_index = 0;
    std::vector<double> values;
};

namespace detail {

// Column k of rows lo..hi equals row k over columns lo..hi by symmetry, so
// each window is a contiguous slice.
inline void median_weights_into(const WeightMatrix& m, std::size_t i, std::size_t ws,
                                std::vector<double>& scratch, std::vector<double>& out) {
    const std::size_t n = m.t_len();
    const std::size_t lo = i - ws;  // 0-based column of time i-ws+1
    out.resize(n);
    scratch.resize(ws);
    for (std::size_t k = 1; k <= n; ++k) {
        const auto window = m.row(k).subspan(lo, ws);
        std::copy(window.begin(), window.end(), scratch.begin());
        out[k - 1] = median_inplace(scratch);
    }
}

}  // namespace detail

/// Element-wise median of the weight vectors of nodes i-ws+1..i.
inline MedianWeightVector median_weight_vector(const WeightMatrix& m, std::size_t i, WindowSize ws) {
    const std::size_t w = ws.value();
    if (i < w) {
        throw InvalidInput("median_weight_vector: right index precedes a full window");
    }
    if (i > m.t_len()) {
        throw InvalidInput("median_weight_vector: right index beyond series end");
    }
    MedianWeightVector result;
    result.right_index = i;
    std::vector<double> scratch;
    detail::median_weights_into(m, i, w, scratch, result.values);
    return result;
}

namespace detail {

/**
 * Median weight vectors for every right endpoint i = ws..T, stored row-wise:
 * entry [(i - ws) * T + (k - 1)]. Each column slides a sorted window along
 * row k of the matrix, which yields the same order statistics as sorting
 * each window from scratch.
 */
inline std::vector<double> all_median_weights(const WeightMatrix& m, std::size_t ws) {
    const std::size_t n = m.t_len();
    const std::size_t n_out = n - ws + 1;
    std::vector<double> med(n_out * n);
    std::vector<double> window;
    window.reserve(ws);
    const std::size_t mid = ws / 2;
    for (std::size_t k = 1; k <= n; ++k) {
        const auto row = m.row(k);
        window.assign(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(ws));
        std::sort(window.begin(), window.end());
        for (std::size_t j = 0;; ++j) {
            med[j * n + (k - 1)] =
                ws % 2 == 1 ? window[mid] : 0.5 * (window[mid - 1] + window[mid]);
            if (j + 1 == n_out) break;
            window.erase(std::lower_bound(window.begin(), window.end(), row[j]));
            const double incoming = row[j + ws];
            window.insert(std::upper_bound(window.begin(), window.end(), incoming), incoming);
        }
    }
    return med;
}

}  // namespace detail

/**
 * @brief Windowed visibility-graph correlation track.
 *
 * At right endpoint i the estimate is the Pearson correlation between the
 * two series' median weight vectors, taken over all T positions.
 */
inline CorrelationTrack wvga_track(const BivariateSeries& series, WindowSize ws) {
    const std::size_t t_len = series.size();
    const std::size_t w = ws.value();
    ws.check_fits(t_len);

    const auto med1 = detail::all_median_weights(WeightMatrix(series.first()), w);
    const auto med2 = detail::all_median_weights(WeightMatrix(series.second()), w);

    CorrelationTrack track;
    track.start_index = w;
    const std::size_t n_out = t_len - w + 1;
    track.values.reserve(n_out);
    for (std::size_t j = 0; j < n_out; ++j) {
        const std::span<const double> a(med1.data() + j * t_len, t_len);
        const std::span<const double> b(med2.data() + j * t_len, t_len);
        track.values.push_back(pearson(a, b));
    }
    return track;
}

}  // namespace dyncorr
