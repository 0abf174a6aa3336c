#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dyncorr {

/// Raised when a caller violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a recursion or likelihood leaves the finite reals.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief A real-valued series of length T >= 2 with finite entries.
 *
 * Time is 1-based in every external interface; `at(t)` follows that
 * convention while `values()` exposes the 0-based storage.
 */
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values) : values_(std::move(values)) {
        if (values_.size() < 2) {
            throw InvalidInput("TimeSeries: length must be at least 2");
        }
        for (double v : values_) {
            if (!std::isfinite(v)) {
                throw InvalidInput("TimeSeries: non-finite value");
            }
        }
    }

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }

    /// Value at 1-based time index t.
    double at(std::size_t t) const {
        if (t < 1 || t > values_.size()) {
            throw InvalidInput("TimeSeries: time index out of range");
        }
        return values_[t - 1];
    }

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<double> values_;
};

/// Two aligned series of identical length.
class BivariateSeries {
public:
    BivariateSeries(TimeSeries first, TimeSeries second)
        : first_(std::move(first)), second_(std::move(second)) {
        if (first_.size() != second_.size()) {
            throw InvalidInput("BivariateSeries: series lengths differ");
        }
    }

    const TimeSeries& first() const noexcept { return first_; }
    const TimeSeries& second() const noexcept { return second_; }
    std::size_t size() const noexcept { return first_.size(); }

    friend bool operator==(const BivariateSeries&, const BivariateSeries&) = default;

private:
    TimeSeries first_;
    TimeSeries second_;
};

/// Window length ws, validated against a series length when used.
class WindowSize {
public:
    explicit WindowSize(std::size_t ws) : ws_(ws) {
        if (ws_ < 1) {
            throw InvalidInput("WindowSize: must be positive");
        }
    }

    std::size_t value() const noexcept { return ws_; }

    void check_fits(std::size_t t_len) const {
        if (ws_ > t_len) {
            throw InvalidInput("window size " + std::to_string(ws_) +
                               " exceeds series length " + std::to_string(t_len));
        }
    }

private:
    std::size_t ws_;
};

inline constexpr std::size_t kDefaultWindow = 15;

/// Symmetric 2 x 2 matrix [[xx, xy], [xy, yy]].
struct Sym2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    double det() const noexcept { return xx * yy - xy * xy; }
    friend bool operator==(const Sym2&, const Sym2&) = default;
};

/// An estimate that is either a correlation in [-1, 1] or missing.
using Correlation = std::optional<double>;

/**
 * @brief Correlation estimates aligned to 1-based time indices.
 *
 * Entry j (0-based) belongs to time `start_index + j`. Windowed methods
 * start at ws, DCC starts at 1; either way the track ends at T.
 */
struct CorrelationTrack {
    std::size_t start_index = 1;
    std::vector<Correlation> values;

    std::size_t size() const noexcept { return values.size(); }
    std::size_t end_index() const noexcept { return start_index + values.size() - 1; }

    /// Entry at 1-based time index t.
    const Correlation& at(std::size_t t) const {
        if (t < start_index || t > end_index()) {
            throw InvalidInput("CorrelationTrack: time index out of range");
        }
        return values[t - start_index];
    }

    std::size_t defined_count() const noexcept {
        return static_cast<std::size_t>(
            std::count_if(values.begin(), values.end(),
                          [](const Correlation& c) { return c.has_value(); }));
    }

    friend bool operator==(const CorrelationTrack&, const CorrelationTrack&) = default;
};

namespace detail {

inline void check_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InvalidInput("pearson: length mismatch");
    }
    if (x.size() < 2) {
        throw InvalidInput("pearson: need at least 2 observations");
    }
}

inline bool is_constant(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
}

inline double mean(std::span<const double> v) {
    double s = 0.0;
    for (double e : v) s += e;
    return s / static_cast<double>(v.size());
}

/// Median of a scratch buffer; reorders the buffer.
inline double median_inplace(std::span<double> v) {
    const std::size_t n = v.size();
    const std::size_t mid = n / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (n % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

}  // namespace detail

/**
 * @brief Sample Pearson correlation.
 *
 * Returns std::nullopt when either input has zero sample variance, i.e. all
 * of its values are identical. The result is clamped to [-1, 1].
 */
inline Correlation pearson(std::span<const double> x, std::span<const double> y) {
    detail::check_pair(x, y);
    if (detail::is_constant(x) || detail::is_constant(y)) {
        return std::nullopt;
    }
    const double mx = detail::mean(x);
    const double my = detail::mean(y);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        return std::nullopt;
    }
    const double r = sxy / (std::sqrt(sxx) * std::sqrt(syy));
    return std::clamp(r, -1.0, 1.0);
}

/// Sample median; even lengths average the two middle order statistics.
inline double median(std::span<const double> v) {
    if (v.empty()) {
        throw InvalidInput("median: empty input");
    }
    std::vector<double> scratch(v.begin(), v.end());
    return detail::median_inplace(scratch);
}

}  // namespace dyncorr
