#pragma once

#include "dyncorr/core.hpp"

namespace dyncorr {

/**
 * @brief Sliding-window Pearson correlation.
 *
 * The entry at right endpoint i (i = ws..T) is the correlation of both
 * series over time points i-ws+1..i. Windows where either series is
 * constant are missing.
 */
inline CorrelationTrack sw_track(const BivariateSeries& series, WindowSize ws) {
    const std::size_t t_len = series.size();
    const std::size_t w = ws.value();
    ws.check_fits(t_len);
    if (w < 2) {
        throw InvalidInput("sw_track: window must hold at least 2 points");
    }

    const auto x = series.first().values();
    const auto y = series.second().values();
    CorrelationTrack track;
    track.start_index = w;
    track.values.reserve(t_len - w + 1);
    for (std::size_t right = w; right <= t_len; ++right) {
        const std::size_t left = right - w;  // 0-based offset of time right-w+1
        track.values.push_back(pearson(x.subspan(left, w), y.subspan(left, w)));
    }
    return track;
}

}  // namespace dyncorr
