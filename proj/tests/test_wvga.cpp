#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dyncorr/wvga.hpp"
#include "oracles.hpp"

using namespace dyncorr;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<double> v(n);
    for (auto& e : v) e = g(rng);
    return v;
}

CorrelationTrack track_of(const std::vector<double>& x, const std::vector<double>& y, std::size_t ws) {
    return wvga_track({TimeSeries(x), TimeSeries(y)}, WindowSize(ws));
}

}  // namespace

TEST(VisibilityWeight, Examples) {
    EXPECT_NEAR(visibility_weight(0.0, 1.0, 1), std::numbers::pi / 4, 1e-15);
    EXPECT_EQ(visibility_weight(3.0, 3.0, 5), 0.0);
    EXPECT_NEAR(visibility_weight(2.0, -2.0, 2), -1.1071487177940904, 1e-15);
    EXPECT_THROW(visibility_weight(1.0, 2.0, 0), InvalidInput);
}

TEST(WeightMatrix, SmallExample) {
    const auto m = weight_matrix(TimeSeries({0.0, 2.0, 1.0}));
    EXPECT_EQ(m(1, 1), 0.0);
    EXPECT_NEAR(m(1, 2), std::atan(2.0), 1e-15);
    EXPECT_NEAR(m(1, 3), std::atan(0.5), 1e-15);
    EXPECT_NEAR(m(2, 3), -std::numbers::pi / 4, 1e-15);
}

TEST(WeightMatrix, SymmetricBoundedZeroDiagonal) {
    const auto x = noise(60, 1);
    const auto m = weight_matrix(TimeSeries(x));
    for (std::size_t a = 1; a <= 60; ++a) {
        EXPECT_EQ(m(a, a), 0.0);
        for (std::size_t b = 1; b <= 60; ++b) {
            EXPECT_EQ(m(a, b), m(b, a));
            EXPECT_LT(std::abs(m(a, b)), std::numbers::pi / 2);
            EXPECT_EQ(m(a, b), oracle::weight(x, a, b));
        }
    }
}

TEST(MedianWeightVector, WindowOfOneIsTheRow) {
    const auto x = noise(25, 2);
    const auto m = weight_matrix(TimeSeries(x));
    for (std::size_t i = 1; i <= 25; ++i) {
        const auto v = median_weight_vector(m, i, WindowSize(1));
        const auto row = m.row(i);
        ASSERT_EQ(v.values.size(), 25u);
        for (std::size_t k = 0; k < 25; ++k) EXPECT_EQ(v.values[k], row[k]);
    }
}

TEST(MedianWeightVector, OddWindowPicksMiddleWeight) {
    // Weights from node 1 to nodes 2, 3, 4 are 0.1, 0.3, 0.2 by construction.
    const std::vector<double> x{0.0, std::tan(0.1), 2.0 * std::tan(0.3), 3.0 * std::tan(0.2)};
    const auto m = weight_matrix(TimeSeries(x));
    const auto v = median_weight_vector(m, 4, WindowSize(3));
    EXPECT_NEAR(v.values[0], 0.2, 1e-15);
    EXPECT_EQ(v.right_index, 4u);
}

TEST(MedianWeightVector, RangeChecks) {
    const auto m = weight_matrix(TimeSeries(noise(10, 3)));
    EXPECT_THROW(median_weight_vector(m, 4, WindowSize(5)), InvalidInput);
    EXPECT_THROW(median_weight_vector(m, 11, WindowSize(5)), InvalidInput);
}

TEST(MedianWeightVector, SlidingMatchesDirect) {
    const auto x = noise(70, 4);
    const auto m = weight_matrix(TimeSeries(x));
    for (std::size_t ws : {1u, 2u, 6u, 15u, 70u}) {
        const auto all = detail::all_median_weights(m, ws);
        for (std::size_t i = ws; i <= 70; ++i) {
            const auto direct = median_weight_vector(m, i, WindowSize(ws));
            for (std::size_t k = 0; k < 70; ++k) {
                ASSERT_EQ(all[(i - ws) * 70 + k], direct.values[k]) << ws << " " << i << " " << k;
            }
        }
    }
}

TEST(WvgaTrack, MatchesBruteForce) {
    const auto x = noise(40, 5);
    const auto y = noise(40, 6);
    for (std::size_t ws : {2u, 7u, 15u}) {
        const auto t = track_of(x, y, ws);
        const auto ref = oracle::wvga(x, y, ws);
        ASSERT_EQ(t.size(), ref.size());
        EXPECT_EQ(t.start_index, ws);
        for (std::size_t j = 0; j < ref.size(); ++j) {
            ASSERT_EQ(t.values[j].has_value(), ref[j].has_value());
            if (ref[j]) {
                EXPECT_NEAR(*t.values[j], *ref[j], 1e-12);
            }
        }
    }
}

TEST(WvgaTrack, SelfCorrelationIsOne) {
    const auto x = noise(80, 7);
    for (const auto& v : track_of(x, x, 15).values) EXPECT_NEAR(*v, 1.0, 1e-14);
}

TEST(WvgaTrack, ShiftInvarianceExactOnDyadicData) {
    // Quarter-integer data and integer shifts keep every difference exact.
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> q(-40, 40);
    std::vector<double> x(60), y(60), xs(60), ys(60);
    for (std::size_t i = 0; i < 60; ++i) {
        x[i] = q(rng) / 4.0;
        y[i] = q(rng) / 4.0;
        xs[i] = x[i] + 17.0;
        ys[i] = y[i] - 5.0;
    }
    const auto a = track_of(x, y, 15);
    const auto b = track_of(xs, ys, 15);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(a.values[j], b.values[j]);
}

TEST(WvgaTrack, ShiftInvarianceGeneralData) {
    const auto x = noise(60, 9);
    const auto y = noise(60, 10);
    std::vector<double> xs(x), ys(y);
    for (auto& v : xs) v += 3.7;
    for (auto& v : ys) v -= 1.3;
    const auto a = track_of(x, y, 15);
    const auto b = track_of(xs, ys, 15);
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(*a.values[j], *b.values[j], 1e-12);
}

TEST(WvgaTrack, NegatingOneSeriesFlipsTheSign) {
    const auto x = noise(50, 11);
    const auto y = noise(50, 12);
    std::vector<double> ny(y);
    for (auto& v : ny) v = -v;
    const auto a = track_of(x, y, 15);
    const auto b = track_of(x, ny, 15);
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(*b.values[j], -*a.values[j]);
}

TEST(WvgaTrack, ExtremeSpikesStayInRange) {
    auto x = noise(50, 13);
    auto y = noise(50, 14);
    x[10] = 1e9;
    x[30] = -1e9;
    y[20] = 1e9;
    for (const auto& v : track_of(x, y, 15).values) {
        if (v) {
            EXPECT_TRUE(std::isfinite(*v));
            EXPECT_LE(std::abs(*v), 1.0);
        }
    }
}

TEST(WvgaTrack, WindowOfOneCorrelatesRows) {
    const auto x = noise(30, 15);
    const auto y = noise(30, 16);
    const auto t = track_of(x, y, 1);
    const auto mx = weight_matrix(TimeSeries(x));
    const auto my = weight_matrix(TimeSeries(y));
    ASSERT_EQ(t.size(), 30u);
    for (std::size_t i = 1; i <= 30; ++i) EXPECT_EQ(*t.at(i), *pearson(mx.row(i), my.row(i)));
}

TEST(WvgaTrack, WindowTooLong) {
    const auto x = noise(10, 17);
    EXPECT_THROW(track_of(x, x, 11), InvalidInput);
}
