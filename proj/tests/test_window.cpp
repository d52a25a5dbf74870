#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ddomp/window.hpp"

using namespace ddomp;

namespace {

// Independent oracle: literal dense convolution of a length-L rectangle with
// the half-sine pulse, then peak-normalized.
std::vector<double> conv_oracle(int L, int Lw) {
    const int Lp = L + Lw;
    std::vector<double> c(Lw + 1, 0.0);
    for (int n = 0; n <= Lw; ++n)
        c[n] = std::numbers::pi / (2.0 * Lw) * std::sin(std::numbers::pi * n / Lw);
    std::vector<double> w(Lp, 0.0);
    for (int n = 0; n < Lp; ++n)
        for (int m = 0; m <= Lw; ++m) {
            const int r = n - m;
            if (r >= 0 && r < L) w[n] += c[m];
        }
    double peak = 0.0;
    for (double v : w) peak = std::max(peak, v);
    for (double& v : w) v /= peak;
    return w;
}

}  // namespace

TEST_CASE("L_w = 0 degenerates to the rectangular window") {
    const WindowVector w = build_window({8, 0, 0});
    REQUIRE(w.size() == 8);
    for (int n = 0; n < 8; ++n) CHECK(w.w[n] == 1.0);
}

TEST_CASE("window matches the direct convolution oracle") {
    for (auto [L, Lw] : {std::pair{8, 4}, {16, 2}, {33, 12}, {128, 64}, {8, 8}}) {
        CAPTURE(L);
        CAPTURE(Lw);
        const WindowVector w = build_window({L, Lw, 0});
        const std::vector<double> expect = conv_oracle(L, Lw);
        REQUIRE(w.size() == L + Lw);
        for (int n = 0; n < w.size(); ++n)
            CHECK(std::abs(w.w[n] - expect[n]) < 1e-12);
    }
}

TEST_CASE("flat top is exactly one") {
    for (auto [L, Lw] : {std::pair{8, 4}, {128, 64}, {64, 8}}) {
        const WindowVector w = build_window({L, Lw, 0});
        const int Lp = w.size();
        for (int n = Lw; n <= Lp - 1 - Lw; ++n) CHECK(w.w[n] == 1.0);
    }
}

TEST_CASE("window symmetry and range") {
    for (auto [L, Lw] : {std::pair{8, 0}, {8, 4}, {16, 6}, {128, 64}, {12, 12}}) {
        CAPTURE(L);
        CAPTURE(Lw);
        const WindowVector w = build_window({L, Lw, 0});
        const int Lp = w.size();
        for (int n = 0; n < Lp; ++n) {
            CHECK(w.w[n] >= 0.0);
            CHECK(w.w[n] <= 1.0);
            CHECK(std::abs(w.w[n] - w.w[Lp - 1 - n]) < 1e-12);
        }
        CHECK(w.roll_off == Lw);
    }
}

TEST_CASE("ramps are half-cosine shaped") {
    // The cumulative half-sine ramp approaches sin^2(pi n / (2 L_w)).
    const int L = 128, Lw = 64;
    const WindowVector w = build_window({L, Lw, 0});
    for (int n = 0; n < Lw; ++n) {
        const double ideal =
            std::sin(std::numbers::pi * n / (2.0 * Lw)) * std::sin(std::numbers::pi * n / (2.0 * Lw));
        CHECK(std::abs(w.w[n] - ideal) < 2e-2);  // discrete vs continuous ramp
    }
}

TEST_CASE("invalid roll-off rejected") {
    CHECK_THROWS_AS(build_window({8, 3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(build_window({8, 10, 0}), std::invalid_argument);
}
