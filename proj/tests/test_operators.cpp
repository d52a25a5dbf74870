#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ddomp/operators.hpp"

using namespace ddomp;

namespace {

VecC random_vec(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    VecC v(n);
    for (int i = 0; i < n; ++i) v[i] = Complex(g(rng), g(rng));
    return v;
}

// Scalar-loop reference for the received signal: the channel acts as
// r[n] = sum_p h_p e^{j 2 pi kappa_p (n - l_p) / L} s[(n - l_p) mod L].
// Uses std::exp directly so it shares no code with unit_phase.
VecC eq3_loop(const PathSet& paths, const VecC& s) {
    const int L = static_cast<int>(s.size());
    VecC r = VecC::Zero(L);
    for (const Path& p : paths.paths)
        for (int n = 0; n < L; ++n) {
            int idx = (n - p.delay) % L;
            if (idx < 0) idx += L;
            const Complex ph = std::exp(
                Complex(0.0, 2.0 * std::numbers::pi * p.doppler * (n - p.delay) / L));
            r[n] += p.gain * ph * s[idx];
        }
    return r;
}

}  // namespace

TEST_CASE("cyclic extension row selection") {
    // L=4, L_w=2, ell_max=1 gives L_cp=2, L_cs=1
    FrameSpec f{4, 2, 1};
    VecC x(4);
    x << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0);  // a,b,c,d

    const VecC full = extend_pilot(x, f, ExtensionVariant::full);
    REQUIRE(full.size() == 7);
    double expect_full[] = {3, 4, 1, 2, 3, 4, 1};  // c,d,a,b,c,d,a
    for (int i = 0; i < 7; ++i) CHECK(full[i].real() == expect_full[i]);

    const VecC trimmed = extend_pilot(x, f, ExtensionVariant::window_trimmed);
    REQUIRE(trimmed.size() == 6);
    double expect_trim[] = {4, 1, 2, 3, 4, 1};  // d,a,b,c,d,a
    for (int i = 0; i < 6; ++i) CHECK(trimmed[i].real() == expect_trim[i]);

    // matrix route agrees with direct indexing
    for (auto variant : {ExtensionVariant::full, ExtensionVariant::window_trimmed}) {
        const MatR t = cyclic_extension(f, variant);
        const VecC via_matrix = t.cast<Complex>() * x;
        const VecC direct = extend_pilot(x, f, variant);
        REQUIRE(via_matrix.size() == direct.size());
        CHECK((via_matrix - direct).norm() == 0.0);
    }
}

TEST_CASE("degenerate extension is the identity") {
    FrameSpec f{4, 0, 0};  // L_cp = L_cs = 0
    const MatR t = cyclic_extension(f, ExtensionVariant::full);
    CHECK(t.rows() == 4);
    CHECK((t - MatR::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("permutation power basics") {
    CHECK((permutation_power(5, 0) - MatR::Identity(5, 5)).norm() == 0.0);

    VecC v(4);
    v << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0);
    const VecC shifted = permutation_power(4, 1).cast<Complex>() * v;
    double expect[] = {4, 1, 2, 3};  // one-step forward cyclic shift
    for (int i = 0; i < 4; ++i) CHECK(shifted[i].real() == expect[i]);

    CHECK_THROWS_AS(permutation_power(4, 4), std::invalid_argument);
    CHECK_THROWS_AS(permutation_power(4, -1), std::invalid_argument);
}

TEST_CASE("permutation group property and unitarity") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(0, 9);
    for (int trial = 0; trial < 20; ++trial) {
        const int a = d(rng), b = d(rng);
        const MatR lhs = permutation_power(10, a) * permutation_power(10, b);
        const MatR rhs = permutation_power(10, (a + b) % 10);
        CHECK((lhs - rhs).norm() == 0.0);
    }
    const MatR p = permutation_power(10, 3);
    CHECK((p.transpose() * p - MatR::Identity(10, 10)).norm() == 0.0);
}

TEST_CASE("doppler matrix entries") {
    CHECK((doppler_matrix(6, 0.0, 6, 0) - MatC::Identity(6, 6)).norm() == 0.0);

    const MatC d = doppler_matrix(4, 1.0, 4, 0);
    const Complex expect[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int n = 0; n < 4; ++n) CHECK(std::abs(d(n, n) - expect[n]) < 1e-15);

    // unit modulus everywhere
    const MatC f = doppler_matrix(17, 0.31, 128, -5);
    for (int n = 0; n < 17; ++n) CHECK(std::abs(std::abs(f(n, n)) - 1.0) < 1e-15);
}

TEST_CASE("doppler matrix on the oversampled window grid") {
    // With size L', offset -L_w/2 and kappa = k / u_nu, the first diagonal
    // entry is e^{-j 2 pi (L_w/2) k / (L u_nu)}.
    const int L = 128, Lw = 64, u = 2;
    const int Lp = L + Lw;
    for (int k : {0, 1, 5, 15}) {
        const MatC d = doppler_matrix(Lp, static_cast<double>(k) / u, L, -Lw / 2);
        const Complex expect =
            std::polar(1.0, -2.0 * std::numbers::pi * (Lw / 2.0) * k / (L * u));
        CHECK(std::abs(d(0, 0) - expect) < 1e-14);
        // last entry follows the same ramp: exponent (L' - 1 - L_w/2)
        const Complex last =
            std::polar(1.0, 2.0 * std::numbers::pi * (Lp - 1.0 - Lw / 2.0) * k / (L * u));
        CHECK(std::abs(d(Lp - 1, Lp - 1) - last) < 1e-14);
    }
}

TEST_CASE("component matrix trivial cases") {
    CHECK((component_matrix(6, 0, 0.0, 6, 0) - MatC::Identity(6, 6)).norm() == 0.0);
    const MatC g = component_matrix(4, 1, 0.0, 4, 0);
    CHECK((g - permutation_power(4, 1).cast<Complex>()).norm() == 0.0);
}

TEST_CASE("component matrix acts like the scalar loop, fractional kappa") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> kd(0.0, 7.9);
    std::uniform_int_distribution<int> ld(0, 7);
    const int L = 32;
    for (int trial = 0; trial < 25; ++trial) {
        const int ell = ld(rng);
        const double kappa = kd(rng);
        const VecC s = random_vec(L, rng);
        const VecC via_matrix = component_matrix(L, ell, kappa, L, 0) * s;
        PathSet single{{{Complex(1, 0), ell, kappa}}};
        const VecC via_loop = eq3_loop(single, s);
        CHECK((via_matrix - via_loop).norm() / via_loop.norm() < 1e-13);
    }
}

TEST_CASE("component equals doppler-times-permutation, bit for bit") {
    // component(l, kappa, off) == doppler(kappa, off - l) * permutation(l):
    // the shifted-offset diagonal carries the unwrapped phase to every row.
    for (auto [size, ell, kappa, L, off] :
         {std::tuple{16, 3, 0.7, 16, 0}, {24, 11, 2.25, 16, -4}, {8, 0, 1.0, 8, 2}}) {
        const MatC lhs = component_matrix(size, ell, kappa, L, off);
        const MatC rhs = doppler_matrix(size, kappa, L, off - ell) *
                         permutation_power(size, ell).cast<Complex>();
        CHECK((lhs.array() == rhs.array()).all());
    }
    // For integer kappa the printed order permutation * doppler agrees too.
    const MatC lhs = component_matrix(12, 5, 3.0, 12, 0);
    const MatC rhs =
        permutation_power(12, 5).cast<Complex>() * doppler_matrix(12, 3.0, 12, 0);
    CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("component preserves energy") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const VecC v = random_vec(20, rng);
        const MatC g = component_matrix(20, 7, 1.37, 16, -3);
        CHECK(std::abs((g * v).norm() - v.norm()) < 1e-12 * v.norm());
    }
}

TEST_CASE("channel matrix superposition") {
    PathSet empty;
    CHECK(channel_matrix(empty, 8, 8, 0).norm() == 0.0);

    PathSet unit{{{Complex(1, 0), 0, 0.0}}};
    CHECK((channel_matrix(unit, 8, 8, 0) - MatC::Identity(8, 8)).norm() == 0.0);

    PathSet two{{{Complex(0.5, -0.3), 2, 1.7}, {Complex(-1.1, 0.2), 5, 0.25}}};
    const MatC h = channel_matrix(two, 16, 16, 0);
    MatC sum = MatC::Zero(16, 16);
    for (const Path& p : two.paths) {
        PathSet one{{p}};
        sum += channel_matrix(one, 16, 16, 0);
    }
    CHECK((h - sum).norm() < 1e-12 * sum.norm());
}

TEST_CASE("channel matrix reproduces the scalar loop on random channels") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> kd(0.0, 7.4);
    std::uniform_int_distribution<int> ld(0, 7);
    std::normal_distribution<double> g(0.0, 1.0);
    const int L = 64;
    for (int trial = 0; trial < 15; ++trial) {
        PathSet paths;
        for (int p = 0; p < 6; ++p)
            paths.paths.push_back({Complex(g(rng), g(rng)), ld(rng), kd(rng)});
        const VecC s = random_vec(L, rng);
        const VecC via_matrix = channel_matrix(paths, L, L, 0) * s;
        const VecC via_loop = eq3_loop(paths, s);
        CHECK((via_matrix - via_loop).norm() / via_loop.norm() < 1e-12);
    }
}
