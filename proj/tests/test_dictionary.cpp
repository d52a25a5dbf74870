#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ddomp/channel_sim.hpp"
#include "ddomp/dictionary.hpp"
#include "ddomp/operators.hpp"
#include "ddomp/seed.hpp"
#include "ddomp/window.hpp"

using namespace ddomp;

namespace {

struct Setup {
    FrameSpec frame;
    DDGridSpec grid;
    WindowVector window;
    PilotSequence pilot;
    WindowedDictionary dict;
};

Setup make_setup(int L, int Lw, DDGridSpec grid, std::uint64_t pilot_seed = 11) {
    Setup s;
    s.frame = FrameSpec{L, Lw, grid.G_tau};
    s.grid = grid;
    s.window = build_window(s.frame);
    s.pilot = gen_pilot(L, pilot_seed);
    s.dict = build_dictionary(s.pilot.x, s.frame, grid, s.window);
    return s;
}

// Dense-matrix oracle for one column: window diag * phase diag * trimmed
// extension * pilot-domain cyclic shift, all as explicit matrix products.
VecC dense_column_oracle(const Setup& s, int l, int k) {
    const int Lp = s.frame.window_len();
    const MatC w_diag = s.window.w.cast<Complex>().asDiagonal();
    const MatC phase =
        doppler_matrix(Lp, s.grid.kappa(k), s.frame.L, -s.frame.L_w / 2 - l);
    const MatC t = cyclic_extension(s.frame, ExtensionVariant::window_trimmed)
                       .cast<Complex>();
    const MatC p_l = permutation_power(s.frame.L, l).cast<Complex>();
    return w_diag * (phase * (t * (p_l * s.pilot.x)));
}

}  // namespace

TEST_CASE("column index layout") {
    DDGridSpec grid{4, 16, 2};
    CHECK(column_index(0, 0, grid) == 0);
    CHECK(column_index(2, 3, grid) == 35);
    CHECK(column_index(grid.G_tau, 0, grid) == grid.G_tau * grid.G_nu);
    CHECK_THROWS_AS(column_index(5, 0, grid), std::out_of_range);
    CHECK_THROWS_AS(column_index(0, 16, grid), std::out_of_range);
    CHECK_THROWS_AS(column_index(-1, 0, grid), std::out_of_range);
}

TEST_CASE("dictionary shape and index-set partition") {
    const Setup s = make_setup(64, 16, {4, 8, 2});
    CHECK(s.dict.rows() == 80);
    CHECK(s.dict.cols() == (4 + 1) * 8);
    CHECK(s.dict.selectable_begin() == 0);
    CHECK(s.dict.selectable_end() == 32);
    CHECK(s.dict.interference_begin() == 32);
    CHECK(s.dict.interference_end() == 40);
    CHECK(s.dict.pilot_id != 0);
}

TEST_CASE("zeroth column is the windowed trimmed pilot") {
    const Setup s = make_setup(64, 16, {4, 8, 2});
    const VecC xt = extend_pilot(s.pilot.x, s.frame, ExtensionVariant::window_trimmed);
    const VecC expect = s.window.w.cast<Complex>().cwiseProduct(xt);
    CHECK((s.dict.psi.col(0) - expect).norm() <= 1e-15 * expect.norm());
}

TEST_CASE("rectangular unit-oversampling columns follow the bare phase ramp") {
    DDGridSpec grid{2, 8, 1};
    const Setup s = make_setup(32, 0, grid);
    for (int k = 0; k < grid.G_nu; ++k) {
        const auto col = s.dict.psi.col(column_index(0, k, grid));
        for (int n = 0; n < 32; ++n) {
            const Complex expect =
                std::exp(Complex(0.0, 2.0 * std::numbers::pi * n * k / 32.0)) *
                s.pilot.x[n % 32];
            CHECK(std::abs(col[n] - expect) < 1e-12);
        }
    }
}

TEST_CASE("columns match the dense product oracle") {
    const Setup s = make_setup(64, 32, {4, 16, 2});
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> ld(0, 4);  // includes the interference delay
    std::uniform_int_distribution<int> kd(0, 15);
    for (int trial = 0; trial < 40; ++trial) {
        const int l = ld(rng), k = kd(rng);
        const VecC oracle = dense_column_oracle(s, l, k);
        const VecC col = s.dict.psi.col(column_index(l, k, s.grid));
        CAPTURE(l);
        CAPTURE(k);
        CHECK((col - oracle).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("interference block sits at the out-of-range delay") {
    const Setup s = make_setup(64, 16, {3, 8, 2});
    for (int k = 0; k < s.grid.G_nu; ++k) {
        const int d = s.dict.interference_begin() + k;
        CHECK(d == column_index(s.grid.G_tau, k, s.grid));
        const VecC oracle = dense_column_oracle(s, s.grid.G_tau, k);
        CHECK((s.dict.psi.col(d) - oracle).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("equal column norms for BPSK pilots") {
    // |pilot[n]| = 1 makes every column norm equal to ||w||.
    const Setup s = make_setup(64, 32, {4, 16, 2});
    const double expect = s.window.w.norm();
    for (int d = 0; d < s.dict.cols(); ++d)
        CHECK(std::abs(s.dict.psi.col(d).norm() - expect) < 1e-12);
}

TEST_CASE("normalized build yields unit columns") {
    FrameSpec frame{64, 16, 4};
    DDGridSpec grid{4, 8, 2};
    const WindowVector window = build_window(frame);
    const PilotSequence pilot = gen_pilot(64, 13);
    const WindowedDictionary dict = build_dictionary(pilot.x, frame, grid, window, true);
    CHECK(dict.normalized);
    for (int d = 0; d < dict.cols(); ++d)
        CHECK(std::abs(dict.psi.col(d).norm() - 1.0) < 1e-12);
}

TEST_CASE("correlate basics") {
    const Setup s = make_setup(64, 16, {4, 8, 2});

    const VecR zero = correlate(s.dict, VecC::Zero(s.dict.rows()));
    CHECK(zero.maxCoeff() == 0.0);

    // self-correlation peaks at the matching column (equal norms for BPSK)
    for (int d : {0, 7, 19, 39}) {
        const VecR c = correlate(s.dict, s.dict.psi.col(d));
        int argmax = 0;
        c.maxCoeff(&argmax);
        CHECK(argmax == d);
    }
    CHECK_THROWS_AS(correlate(s.dict, VecC::Zero(3)), std::invalid_argument);
}

TEST_CASE("noiseless on-grid path puts the peak at its own column") {
    const Setup s = make_setup(128, 64, {4, 16, 2});
    NoiseConfig quiet;
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> ld(0, 3), kd(0, 15);
    for (int trial = 0; trial < 10; ++trial) {
        const int l = ld(rng), k = kd(rng);
        PathSet single{{{Complex(0.9, 0.2), l, s.grid.kappa(k)}}};
        const VecC r = propagate(s.pilot, s.frame, single, quiet, 0);
        const VecC y = receiver_front_end(r, s.frame, s.window);
        const VecR c = correlate(s.dict, y);
        int argmax = 0;
        c.head(s.dict.selectable_end()).maxCoeff(&argmax);
        CHECK(argmax == column_index(l, k, s.grid));
    }
}

// With every true delay strictly inside the grid, the interference block can
// never carry the peak of the initial correlation.
TEST_CASE("delay-awareness: interference block never dominates at iteration zero") {
    const Setup s = make_setup(128, 64, {4, 16, 2});
    NoiseConfig quiet;
    ChannelDrawConfig cfg;
    for (int trial = 0; trial < 100; ++trial) {
        cfg.seed = derive_seed(1001, SeedStream::channel, trial);
        const PathSet paths = draw_channel(cfg, s.grid);
        const VecC r = propagate(s.pilot, s.frame, paths, quiet, 0);
        const VecC y = receiver_front_end(r, s.frame, s.window);
        const VecR c = correlate(s.dict, y);
        const double max_s = c.head(s.dict.selectable_end()).maxCoeff();
        const double max_i =
            c.segment(s.dict.interference_begin(), s.grid.G_nu).maxCoeff();
        CHECK(max_i < max_s);
    }
}

// Windowing concentrates the correlation of a half-grid-offset Doppler path:
// the energy outside the three nearest Doppler bins shrinks versus the
// rectangular window, draw for draw.
TEST_CASE("raised-cosine window reduces fractional-Doppler leakage") {
    DDGridSpec grid{4, 16, 2};
    const Setup rcos = make_setup(128, 64, grid);
    const Setup rect = make_setup(128, 0, grid);
    NoiseConfig quiet;
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<int> ld(0, 3), kd(0, 14);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

    auto outside_fraction = [&](const Setup& s, int l, double kappa,
                                const Complex& h) {
        PathSet single{{{h, l, kappa}}};
        const VecC r = propagate(s.pilot, s.frame, single, quiet, 0);
        const VecC y = receiver_front_end(r, s.frame, s.window);
        const VecR c = correlate(s.dict, y).head(s.dict.selectable_end());
        const double total = c.squaredNorm();
        double near = 0.0;
        const double uk = kappa * grid.u_nu;
        for (int k = 0; k < grid.G_nu; ++k)
            if (std::abs(k - uk) <= 1.5) near += c[column_index(l, k, grid)] *
                                                 c[column_index(l, k, grid)];
        return 1.0 - near / total;
    };

    for (int trial = 0; trial < 100; ++trial) {
        const int l = ld(rng);
        const double kappa = (kd(rng) + 0.5) / grid.u_nu;  // half-way between bins
        const Complex h = std::polar(1.0, phase(rng));
        const double f_rcos = outside_fraction(rcos, l, kappa, h);
        const double f_rect = outside_fraction(rect, l, kappa, h);
        CAPTURE(l);
        CAPTURE(kappa);
        CHECK(f_rcos < f_rect);
    }
}

TEST_CASE("dictionary dump carries the geometry header") {
    const Setup s = make_setup(16, 4, {2, 4, 2});
    std::ostringstream os;
    write_dictionary_csv(s.dict, os);
    const std::string text = os.str();
    CHECK(text.find("Lprime=20") != std::string::npos);
    CHECK(text.find("G_tau=2") != std::string::npos);
    CHECK(text.find("G_nu=4") != std::string::npos);
    CHECK(text.find("u_nu=2") != std::string::npos);
    // header (2 lines) + one line per matrix row
    int lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    CHECK(lines == 2 + s.dict.rows());
}

TEST_CASE("builder rejects inconsistent inputs") {
    FrameSpec frame{16, 4, 2};
    DDGridSpec grid{2, 4, 1};
    const WindowVector window = build_window(frame);
    CHECK_THROWS_AS(build_dictionary(VecC::Zero(16), frame, grid, window),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_dictionary(VecC::Ones(15), frame, grid, window),
                    std::invalid_argument);
    WindowVector bad = window;
    bad.w.conservativeResize(10);
    CHECK_THROWS_AS(build_dictionary(VecC::Ones(16), frame, grid, bad),
                    std::invalid_argument);
}
