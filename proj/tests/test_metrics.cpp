#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "holdsim/metrics.hpp"

using namespace holdsim;
using Catch::Approx;

namespace {

// brute-force O(N^2) DFT oracle: direct summed-exponential accumulation
std::vector<double> dft_oracle(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> mags(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            acc += x[i] * std::polar(1.0, -2.0 * std::numbers::pi *
                                              static_cast<double>(k) * static_cast<double>(i) /
                                              static_cast<double>(n));
        mags[k] = std::abs(acc);
    }
    return mags;
}

}  // namespace

TEST_CASE("peak-to-peak percent basics") {
    const int n = 4000;
    const double dt = 1e-3;
    std::vector<double> zero(n, 0.0), err(n), ref(n);
    for (int i = 0; i < n; ++i) {
        const double t = i * dt;
        err[i] = 0.01 * std::sin(4.0 * std::numbers::pi * t);
        ref[i] = 0.1 * std::sin(4.0 * std::numbers::pi * t);
    }
    const Window w{0.0, (n - 1) * dt};
    CHECK(peak_to_peak_percent(zero, ref, 0.0, dt, w) == 0.0);
    CHECK(peak_to_peak_percent(err, ref, 0.0, dt, w) == Approx(10.0).margin(1e-9));
}

TEST_CASE("peak-to-peak percent is window-semantic and scale-linear") {
    const int n = 3000;
    const double dt = 1e-3;
    std::vector<double> err(n), ref(n);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int i = 0; i < n; ++i) {
        err[i] = d(rng);
        ref[i] = std::sin(2.0 * std::numbers::pi * i * dt);
    }
    const double base = peak_to_peak_percent(err, ref, 0.0, dt, {0.5, 2.5});
    // shifting the time axis shifts the window identically
    CHECK(peak_to_peak_percent(err, ref, 10.0, dt, {10.5, 12.5}) == Approx(base));
    // scaling the error scales the result
    std::vector<double> twice(n);
    for (int i = 0; i < n; ++i) twice[i] = 2.0 * err[i];
    CHECK(peak_to_peak_percent(twice, ref, 0.0, dt, {0.5, 2.5}) == Approx(2.0 * base));
}

TEST_CASE("peak-to-peak percent error conditions") {
    std::vector<double> a(10, 1.0), flat(10, 2.0);
    CHECK_THROWS_AS(peak_to_peak_percent(a, flat, 0.0, 0.1, {0.0, 0.9}), std::invalid_argument);
    CHECK_THROWS_AS(peak_to_peak_percent(a, a, 0.0, 0.1, {5.0, 6.0}), std::invalid_argument);
    CHECK_THROWS_AS(peak_to_peak_percent(a, a, 0.0, 0.1, {0.5, 0.2}), std::invalid_argument);
    std::vector<double> b(5, 0.0);
    CHECK_THROWS_AS(peak_to_peak_percent(a, b, 0.0, 0.1, {0.0, 0.4}), std::invalid_argument);
}

TEST_CASE("pure tone produces a single DFT bin") {
    const double dt = 1e-3;
    const int n = 8000;  // 8 s, 16 periods of 2 Hz
    std::vector<double> err(n);
    for (int i = 0; i < n; ++i) err[i] = 0.02 * std::sin(4.0 * std::numbers::pi * i * dt);
    const auto spec = error_spectrum(err, 0.0, dt, {0.0, 8.0}, 0.5);
    const auto k2 = static_cast<std::size_t>(std::llround(2.0 / spec.freqs_hz[1]));
    CHECK(spec.freqs_hz[k2] == Approx(2.0));
    for (std::size_t k = 0; k < spec.magnitude.size(); ++k) {
        if (k == k2) continue;
        CHECK(spec.magnitude[k] <= 1e-10 * spec.magnitude[k2]);
    }
    // amplitude A maps to bin magnitude A*N/2
    CHECK(spec.magnitude[k2] == Approx(0.02 * n / 2.0).epsilon(1e-9));
}

TEST_CASE("DFT matches the summed-exponential oracle on random traces") {
    const int n = 4096;
    const double dt = 1e-3;
    std::vector<double> x(n);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (auto& v : x) v = d(rng);
    // window spans exactly 8 periods of 0.512 s
    const auto spec = error_spectrum(x, 0.0, dt, {0.0, 4.096}, 0.512);
    const auto oracle = dft_oracle(x);
    REQUIRE(spec.magnitude.size() == oracle.size());
    double scale = 0.0;
    for (double m : oracle) scale = std::max(scale, m);
    for (std::size_t k = 0; k < oracle.size(); ++k) {
        CHECK(std::abs(spec.magnitude[k] - oracle[k]) <= 1e-9 * scale);
    }
}

TEST_CASE("Parseval's relation holds") {
    const int n = 4000;
    const double dt = 1e-3;
    std::vector<double> x(n);
    std::mt19937 rng(31);
    std::normal_distribution<double> d(0.0, 1.0);
    for (auto& v : x) v = d(rng);
    const auto spec = error_spectrum(x, 0.0, dt, {0.0, 4.0}, 0.5);
    double time_energy = 0.0;
    for (double v : x) time_energy += v * v;
    double freq_energy = spec.magnitude[0] * spec.magnitude[0];
    for (std::size_t k = 1; k + 1 < spec.magnitude.size(); ++k)
        freq_energy += 2.0 * spec.magnitude[k] * spec.magnitude[k];
    freq_energy += spec.magnitude.back() * spec.magnitude.back();  // Nyquist bin, even N
    freq_energy /= static_cast<double>(n);
    CHECK(freq_energy == Approx(time_energy).epsilon(1e-9));
}

TEST_CASE("normalization conventions") {
    const double dt = 1e-3;
    const int n = 2000;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = std::sin(4.0 * std::numbers::pi * i * dt) +
                                       0.25 * std::sin(8.0 * std::numbers::pi * i * dt);
    const auto self = error_spectrum(x, 0.0, dt, {0.0, 2.0}, 0.5);
    double top = 0.0;
    for (double v : self.normalized_percent) top = std::max(top, v);
    CHECK(top == Approx(100.0).margin(1e-12));  // reference run peaks at exactly 100

    const auto scaled = error_spectrum(x, 0.0, dt, {0.0, 2.0}, 0.5, 2.0 * self.raw_max);
    double top2 = 0.0;
    for (double v : scaled.normalized_percent) top2 = std::max(top2, v);
    CHECK(top2 == Approx(50.0).margin(1e-9));
}

TEST_CASE("bin spacing is the reciprocal window length") {
    const double dt = 1e-3;
    std::vector<double> x(2500, 0.0);
    const auto spec = error_spectrum(x, 0.0, dt, {0.0, 2.5}, 0.5);
    CHECK(spec.freqs_hz[1] == Approx(1.0 / 2.5));
}

TEST_CASE("non-integer period windows are rejected") {
    std::vector<double> x(4000, 0.0);
    CHECK_THROWS_AS(error_spectrum(x, 0.0, 1e-3, {0.0, 3.9}, 0.5), std::invalid_argument);
    CHECK_NOTHROW(error_spectrum(x, 0.0, 1e-3, {0.0, 3.5}, 0.5));
}
