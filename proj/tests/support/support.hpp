#pragma once

// Helpers shared by the unit and acceptance tests: hand-rolled random
// generators and ground-truth spectra evaluated on the analyser's grids.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "sscs/spectra_model.hpp"
#include "sscs/spectrum.hpp"

namespace sscs::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    bool coin() { return integer(0, 1) == 1; }
    double sign() { return coin() ? 1.0 : -1.0; }

    std::vector<std::int8_t> pm_one(std::size_t n, double p_plus = 0.5) {
        std::vector<std::int8_t> out(n);
        std::bernoulli_distribution d(p_plus);
        for (auto& v : out) v = d(eng_) ? std::int8_t{1} : std::int8_t{-1};
        return out;
    }

    std::vector<double> normal(std::size_t n) {
        std::vector<double> out(n);
        std::normal_distribution<double> d;
        for (auto& v : out) v = d(eng_);
        return out;
    }

private:
    std::mt19937_64 eng_;
};

// Positive frequencies k / (4 N dt), k = 1..N-1, of the interleaved transform.
inline std::vector<double> interleaved_grid(std::size_t n, double dt) {
    std::vector<double> f(n - 1);
    for (std::size_t k = 1; k < n; ++k) f[k - 1] = static_cast<double>(k) / (4.0 * static_cast<double>(n) * dt);
    return f;
}

// Ground truth binned exactly like the estimate: the mean of fn over the
// fine-grid frequencies falling in each decade-aligned bin.
inline SpectrumEstimate binned_truth(const std::vector<double>& fine, const std::function<std::complex<double>(double)>& fn,
                                     int bins_per_decade) {
    SpectrumEstimate s;
    s.frequencies = fine;
    s.values.reserve(fine.size());
    for (double f : fine) s.values.push_back(fn(f));
    return log_bin(s, bins_per_decade);
}

inline double db(double ratio) { return 10.0 * std::log10(ratio); }

inline double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Autocorrelation R(m dt) of traces synthesized from `c` on n samples, from
// the discrete spectrum: 4 pi^2 / (n dt) * (2 sum_{k<n/2} C_k cos(2 pi k m / n) + C_{n/2} cos(pi m)).
inline double discrete_correlation(const PsdComponentParams& c, std::size_t n, double dt, long long m) {
    const std::size_t half = n / 2;
    double acc = 0.0;
    for (std::size_t k = 1; k <= half; ++k) {
        const double f = static_cast<double>(k) / (static_cast<double>(n) * dt);
        const double w = k == half ? 1.0 : 2.0;
        acc += w * eval_component(c, f) *
               std::cos(2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(m) / static_cast<double>(n));
    }
    return 4.0 * std::numbers::pi * std::numbers::pi / (static_cast<double>(n) * dt) * acc;
}

}  // namespace sscs::testing
