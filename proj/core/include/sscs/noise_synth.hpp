#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sscs/spectra_model.hpp"

namespace sscs {

// Pair of correlated qubit-frequency traces in rad/s sampled every dt seconds.
struct NoiseTracePair {
    std::vector<double> delta_omega_1;
    std::vector<double> delta_omega_2;
    double dt = 0.0;
    std::uint64_t seed = 0;

    std::size_t size() const { return delta_omega_1.size(); }
};

// Hermitian 2x2 spectral matrix at one frequency (Hz^2/Hz).
struct SpectralMatrix {
    double s11 = 0.0;
    double s22 = 0.0;
    std::complex<double> c12{0.0, 0.0};
};

using SpectralMatrixFn = std::function<SpectralMatrix(double f)>;

// Tabulated spectral matrix, linearly interpolated in f and held constant
// outside the table.
struct TabulatedSpectrum {
    std::vector<double> f;
    std::vector<double> s11;
    std::vector<double> s22;
    std::vector<std::complex<double>> c12;

    SpectralMatrix operator()(double freq) const;
};

// Frequency-domain synthesis of N samples. Each positive bin draws its own
// counter-based Gaussian vector keyed by (seed, bin). Spectral matrices are
// factored by eigendecomposition with eigenvalues below 1e-12 * trace clamped
// to zero. Throws std::invalid_argument on a Cauchy-Schwarz violation.
NoiseTracePair synthesize(const PsdSpec& spec, std::size_t n, double dt, std::uint64_t seed);
NoiseTracePair synthesize(const SpectralMatrixFn& spectrum, std::size_t n, double dt, std::uint64_t seed);

// Adds amplitude * sin(2 pi f t + phase) to both traces.
void add_tone(NoiseTracePair& traces, double amplitude, double freq_hz, double phase = 0.0);

enum class Window { rectangular, hann };
Window window_from_string(const std::string& s);

// Welch cross-periodogram <A conj(B)> dt / (4 pi^2 L U), with U the mean
// squared window, over `segments` non-overlapping segments. Positive
// frequencies k / (L dt) for k = 1 .. L/2.
SpectrumEstimate periodogram_cross(const std::vector<double>& a, const std::vector<double>& b, double dt,
                                   std::size_t segments, Window window = Window::hann);

}  // namespace sscs
