#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Thin wrappers over FFTW. All transforms are unnormalized.
namespace sscs::fft {

using cvec = std::vector<std::complex<double>>;

// sign = -1 computes sum x_n e^{-2 pi i k n / L}; sign = +1 uses e^{+2 pi i k n / L}.
cvec c2c(const cvec& in, int sign);

// Real input zero-padded (or truncated) to length L; returns L/2 + 1 bins.
cvec r2c(const std::vector<double>& in, std::size_t L);

// Inverse of r2c without the 1/L factor; `half` must hold L/2 + 1 bins.
std::vector<double> c2r(const cvec& half, std::size_t L);

std::size_t next_pow2(std::size_t n);

}  // namespace sscs::fft
