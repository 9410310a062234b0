#include "sscs/noise_synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sscs/fft.hpp"
#include "sscs/rng.hpp"

namespace sscs {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

// Factor C = L L^H for a 2x2 Hermitian matrix via its eigendecomposition.
struct Factor {
    cd l11, l12, l21, l22;
};

Factor factor_spectral_matrix(const SpectralMatrix& m) {
    const double a = m.s11;
    const double d = m.s22;
    const cd c = m.c12;
    const double ac = std::abs(c);
    const double trace = a + d;
    const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + ac * ac);
    double lp = 0.5 * trace + half_gap;
    double lm = 0.5 * trace - half_gap;
    const double clamp = 1e-12 * std::abs(trace);
    if (lp < clamp) lp = 0.0;
    if (lm < clamp) lm = 0.0;

    cd v1p, v2p, v1m, v2m;
    if (ac == 0.0) {
        // Already diagonal; keep the larger eigenvalue aligned with its axis.
        if (a >= d) {
            v1p = 1.0; v2p = 0.0; v1m = 0.0; v2m = 1.0;
        } else {
            v1p = 0.0; v2p = 1.0; v1m = 1.0; v2m = 0.0;
        }
    } else {
        // (c, lambda - a) is an eigenvector of [[a, c], [conj c, d]].
        const double lpp = 0.5 * trace + half_gap;
        const double lmm = 0.5 * trace - half_gap;
        v1p = c;
        v2p = lpp - a;
        const double np = std::sqrt(std::norm(v1p) + std::norm(v2p));
        v1p /= np;
        v2p /= np;
        v1m = c;
        v2m = lmm - a;
        const double nm = std::sqrt(std::norm(v1m) + std::norm(v2m));
        v1m /= nm;
        v2m /= nm;
    }
    const double sp = std::sqrt(lp);
    const double sm = std::sqrt(lm);
    return {v1p * sp, v1m * sm, v2p * sp, v2m * sm};
}

SpectralMatrix model_matrix(const PsdSpec& spec, double f) {
    return {eval_psd(spec, 1, 1, f), eval_psd(spec, 2, 2, f), cd(eval_psd(spec, 1, 2, f), 0.0)};
}

}  // namespace

SpectralMatrix TabulatedSpectrum::operator()(double freq) const {
    if (f.empty()) throw std::invalid_argument("TabulatedSpectrum: empty table");
    if (s11.size() != f.size() || s22.size() != f.size() || c12.size() != f.size()) {
        throw std::invalid_argument("TabulatedSpectrum: column length mismatch");
    }
    const double af = std::abs(freq);
    if (af <= f.front()) return {s11.front(), s22.front(), c12.front()};
    if (af >= f.back()) return {s11.back(), s22.back(), c12.back()};
    const auto it = std::upper_bound(f.begin(), f.end(), af);
    const std::size_t i = static_cast<std::size_t>(it - f.begin());
    const double w = (af - f[i - 1]) / (f[i] - f[i - 1]);
    return {s11[i - 1] + w * (s11[i] - s11[i - 1]), s22[i - 1] + w * (s22[i] - s22[i - 1]),
            c12[i - 1] + w * (c12[i] - c12[i - 1])};
}

NoiseTracePair synthesize(const SpectralMatrixFn& spectrum, std::size_t n, double dt, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("synthesize: need at least two samples");
    if (n % 2 != 0) throw std::invalid_argument("synthesize: sample count must be even");
    if (!(dt > 0.0)) throw std::invalid_argument("synthesize: dt must be positive");

    const std::size_t half = n / 2;
    // E|X_k|^2 = n 4 pi^2 C(f_k) / dt so that |X|^2 dt / (4 pi^2 n) estimates C.
    const double scale = std::sqrt(static_cast<double>(n) * 4.0 * kPi * kPi / dt);
    fft::cvec x1(half + 1, cd(0.0, 0.0));
    fft::cvec x2(half + 1, cd(0.0, 0.0));

    for (std::size_t k = 1; k <= half; ++k) {
        const double f = static_cast<double>(k) / (static_cast<double>(n) * dt);
        const SpectralMatrix m = spectrum(f);
        const double slack = 1e-12 * std::max(std::abs(m.s11 * m.s22), std::norm(m.c12));
        if (m.s11 < 0.0 || m.s22 < 0.0 || std::norm(m.c12) > m.s11 * m.s22 + slack) {
            std::ostringstream os;
            os << "synthesize: spectral matrix violates Cauchy-Schwarz at f = " << f << " Hz";
            throw std::invalid_argument(os.str());
        }
        const Factor L = factor_spectral_matrix(m);
        rng::CounterRng r(rng::derive_key(seed, 0x53594E54ULL, k));
        cd z1, z2;
        if (k == half) {
            // Nyquist bin of a real signal is real: unit-variance real Gaussians.
            z1 = cd(r.normal(), 0.0);
            z2 = cd(r.normal(), 0.0);
        } else {
            const double s = std::sqrt(0.5);
            const double a = r.normal(), b = r.normal(), c = r.normal(), d = r.normal();
            z1 = cd(a * s, b * s);
            z2 = cd(c * s, d * s);
        }
        cd y1 = scale * (L.l11 * z1 + L.l12 * z2);
        cd y2 = scale * (L.l21 * z1 + L.l22 * z2);
        if (k == half) {
            y1 = cd(y1.real(), 0.0);
            y2 = cd(y2.real(), 0.0);
        }
        x1[k] = y1;
        x2[k] = y2;
    }

    NoiseTracePair out;
    out.dt = dt;
    out.seed = seed;
    out.delta_omega_1 = fft::c2r(x1, n);
    out.delta_omega_2 = fft::c2r(x2, n);
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& v : out.delta_omega_1) v *= inv;
    for (auto& v : out.delta_omega_2) v *= inv;
    return out;
}

NoiseTracePair synthesize(const PsdSpec& spec, std::size_t n, double dt, std::uint64_t seed) {
    check_component_invariants(spec);
    if (n >= 2 && dt > 0.0) {
        const double f1 = 1.0 / (static_cast<double>(n) * dt);
        const double fn = 1.0 / (2.0 * dt);
        if (fn > f1) {
            const ValidityReport rep = validate_spec(spec, f1, fn, 512);
            if (!rep.valid) {
                std::ostringstream os;
                os << "synthesize: invalid spec, Cauchy-Schwarz violated at f = " << *rep.first_violation_hz
                   << " Hz";
                throw std::invalid_argument(os.str());
            }
        }
    }
    return synthesize([&spec](double f) { return model_matrix(spec, f); }, n, dt, seed);
}

void add_tone(NoiseTracePair& traces, double amplitude, double freq_hz, double phase) {
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const double t = static_cast<double>(i) * traces.dt;
        const double v = amplitude * std::sin(2.0 * kPi * freq_hz * t + phase);
        traces.delta_omega_1[i] += v;
        traces.delta_omega_2[i] += v;
    }
}

Window window_from_string(const std::string& s) {
    if (s == "hann") return Window::hann;
    if (s == "rectangular" || s == "rect") return Window::rectangular;
    throw std::invalid_argument("unknown window: " + s);
}

SpectrumEstimate periodogram_cross(const std::vector<double>& a, const std::vector<double>& b, double dt,
                                   std::size_t segments, Window window) {
    if (a.size() != b.size()) throw std::invalid_argument("periodogram_cross: length mismatch");
    if (segments == 0 || a.size() % segments != 0) {
        throw std::invalid_argument("periodogram_cross: segments must divide the length");
    }
    const std::size_t L = a.size() / segments;
    if (L < 2) throw std::invalid_argument("periodogram_cross: segments too short");

    std::vector<double> w(L, 1.0);
    if (window == Window::hann) {
        for (std::size_t i = 0; i < L; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / L);
    }
    double u = 0.0;
    for (double v : w) u += v * v;
    u /= static_cast<double>(L);

    const bool same = (&a == &b) || a == b;
    const std::size_t nb = L / 2;
    std::vector<cd> acc(nb + 1, cd(0.0, 0.0));
    std::vector<double> sa(L), sb(L);
    for (std::size_t s = 0; s < segments; ++s) {
        for (std::size_t i = 0; i < L; ++i) {
            sa[i] = a[s * L + i] * w[i];
            sb[i] = b[s * L + i] * w[i];
        }
        const auto A = fft::r2c(sa, L);
        const auto B = same ? A : fft::r2c(sb, L);
        for (std::size_t k = 1; k <= nb; ++k) acc[k] += A[k] * std::conj(B[k]);
    }

    SpectrumEstimate out;
    out.kind = same ? SpectrumKind::auto_psd : SpectrumKind::cross_psd;
    out.meta.dt = dt;
    out.meta.n = a.size();
    const double norm = dt / (4.0 * kPi * kPi * static_cast<double>(L) * u * static_cast<double>(segments));
    out.frequencies.reserve(nb);
    out.values.reserve(nb);
    for (std::size_t k = 1; k <= nb; ++k) {
        out.frequencies.push_back(static_cast<double>(k) / (static_cast<double>(L) * dt));
        cd v = acc[k] * norm;
        if (same) v = cd(v.real(), 0.0);
        out.values.push_back(v);
    }
    return out;
}

}  // namespace sscs
