#include "sscs/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "sscs/fft.hpp"

namespace sscs {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

// Value of a filled series at lag index k; lags past the computed range
// share the common tail value of both sides.
cd at_or_tail(const LogSeries& s, std::size_t k, cd tail) {
    return k < s.size() ? s.v[k] : tail;
}

// Transform of samples v[n] at times (2n + offset) dt, n = -N..N-1, stored
// with n mod 2N indexing. Returns Y(f_k) for signed k in FFT order.
fft::cvec grid_transform(fft::cvec v, double dt, int offset) {
    const std::size_t M = v.size();
    const std::size_t N = M / 2;
    // Removing the mean only touches k = 0 and keeps constants from leaking
    // rounding noise into the other bins.
    cd mean(0.0, 0.0);
    for (const auto& x : v) mean += x;
    mean /= static_cast<double>(M);
    for (auto& x : v) x -= mean;
    auto Y = fft::c2c(v, +1);
    for (std::size_t k = 0; k < M; ++k) {
        const long long ks = k < N ? static_cast<long long>(k) : static_cast<long long>(k) - static_cast<long long>(M);
        cd y = 2.0 * dt * Y[k];
        if (offset != 0) y *= std::polar(1.0, kPi * static_cast<double>(ks) * offset / static_cast<double>(M));
        Y[k] = y;
    }
    return Y;
}

SpectrumEstimate assemble(const fft::cvec& Y, double dt, std::size_t N, double tau_a, double tau_b,
                          PrefactorMode mode, SpectrumKind kind) {
    SpectrumEstimate s;
    s.kind = kind;
    s.meta.dt = dt;
    s.meta.n = N;
    s.meta.tau_a = tau_a;
    s.meta.tau_b = tau_b;
    s.meta.prefactor = mode;
    const std::size_t M = 2 * N;
    s.frequencies.reserve(M - 1);
    s.values.reserve(M - 1);
    for (long long ks = -static_cast<long long>(N); ks < static_cast<long long>(N); ++ks) {
        if (ks == 0) continue;
        const std::size_t idx = ks < 0 ? static_cast<std::size_t>(ks + static_cast<long long>(M)) : static_cast<std::size_t>(ks);
        const double f = static_cast<double>(ks) / (4.0 * static_cast<double>(N) * dt);
        cd v = spectrum_prefactor(mode, f, tau_a, tau_b) * Y[idx];
        if (kind == SpectrumKind::auto_psd) v = cd(v.real(), 0.0);
        s.frequencies.push_back(f);
        s.values.push_back(v);
    }
    // C(-f) = conj C(f) for a real correlation function.
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) scale = std::max(scale, std::abs(s.values[i]));
    for (std::size_t k = 1; k < N; ++k) {
        const cd pos = s.values[N - 1 + k];
        const cd neg = s.values[N - k];
        worst = std::max(worst, std::abs(neg - std::conj(pos)));
    }
    s.meta.hermitian_defect = scale > 0.0 ? worst / scale : 0.0;
    return s;
}

}  // namespace

double spectrum_prefactor(PrefactorMode mode, double f, double tau_a, double tau_b) {
    if (mode == PrefactorMode::quasi_static) return 1.0 / (4.0 * kPi * kPi * tau_a * tau_b);
    const double sa = std::sin(kPi * f * tau_a);
    const double sb = std::sin(kPi * f * tau_b);
    return 0.25 * f * f / (sa * sb);
}

SpectrumParts spectrum_from_U(const LogCombination& u1_in, const LogCombination& u2_in, PrefactorMode mode,
                              std::size_t max_gap, double tail_ramp) {
    if (u1_in.kind != LogKind::U1 || u2_in.kind != LogKind::U2) {
        throw std::invalid_argument("spectrum_from_U: expected U1 and U2 inputs");
    }
    if (u1_in.n != u2_in.n || u1_in.dt != u2_in.dt || u1_in.n < 2) {
        throw std::invalid_argument("spectrum_from_U: U1 and U2 grids do not match");
    }
    if (u1_in.forward.size() != u2_in.forward.size() + 1) {
        throw std::invalid_argument("spectrum_from_U: U1 and U2 lag ranges do not match");
    }
    LogCombination u1 = u1_in;
    LogCombination u2 = u2_in;
    SpectrumParts out;
    out.fill_u1 = fill_flagged(u1, max_gap, tail_ramp);
    out.fill_u2 = fill_flagged(u2, max_gap, tail_ramp);

    const std::size_t N = u1.n;
    const std::size_t M = 2 * N;
    const double dt = u1.dt;

    fft::cvec ve(M), vo(M);
    const cd t1 = out.fill_u1.tail;
    const cd t2 = out.fill_u2.tail;
    for (std::size_t n = 0; n < N; ++n) ve[n] = at_or_tail(u1.forward, n, t1);
    for (std::size_t j = 1; j <= N; ++j) ve[M - j] = at_or_tail(u1.backward, j, t1);
    // Odd grid: n >= 0 maps to forward lag n, n = -j maps to backward lag j - 1.
    for (std::size_t n = 0; n < N; ++n) vo[n] = at_or_tail(u2.forward, n, t2);
    for (std::size_t j = 1; j <= N; ++j) vo[M - j] = at_or_tail(u2.backward, j - 1, t2);

    const auto Ye = grid_transform(ve, dt, 0);
    const auto Yo = grid_transform(vo, dt, 1);
    fft::cvec Ya(M);
    for (std::size_t k = 0; k < M; ++k) Ya[k] = 0.5 * (Ye[k] + Yo[k]);

    out.even = assemble(Ye, dt, N, u1.tau_a, u1.tau_b, mode, SpectrumKind::cross_psd);
    out.odd = assemble(Yo, dt, N, u1.tau_a, u1.tau_b, mode, SpectrumKind::cross_psd);
    out.averaged = assemble(Ya, dt, N, u1.tau_a, u1.tau_b, mode, SpectrumKind::cross_psd);
    const std::size_t flagged = out.fill_u1.interior_flagged + out.fill_u2.interior_flagged;
    const std::size_t extent = out.fill_u1.extent + out.fill_u2.extent;
    for (auto* s : {&out.even, &out.odd, &out.averaged}) {
        s->meta.flagged_lags = flagged;
        s->meta.total_lags = extent;
        s->meta.flagged_fraction = extent ? static_cast<double>(flagged) / static_cast<double>(extent) : 0.0;
    }
    return out;
}

SpectrumEstimate spectrum_from_W(const LogCombination& w_in, PrefactorMode mode, std::size_t max_gap,
                                 double tail_ramp) {
    if (w_in.kind != LogKind::W) throw std::invalid_argument("spectrum_from_W: expected a W series");
    if (w_in.forward.size() == 0 || w_in.forward.flagged[0]) {
        throw std::invalid_argument("spectrum_from_W: missing lag-0 value");
    }
    LogCombination w = w_in;
    const FillStats st = fill_flagged(w, max_gap, tail_ramp);
    const std::size_t N = w.n;
    const std::size_t M = 2 * N;
    fft::cvec ve(M);
    for (std::size_t n = 0; n < N; ++n) ve[n] = at_or_tail(w.forward, n, st.tail);
    for (std::size_t j = 1; j <= N; ++j) ve[M - j] = at_or_tail(w.backward, j, st.tail);
    const auto Y = grid_transform(ve, w.dt, 0);
    SpectrumEstimate s = assemble(Y, w.dt, N, w.tau_a, w.tau_a, mode, SpectrumKind::auto_psd);
    s.meta.flagged_lags = st.interior_flagged;
    s.meta.total_lags = st.extent;
    s.meta.flagged_fraction = st.fraction();
    // One misestimated sample at t = 0 contributes 2 dt * eps to every bin.
    s.meta.noise_floor = 2.0 * w.dt * w.lag0_stderr / (4.0 * kPi * kPi * w.tau_a * w.tau_a);
    return s;
}

SpectrumEstimate positive_frequencies(const SpectrumEstimate& s) {
    SpectrumEstimate out;
    out.kind = s.kind;
    out.meta = s.meta;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.frequencies[i] > 0.0) {
            out.frequencies.push_back(s.frequencies[i]);
            out.values.push_back(s.values[i]);
            if (!s.stderr_.empty()) out.stderr_.push_back(s.stderr_[i]);
        }
    }
    return out;
}

SpectrumEstimate log_bin(const SpectrumEstimate& s, int bins_per_decade) {
    if (bins_per_decade < 1) throw std::invalid_argument("log_bin: bins_per_decade must be >= 1");
    if (s.size() == 0) throw std::invalid_argument("log_bin: empty input");
    std::map<long long, std::pair<cd, std::size_t>> bins;
    const double b = static_cast<double>(bins_per_decade);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = s.frequencies[i];
        if (!(f > 0.0)) throw std::invalid_argument("log_bin: frequencies must be positive");
        // The small offset keeps exact decade edges in the upper bin.
        const long long j = static_cast<long long>(std::floor(std::log10(f) * b + 1e-9));
        auto& e = bins[j];
        e.first += s.values[i];
        e.second += 1;
    }
    SpectrumEstimate out;
    out.kind = s.kind;
    out.meta = s.meta;
    SpectrumBinning binning;
    binning.bins_per_decade = bins_per_decade;
    for (const auto& [j, e] : bins) {
        out.frequencies.push_back(std::pow(10.0, (static_cast<double>(j) + 0.5) / b));
        out.values.push_back(e.first / static_cast<double>(e.second));
        binning.counts.push_back(e.second);
    }
    out.binning = binning;
    return out;
}

SpectrumEstimate average_batches(const std::vector<SpectrumEstimate>& specs) {
    if (specs.empty()) throw std::invalid_argument("average_batches: no spectra");
    const auto& ref = specs.front();
    for (const auto& s : specs) {
        if (s.frequencies != ref.frequencies) throw std::invalid_argument("average_batches: frequency grids differ");
    }
    const std::size_t n = ref.size();
    const double B = static_cast<double>(specs.size());
    SpectrumEstimate out;
    out.kind = ref.kind;
    out.frequencies = ref.frequencies;
    out.binning = ref.binning;
    out.meta = ref.meta;
    out.meta.batches = specs.size();
    out.values.assign(n, cd(0.0, 0.0));
    out.stderr_.assign(n, std::numeric_limits<double>::quiet_NaN());
    std::size_t flagged = 0, total = 0;
    double floor_sum = 0.0;
    for (const auto& s : specs) {
        for (std::size_t i = 0; i < n; ++i) out.values[i] += s.values[i];
        flagged += s.meta.flagged_lags;
        total += s.meta.total_lags;
        floor_sum += s.meta.noise_floor;
    }
    for (auto& v : out.values) v /= B;
    out.meta.flagged_lags = flagged;
    out.meta.total_lags = total;
    out.meta.flagged_fraction = total ? static_cast<double>(flagged) / static_cast<double>(total) : 0.0;
    out.meta.noise_floor = floor_sum / B;
    if (specs.size() > 1) {
        for (std::size_t i = 0; i < n; ++i) {
            double ss = 0.0;
            for (const auto& s : specs) ss += std::norm(s.values[i] - out.values[i]);
            out.stderr_[i] = std::sqrt(ss / (B - 1.0)) / std::sqrt(B);
        }
    }
    return out;
}

}  // namespace sscs
