#include "sscs/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sscs/fft.hpp"

namespace sscs {

namespace {

using cd = std::complex<double>;

std::vector<double> to_double(const std::vector<std::int8_t>& s) {
    return std::vector<double>(s.begin(), s.end());
}

// Cross-correlation against a fixed second operand, reusing its spectrum.
class PairCorrelator {
public:
    PairCorrelator(const std::vector<double>& b, std::size_t max_lag, CorrelatorMethod method, bool integer_valued)
        : b_(b), max_lag_(max_lag), method_(method), integer_(integer_valued) {
        n_ = b.size();
        if (method_ == CorrelatorMethod::fft) {
            L_ = fft::next_pow2(2 * n_);
            B_ = fft::r2c(b, L_);
        }
    }

    // Sums restricted to a-indices n in [begin, end) with n % stride == offset;
    // `a` is the full stream.
    LagSums sums(const std::vector<double>& a, std::size_t begin, std::size_t end, std::size_t stride = 1,
                 std::size_t offset = 0) const {
        LagSums out;
        out.forward.assign(max_lag_ + 1, 0.0);
        out.backward.assign(max_lag_ + 1, 0.0);
        if (method_ == CorrelatorMethod::direct) {
            for (std::size_t n = begin; n < end; ++n) {
                if (n % stride != offset) continue;
                const double an = a[n];
                const std::size_t kf = std::min(max_lag_, n_ - 1 - n);
                for (std::size_t k = 0; k <= kf; ++k) out.forward[k] += an * b_[n + k];
                const std::size_t kb = std::min(max_lag_, n);
                for (std::size_t k = 0; k <= kb; ++k) out.backward[k] += an * b_[n - k];
            }
            return out;
        }
        std::vector<double> masked(L_, 0.0);
        for (std::size_t n = begin; n < end; ++n) {
            if (n % stride == offset) masked[n] = a[n];
        }
        auto A = fft::r2c(masked, L_);
        for (std::size_t k = 0; k < A.size(); ++k) A[k] = std::conj(A[k]) * B_[k];
        const auto s = fft::c2r(A, L_);
        const double inv = 1.0 / static_cast<double>(L_);
        auto fix = [&](double v) { return integer_ ? std::nearbyint(v * inv) : v * inv; };
        for (std::size_t k = 0; k <= max_lag_; ++k) {
            out.forward[k] = fix(s[k]);
            out.backward[k] = k == 0 ? out.forward[0] : fix(s[L_ - k]);
        }
        return out;
    }

private:
    const std::vector<double>& b_;
    std::size_t n_ = 0;
    std::size_t max_lag_;
    CorrelatorMethod method_;
    bool integer_;
    std::size_t L_ = 0;
    fft::cvec B_;
};

// Number of n in [lo, hi) with n % G == g.
double residue_count(std::size_t lo, std::size_t hi, std::size_t g, std::size_t G) {
    auto below = [&](std::size_t x) { return x > g ? (x - g - 1) / G + 1 : std::size_t{0}; };
    return hi > lo ? static_cast<double>(below(hi) - below(lo)) : 0.0;
}

// Channel pairs evaluated per (a-stream, b-stream). Forward gives the
// (alpha, beta) channel (ia, jb); backward gives the (beta, alpha) channel (jb, ia).
struct PairSpec {
    Label ia;
    Label jb;
};
constexpr std::array<PairSpec, 4> kPairs{{{Label::XX, Label::XX}, {Label::XY, Label::XY}, {Label::XY, Label::XX},
                                          {Label::XX, Label::XY}}};

// Combination values from the four channels of one direction.
struct Combos {
    std::vector<double> u1, u2, w;
};

Combos combos_from(const std::array<const std::vector<double>*, 4>& q, std::size_t max_lag) {
    // q indexed by CorrelatorSet::index.
    const auto& xx = *q[CorrelatorSet::index(Label::XX, Label::XX)];
    const auto& yy = *q[CorrelatorSet::index(Label::XY, Label::XY)];
    const auto& yx = *q[CorrelatorSet::index(Label::XY, Label::XX)];
    const auto& xy = *q[CorrelatorSet::index(Label::XX, Label::XY)];
    Combos c;
    c.u1.resize(max_lag + 1);
    c.w.resize(max_lag + 1);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        c.u1[k] = (xx[k] + yy[k]) / (xx[k] - yy[k]);
        c.w[k] = xx[k] + yy[k];
    }
    c.u2.resize(max_lag);
    for (std::size_t k = 0; k < max_lag; ++k) c.u2[k] = (yx[k + 1] - xy[k]) / (yx[k + 1] + xy[k]);
    return c;
}

struct JackAccum {
    std::vector<double> ref, s1, s2;
    std::vector<char> bad;
    void init(const std::vector<double>& r) {
        ref = r;
        s1.assign(r.size(), 0.0);
        s2.assign(r.size(), 0.0);
        bad.assign(r.size(), 0);
    }
    void add(const std::vector<double>& r) {
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (!std::isfinite(r[k]) || !std::isfinite(ref[k])) {
                bad[k] = 1;
                continue;
            }
            const double d = r[k] - ref[k];
            s1[k] += d;
            s2[k] += d * d;
        }
    }
    std::vector<double> se(std::size_t G) const {
        std::vector<double> out(ref.size());
        const double g = static_cast<double>(G);
        for (std::size_t k = 0; k < ref.size(); ++k) {
            if (bad[k]) {
                out[k] = std::numeric_limits<double>::infinity();
                continue;
            }
            const double var = std::max(0.0, s2[k] - s1[k] * s1[k] / g);
            out[k] = std::sqrt((g - 1.0) / g * var);
        }
        return out;
    }
};

}  // namespace

double stream_mean(const std::vector<std::int8_t>& s) {
    if (s.empty()) throw std::invalid_argument("stream_mean: empty stream");
    long long acc = 0;
    for (auto v : s) acc += v;
    return static_cast<double>(acc) / static_cast<double>(s.size());
}

std::array<double, 4> estimate_means(const ShotRecord& shots) {
    std::array<double, 4> m{};
    for (std::size_t i = 0; i < 4; ++i) m[i] = stream_mean(shots.streams[i]);
    return m;
}

LagSums cross_lag_sums(const std::vector<double>& a, const std::vector<double>& b, std::size_t max_lag,
                       CorrelatorMethod method, bool integer_valued) {
    if (a.size() != b.size()) throw std::invalid_argument("cross_lag_sums: length mismatch");
    if (a.empty() || max_lag >= a.size()) throw std::invalid_argument("cross_lag_sums: max_lag must be < N");
    PairCorrelator pc(b, max_lag, method, integer_valued);
    return pc.sums(a, 0, a.size());
}

CorrelatorPair estimate_correlators(const std::vector<std::int8_t>& a_xx, const std::vector<std::int8_t>& a_xy,
                                    const std::vector<std::int8_t>& b_xx, const std::vector<std::int8_t>& b_xy,
                                    double dt, const CorrelatorOptions& opt) {
    const std::size_t N = a_xx.size();
    if (N == 0 || a_xy.size() != N || b_xx.size() != N || b_xy.size() != N) {
        throw std::invalid_argument("estimate_correlators: streams must be non-empty and of equal length");
    }
    const std::size_t max_lag = opt.max_lag.value_or(N - 1);
    if (max_lag >= N) throw std::invalid_argument("estimate_correlators: max_lag must be < N");
    if (max_lag < 1) throw std::invalid_argument("estimate_correlators: max_lag must be >= 1");

    const std::array<std::vector<double>, 2> a{to_double(a_xx), to_double(a_xy)};
    const std::array<std::vector<double>, 2> b{to_double(b_xx), to_double(b_xy)};
    const std::array<double, 2> ma{stream_mean(a_xx), stream_mean(a_xy)};
    const std::array<double, 2> mb{stream_mean(b_xx), stream_mean(b_xy)};

    CorrelatorPair out;
    out.forward.means_a = ma;
    out.forward.means_b = mb;
    out.backward.means_a = mb;
    out.backward.means_b = ma;
    for (auto* s : {&out.forward, &out.backward}) {
        s->dt = dt;
        s->n = N;
        s->max_lag = max_lag;
    }

    const std::array<PairCorrelator, 2> pcs{PairCorrelator(b[0], max_lag, opt.method, true),
                                            PairCorrelator(b[1], max_lag, opt.method, true)};

    std::vector<double> cnt(max_lag + 1);
    for (std::size_t k = 0; k <= max_lag; ++k) cnt[k] = static_cast<double>(N - k);

    // Full-sample channels.
    std::array<LagSums, 4> full;
    for (std::size_t p = 0; p < kPairs.size(); ++p) {
        const auto& ps = kPairs[p];
        full[p] = pcs[static_cast<int>(ps.jb)].sums(a[static_cast<int>(ps.ia)], 0, N);
        const double mprod = ma[static_cast<int>(ps.ia)] * mb[static_cast<int>(ps.jb)];

        CorrelatorChannel& f = out.forward.channel(ps.ia, ps.jb);
        f.first = ps.ia;
        f.second = ps.jb;
        CorrelatorChannel& r = out.backward.channel(ps.jb, ps.ia);
        r.first = ps.jb;
        r.second = ps.ia;
        for (auto* ch : {&f, &r}) {
            ch->t.resize(max_lag + 1);
            ch->q.resize(max_lag + 1);
            ch->count = cnt;
        }
        for (std::size_t k = 0; k <= max_lag; ++k) {
            f.q[k] = full[p].forward[k] / cnt[k] - mprod;
            r.q[k] = full[p].backward[k] / cnt[k] - mprod;
            const long long kk = static_cast<long long>(k);
            f.t[k] = static_cast<double>(2 * kk + delta_of(ps.ia) - delta_of(ps.jb)) * dt;
            r.t[k] = static_cast<double>(2 * kk + delta_of(ps.jb) - delta_of(ps.ia)) * dt;
        }
    }

    const std::size_t G = opt.jackknife_blocks;
    if (G >= 2 && N >= G) {
        auto qview = [](const CorrelatorSet& s) {
            std::array<const std::vector<double>*, 4> v{};
            for (std::size_t i = 0; i < 4; ++i) v[i] = &s.channels[i].q;
            return v;
        };
        const Combos cf = combos_from(qview(out.forward), max_lag);
        const Combos cb = combos_from(qview(out.backward), max_lag);
        JackAccum ju1f, ju2f, jwf, ju1b, ju2b, jwb;
        ju1f.init(cf.u1);
        ju2f.init(cf.u2);
        jwf.init(cf.w);
        ju1b.init(cb.u1);
        ju2b.init(cb.u2);
        jwb.init(cb.w);

        // Delete-one-group replicates. Products are grouped by the index of the
        // alpha-side shot modulo G, so the replicates see the same noise
        // realization and the spread measures shot noise only. Means stay at
        // their full-sample values.
        std::array<std::vector<double>, 4> qf, qb;
        for (auto& v : qf) v.resize(max_lag + 1);
        for (auto& v : qb) v.resize(max_lag + 1);
        for (std::size_t g = 0; g < G; ++g) {
            for (std::size_t p = 0; p < kPairs.size(); ++p) {
                const auto& ps = kPairs[p];
                const LagSums part = pcs[static_cast<int>(ps.jb)].sums(a[static_cast<int>(ps.ia)], 0, N, G, g);
                const double mprod = ma[static_cast<int>(ps.ia)] * mb[static_cast<int>(ps.jb)];
                auto& vf = qf[CorrelatorSet::index(ps.ia, ps.jb)];
                auto& vb = qb[CorrelatorSet::index(ps.jb, ps.ia)];
                for (std::size_t k = 0; k <= max_lag; ++k) {
                    const double cf_k = cnt[k] - residue_count(0, N - k, g, G);
                    const double cb_k = cnt[k] - residue_count(k, N, g, G);
                    vf[k] = cf_k > 0 ? (full[p].forward[k] - part.forward[k]) / cf_k - mprod
                                     : std::numeric_limits<double>::quiet_NaN();
                    vb[k] = cb_k > 0 ? (full[p].backward[k] - part.backward[k]) / cb_k - mprod
                                     : std::numeric_limits<double>::quiet_NaN();
                }
            }
            const Combos rf = combos_from({&qf[0], &qf[1], &qf[2], &qf[3]}, max_lag);
            const Combos rb = combos_from({&qb[0], &qb[1], &qb[2], &qb[3]}, max_lag);
            ju1f.add(rf.u1);
            ju2f.add(rf.u2);
            jwf.add(rf.w);
            ju1b.add(rb.u1);
            ju2b.add(rb.u2);
            jwb.add(rb.w);
        }
        out.forward.se = {G, ju1f.se(G), ju2f.se(G), jwf.se(G)};
        out.backward.se = {G, ju1b.se(G), ju2b.se(G), jwb.se(G)};
    }
    return out;
}

CorrelatorPair estimate_correlators(const ShotRecord& shots, int alpha, int beta, const CorrelatorOptions& opt) {
    if (alpha < 1 || alpha > 2 || beta < 1 || beta > 2) throw std::out_of_range("qubit index must be 1 or 2");
    CorrelatorPair p = estimate_correlators(shots.stream(alpha, Label::XX), shots.stream(alpha, Label::XY),
                                            shots.stream(beta, Label::XX), shots.stream(beta, Label::XY),
                                            shots.config.delta_t, opt);
    const auto& qa = shots.config.qubit(alpha);
    const auto& qb = shots.config.qubit(beta);
    p.forward.alpha = alpha;
    p.forward.beta = beta;
    p.forward.tau_a = qa.tau;
    p.forward.tau_b = qb.tau;
    p.forward.t2star_a = qa.t2star;
    p.forward.t2star_b = qb.t2star;
    p.forward.omega_a = qa.omega;
    p.forward.omega_b = qb.omega;
    p.backward.alpha = beta;
    p.backward.beta = alpha;
    p.backward.tau_a = qb.tau;
    p.backward.tau_b = qa.tau;
    p.backward.t2star_a = qb.t2star;
    p.backward.t2star_b = qa.t2star;
    p.backward.omega_a = qb.omega;
    p.backward.omega_b = qa.omega;
    return p;
}

double analytic_correlator(const AnalyticParams& p) {
    if (p.var_a < 0.0 || p.var_b < 0.0) throw std::invalid_argument("analytic_correlator: negative variance");
    if (std::abs(p.cross) > std::sqrt(p.var_a * p.var_b) * (1.0 + 1e-12)) {
        throw std::invalid_argument("analytic_correlator: cross value violates Cauchy-Schwarz");
    }
    const double xa = p.tau_a * p.tau_a * p.var_a;
    const double xb = p.tau_b * p.tau_b * p.var_b;
    const double c = 2.0 * p.tau_a * p.tau_b * p.cross;
    const double chi_m = xa + xb - c;
    const double chi_p = xa + xb + c;
    // tau^2 / T2*^2 = tau^2 var / 2.
    const double e0 = std::exp(-0.5 * (xa + xb));
    return 0.5 * p.B_a * p.B_b *
           (std::cos(p.phi_a - p.phi_b) * std::exp(-0.5 * chi_m) - std::cos(p.phi_a + p.phi_b) * std::exp(-0.5 * chi_p) -
            2.0 * std::sin(p.phi_a) * std::sin(p.phi_b) * e0);
}

}  // namespace sscs
