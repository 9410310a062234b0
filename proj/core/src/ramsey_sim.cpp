#include "sscs/ramsey_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sscs {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_prob(double p) { return p >= 0.0 && p <= 1.0; }
}  // namespace

double theta_of(Label l) { return l == Label::XX ? kPi / 2.0 : 0.0; }
int delta_of(Label l) { return l == Label::XX ? 1 : 0; }

void SpamModel::validate() const {
    if (!is_prob(p_e) || !is_prob(p_b)) throw std::invalid_argument("SpamModel: probabilities must lie in [0, 1]");
}

void SequenceConfig::validate() const {
    if (!(qubit1.tau > 0.0) || !(qubit2.tau > 0.0)) throw std::invalid_argument("SequenceConfig: tau must be positive");
    if (!(delta_t > std::max(qubit1.tau, qubit2.tau))) {
        throw std::invalid_argument("SequenceConfig: delta_t must exceed both evolution times");
    }
    if (n_pairs < 2) throw std::invalid_argument("SequenceConfig: need at least two pairs");
    if (quasi_static_substeps < 1) throw std::invalid_argument("SequenceConfig: quasi_static_substeps must be >= 1");
    spam1.validate();
    spam2.validate();
}

double ShotRecord::time_of(Label l, std::size_t n) const {
    return static_cast<double>(2 * n + 1 - static_cast<std::size_t>(delta_of(l))) * config.delta_t;
}

double expectation(const QubitParams& q, Label label, double delta_omega, const SpamModel& spam) {
    const double A = spam.A();
    const double B = spam.B();
    if (std::abs(A) + std::abs(B) > 1.0 + 1e-15) throw std::invalid_argument("expectation: |A| + |B| > 1");
    return A + B * std::sin((q.omega + delta_omega) * q.tau + theta_of(label));
}

int sample_shot_u(double P, double u) {
    if (!(P >= -1.0 && P <= 1.0)) throw std::domain_error("sample_shot: expectation outside [-1, 1]");
    return u < 0.5 * (1.0 + P) ? 1 : -1;
}

int sample_shot(double P, rng::CounterRng& r) { return sample_shot_u(P, r.uniform()); }

double spam_equivalence_check(double p_e, double p_b, const std::vector<double>& phases) {
    SpamModel s{p_e, p_b};
    s.validate();
    double worst = 0.0;
    for (double phi : phases) {
        const double p_plus_ideal = 0.5 * (1.0 + std::sin(phi));
        // Survives the bias step with prob 1 - p_b, then keeps or flips its sign.
        const double p_plus = (1.0 - p_b) * (p_plus_ideal * (1.0 - p_e) + (1.0 - p_plus_ideal) * p_e);
        const double e_process = 2.0 * p_plus - 1.0;
        worst = std::max(worst, std::abs(e_process - (s.A() + s.B() * std::sin(phi))));
    }
    return worst;
}

ShotRecord run_sequence(const SequenceConfig& cfg, const NoiseTracePair& noise) {
    cfg.validate();
    const std::size_t sub = cfg.quasi_static_substeps;
    const double fine_dt = cfg.delta_t / static_cast<double>(sub);
    if (std::abs(noise.dt - fine_dt) > 1e-9 * fine_dt) {
        throw std::invalid_argument("run_sequence: noise dt does not match delta_t / quasi_static_substeps");
    }
    const std::size_t slots = 2 * cfg.n_pairs;
    if (noise.size() < slots * sub) throw std::invalid_argument("run_sequence: noise trace too short");

    ShotRecord rec;
    rec.config = cfg;
    for (auto& s : rec.streams) s.assign(cfg.n_pairs, 0);

    const std::size_t nfine = noise.size();
    auto sample_at = [&](const std::vector<double>& tr, double t) {
        // Linear interpolation on the fine grid, clamped at the trace end.
        const double x = t / fine_dt;
        const double fl = std::floor(x);
        const std::size_t i = static_cast<std::size_t>(fl);
        if (i + 1 >= nfine) return tr[nfine - 1];
        const double w = x - fl;
        return tr[i] + w * (tr[i + 1] - tr[i]);
    };

    for (std::size_t slot = 0; slot < slots; ++slot) {
        const Label label = (slot % 2 == 0) ? Label::XX : Label::XY;
        const std::size_t n = slot / 2;
        for (int alpha = 1; alpha <= 2; ++alpha) {
            const QubitParams& q = cfg.qubit(alpha);
            const SpamModel& spam = cfg.spam(alpha);
            const auto& tr = alpha == 1 ? noise.delta_omega_1 : noise.delta_omega_2;
            double dw;
            if (sub == 1) {
                dw = tr[slot];
            } else {
                const double t0 = static_cast<double>(slot) * cfg.delta_t;
                double acc = 0.0;
                for (std::size_t j = 0; j < sub; ++j) {
                    acc += sample_at(tr, t0 + q.tau * static_cast<double>(j) / static_cast<double>(sub - 1));
                }
                dw = acc / static_cast<double>(sub);
            }
            // Per-slot substream: draws are independent of the SPAM setting so
            // error-free and SPAM runs share the same ideal outcomes.
            rng::CounterRng r(rng::derive_key(cfg.seed, 0x52414D53ULL, slot, static_cast<std::uint64_t>(alpha)));
            const double u_shot = r.uniform();
            const double u_bias = r.uniform();
            const double u_flip = r.uniform();
            const double p_ideal = std::sin((q.omega + dw) * q.tau + theta_of(label));
            int x = sample_shot_u(std::clamp(p_ideal, -1.0, 1.0), u_shot);
            if (u_bias < spam.p_b) {
                x = -1;
            } else if (u_flip < spam.p_e) {
                x = -x;
            }
            rec.stream(alpha, label)[n] = static_cast<std::int8_t>(x);
        }
    }
    return rec;
}

}  // namespace sscs
