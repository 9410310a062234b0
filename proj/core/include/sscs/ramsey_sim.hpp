#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sscs/noise_synth.hpp"
#include "sscs/rng.hpp"

namespace sscs {

enum class Label { XX = 0, XY = 1 };

// Phase offset of a subsequence: pi/2 for XX, 0 for XY.
double theta_of(Label l);
// Kronecker delta used by the slot timing rule: 1 for XX, 0 for XY.
int delta_of(Label l);

struct QubitParams {
    double tau = 0.0;    // free evolution time, s
    double omega = 0.0;  // rotating-frame detuning, rad/s
    double t2star = 0.0; // optional, 0 when unknown
};

struct SpamModel {
    double p_e = 0.0;  // readout inversion probability
    double p_b = 0.0;  // probability of a forced -1 outcome

    double A() const { return -p_b; }
    double B() const { return (1.0 - p_b) * (1.0 - 2.0 * p_e); }
    void validate() const;
};

struct SequenceConfig {
    QubitParams qubit1;
    QubitParams qubit2;
    SpamModel spam1;
    SpamModel spam2;
    double delta_t = 0.0;
    std::size_t n_pairs = 0;
    std::uint64_t seed = 0;
    std::size_t quasi_static_substeps = 1;

    const QubitParams& qubit(int alpha) const { return alpha == 1 ? qubit1 : qubit2; }
    const SpamModel& spam(int alpha) const { return alpha == 1 ? spam1 : spam2; }
    void validate() const;
};

// Outcome streams for both qubits. stream(alpha, label)[n] is the n-th shot of
// that subsequence; XX shots occupy slot 2n (time 2n dt), XY shots slot 2n+1.
struct ShotRecord {
    std::array<std::vector<std::int8_t>, 4> streams;  // q1 XX, q1 XY, q2 XX, q2 XY
    SequenceConfig config;

    std::size_t n() const { return streams[0].size(); }
    std::vector<std::int8_t>& stream(int alpha, Label l) { return streams[index(alpha, l)]; }
    const std::vector<std::int8_t>& stream(int alpha, Label l) const { return streams[index(alpha, l)]; }
    // Time of shot n of a subsequence: (2n + 1 - delta_if) dt.
    double time_of(Label l, std::size_t n) const;
    static std::size_t index(int alpha, Label l) { return static_cast<std::size_t>((alpha - 1) * 2 + static_cast<int>(l)); }
};

// A + B sin((omega + delta_omega) tau + theta_if). Throws when |A| + |B| > 1.
double expectation(const QubitParams& q, Label label, double delta_omega, const SpamModel& spam);

// +1 with probability (1 + P)/2. Throws std::domain_error for P outside [-1, 1].
int sample_shot(double P, rng::CounterRng& r);
// Same draw from a pre-generated uniform in [0, 1).
int sample_shot_u(double P, double u);

// Max |E_process(phi) - (A + B sin phi)| over the supplied phases, where the
// process is: ideal shot, then forced -1 with probability p_b, else a flip
// with probability p_e.
double spam_equivalence_check(double p_e, double p_b, const std::vector<double>& phases);

// Simulates both qubits over 2 N slots. The noise trace must have
// dt == delta_t / quasi_static_substeps and cover the sequence.
ShotRecord run_sequence(const SequenceConfig& cfg, const NoiseTracePair& noise);

}  // namespace sscs
