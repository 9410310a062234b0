#pragma once

#include <cstdint>
#include <string>

#include "sscs/noise_synth.hpp"
#include "sscs/ramsey_sim.hpp"
#include "sscs/spectra_model.hpp"

namespace sscs::io {

constexpr std::uint16_t kTraceVersion = 1;
constexpr std::uint16_t kShotVersion = 1;
constexpr std::uint16_t kShotFlagBitPacked = 0x1;

// "SSCT" | u16 version | u64 N | f64 dt | N x (f64 q1, f64 q2), little-endian.
void write_traces_binary(const std::string& path, const NoiseTracePair& traces);
NoiseTracePair read_traces_binary(const std::string& path);
void write_traces_csv(const std::string& path, const NoiseTracePair& traces);
NoiseTracePair read_traces_csv(const std::string& path);

// "SSCS" | u16 version | u16 flags | f64 dt | u64 N | per qubit f64 tau,
// omega, p_e, p_b | four payload streams q1 XX, q1 XY, q2 XX, q2 XY as int8
// (+1/-1) or, with the bit-packed flag, ceil(N/8) bytes each (bit set = +1).
void write_shots_binary(const std::string& path, const ShotRecord& shots, bool bit_packed = false);
ShotRecord read_shots_binary(const std::string& path);

// Header lines "# key=value" (dt, tau1, omega1, tau2, omega2), then
// n,q1_XX,q1_XY,q2_XX,q2_XY rows. SPAM parameters are not needed to analyse.
void write_shots_csv(const std::string& path, const ShotRecord& shots);
ShotRecord read_shots_csv(const std::string& path);

// Columns f_Hz,re,im,abs,phase_rad,bin_count,stderr.
void write_spectrum_csv(const std::string& path, const SpectrumEstimate& s);
SpectrumEstimate read_spectrum_csv(const std::string& path);

std::string psd_spec_to_json(const PsdSpec& spec);
PsdSpec psd_spec_from_json(const std::string& text);

std::string spectrum_metadata_json(const SpectrumEstimate& s);

// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fingerprint(const std::string& bytes);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace sscs::io
