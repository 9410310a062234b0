#include "sscs/io.hpp"

#include <json.hpp>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sscs::io {

namespace {

using json = nlohmann::json;

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    }
    void bytes(const void* p, std::size_t n) { out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); }
    template <class T>
    void le(T v) {
        unsigned char b[sizeof(T)];
        std::uint64_t u = 0;
        if constexpr (std::is_floating_point_v<T>) {
            u = std::bit_cast<std::uint64_t>(static_cast<double>(v));
        } else {
            u = static_cast<std::uint64_t>(v);
        }
        for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xFF);
        bytes(b, sizeof(T));
    }
    void close() {
        out_.flush();
        if (!out_) throw std::runtime_error("write failed");
    }

private:
    std::ofstream out_;
};

class Reader {
public:
    explicit Reader(const std::string& path) : in_(path, std::ios::binary), path_(path) {
        if (!in_) throw std::runtime_error("cannot open for reading: " + path);
    }
    void bytes(void* p, std::size_t n) {
        in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n) throw std::runtime_error("truncated file: " + path_);
    }
    template <class T>
    T le() {
        unsigned char b[sizeof(T)];
        bytes(b, sizeof(T));
        std::uint64_t u = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        if constexpr (std::is_same_v<T, double>) {
            return std::bit_cast<double>(u);
        } else {
            return static_cast<T>(u);
        }
    }
    void magic(const char* m) {
        char b[4];
        bytes(b, 4);
        if (std::memcmp(b, m, 4) != 0) throw std::runtime_error(std::string("bad magic, expected ") + m + ": " + path_);
    }

private:
    std::ifstream in_;
    std::string path_;
};

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::logic_error&) {
        throw std::runtime_error("io: malformed number '" + s + "'");
    }
    if (s.find_first_not_of(" \t\r", pos) != std::string::npos) {
        throw std::runtime_error("io: malformed number '" + s + "'");
    }
    return v;
}

}  // namespace

void write_traces_binary(const std::string& path, const NoiseTracePair& traces) {
    if (traces.delta_omega_1.size() != traces.delta_omega_2.size()) {
        throw std::invalid_argument("write_traces_binary: trace lengths differ");
    }
    Writer w(path);
    w.bytes("SSCT", 4);
    w.le<std::uint16_t>(kTraceVersion);
    w.le<std::uint64_t>(traces.size());
    w.le<double>(traces.dt);
    for (std::size_t i = 0; i < traces.size(); ++i) {
        w.le<double>(traces.delta_omega_1[i]);
        w.le<double>(traces.delta_omega_2[i]);
    }
    w.close();
}

NoiseTracePair read_traces_binary(const std::string& path) {
    Reader r(path);
    r.magic("SSCT");
    const auto version = r.le<std::uint16_t>();
    if (version != kTraceVersion) throw std::runtime_error("unsupported trace file version");
    const auto n = r.le<std::uint64_t>();
    NoiseTracePair t;
    t.dt = r.le<double>();
    t.delta_omega_1.resize(n);
    t.delta_omega_2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.delta_omega_1[i] = r.le<double>();
        t.delta_omega_2[i] = r.le<double>();
    }
    return t;
}

void write_traces_csv(const std::string& path, const NoiseTracePair& traces) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "t,delta_omega_1,delta_omega_2\n" << std::setprecision(17);
    for (std::size_t i = 0; i < traces.size(); ++i) {
        out << static_cast<double>(i) * traces.dt << ',' << traces.delta_omega_1[i] << ',' << traces.delta_omega_2[i]
            << '\n';
    }
}

NoiseTracePair read_traces_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    std::getline(in, line);
    NoiseTracePair t;
    std::vector<double> times;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c = split_csv(line);
        if (c.size() < 3) throw std::runtime_error("trace CSV: expected 3 columns");
        times.push_back(parse_double(c[0]));
        t.delta_omega_1.push_back(parse_double(c[1]));
        t.delta_omega_2.push_back(parse_double(c[2]));
    }
    if (times.size() < 2) throw std::runtime_error("trace CSV: need at least two rows");
    t.dt = times[1] - times[0];
    return t;
}

void write_shots_binary(const std::string& path, const ShotRecord& shots, bool bit_packed) {
    const std::size_t N = shots.n();
    for (const auto& s : shots.streams) {
        if (s.size() != N) throw std::invalid_argument("write_shots_binary: stream lengths differ");
    }
    Writer w(path);
    w.bytes("SSCS", 4);
    w.le<std::uint16_t>(kShotVersion);
    w.le<std::uint16_t>(bit_packed ? kShotFlagBitPacked : 0);
    w.le<double>(shots.config.delta_t);
    w.le<std::uint64_t>(N);
    for (int a = 1; a <= 2; ++a) {
        w.le<double>(shots.config.qubit(a).tau);
        w.le<double>(shots.config.qubit(a).omega);
        w.le<double>(shots.config.spam(a).p_e);
        w.le<double>(shots.config.spam(a).p_b);
    }
    for (const auto& s : shots.streams) {
        if (bit_packed) {
            std::vector<unsigned char> packed((N + 7) / 8, 0);
            for (std::size_t i = 0; i < N; ++i) {
                if (s[i] > 0) packed[i / 8] |= static_cast<unsigned char>(1u << (i % 8));
            }
            w.bytes(packed.data(), packed.size());
        } else {
            w.bytes(s.data(), N);
        }
    }
    w.close();
}

ShotRecord read_shots_binary(const std::string& path) {
    Reader r(path);
    r.magic("SSCS");
    const auto version = r.le<std::uint16_t>();
    if (version != kShotVersion) throw std::runtime_error("unsupported shot file version");
    const auto flags = r.le<std::uint16_t>();
    ShotRecord rec;
    rec.config.delta_t = r.le<double>();
    const auto N = r.le<std::uint64_t>();
    rec.config.n_pairs = N;
    for (int a = 1; a <= 2; ++a) {
        QubitParams& q = a == 1 ? rec.config.qubit1 : rec.config.qubit2;
        SpamModel& s = a == 1 ? rec.config.spam1 : rec.config.spam2;
        q.tau = r.le<double>();
        q.omega = r.le<double>();
        s.p_e = r.le<double>();
        s.p_b = r.le<double>();
    }
    for (auto& s : rec.streams) {
        s.resize(N);
        if (flags & kShotFlagBitPacked) {
            std::vector<unsigned char> packed((N + 7) / 8);
            r.bytes(packed.data(), packed.size());
            for (std::size_t i = 0; i < N; ++i) s[i] = (packed[i / 8] >> (i % 8)) & 1u ? 1 : -1;
        } else {
            r.bytes(s.data(), N);
            for (auto v : s) {
                if (v != 1 && v != -1) throw std::runtime_error("shot file: payload value outside {+1, -1}");
            }
        }
    }
    return rec;
}

void write_shots_csv(const std::string& path, const ShotRecord& shots) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << std::setprecision(17);
    out << "# dt=" << shots.config.delta_t << "\n";
    out << "# tau1=" << shots.config.qubit1.tau << "\n# omega1=" << shots.config.qubit1.omega << "\n";
    out << "# tau2=" << shots.config.qubit2.tau << "\n# omega2=" << shots.config.qubit2.omega << "\n";
    out << "n,q1_XX,q1_XY,q2_XX,q2_XY\n";
    for (std::size_t i = 0; i < shots.n(); ++i) {
        out << i;
        for (const auto& s : shots.streams) out << ',' << static_cast<int>(s[i]);
        out << '\n';
    }
}

ShotRecord read_shots_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    ShotRecord rec;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(1, eq - 1);
            key.erase(0, key.find_first_not_of(' '));
            const double v = parse_double(line.substr(eq + 1));
            if (key == "dt") rec.config.delta_t = v;
            else if (key == "tau1") rec.config.qubit1.tau = v;
            else if (key == "omega1") rec.config.qubit1.omega = v;
            else if (key == "tau2") rec.config.qubit2.tau = v;
            else if (key == "omega2") rec.config.qubit2.omega = v;
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto c = split_csv(line);
        if (c.size() < 5) throw std::runtime_error("shot CSV: expected 5 columns");
        for (std::size_t k = 0; k < 4; ++k) {
            const double v = parse_double(c[k + 1]);
            if (v != 1 && v != -1) throw std::runtime_error("shot CSV: value outside {+1, -1}");
            rec.streams[k].push_back(static_cast<std::int8_t>(v));
        }
    }
    if (!(rec.config.delta_t > 0.0)) throw std::runtime_error("shot CSV: missing '# dt=' header");
    rec.config.n_pairs = rec.n();
    return rec;
}

void write_spectrum_csv(const std::string& path, const SpectrumEstimate& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "f_Hz,re,im,abs,phase_rad,bin_count,stderr\n" << std::setprecision(12);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto v = s.values[i];
        const std::size_t count = s.binning ? s.binning->counts[i] : 1;
        const double se = s.stderr_.empty() ? std::numeric_limits<double>::quiet_NaN() : s.stderr_[i];
        out << s.frequencies[i] << ',' << v.real() << ',' << v.imag() << ',' << std::abs(v) << ',' << std::arg(v)
            << ',' << count << ',' << se << '\n';
    }
}

SpectrumEstimate read_spectrum_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    std::getline(in, line);
    SpectrumEstimate s;
    SpectrumBinning b;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c = split_csv(line);
        if (c.size() < 7) throw std::runtime_error("spectrum CSV: expected 7 columns");
        s.frequencies.push_back(parse_double(c[0]));
        s.values.emplace_back(parse_double(c[1]), parse_double(c[2]));
        b.counts.push_back(static_cast<std::size_t>(parse_double(c[5])));
        s.stderr_.push_back(c[6] == "nan" || c[6] == "-nan" ? std::numeric_limits<double>::quiet_NaN()
                                                            : parse_double(c[6]));
    }
    s.binning = b;
    return s;
}

std::string psd_spec_to_json(const PsdSpec& spec) {
    auto entry = [](const PsdComponentParams& p) { return json{{"I", p.I}, {"J", p.J}, {"t_c", p.t_c}}; };
    json j;
    j["entries"] = {{"11", entry(spec.s11)}, {"22", entry(spec.s22)}, {"12", entry(spec.c12)}};
    return j.dump(2);
}

PsdSpec psd_spec_from_json(const std::string& text) {
    const json j = json::parse(text);
    const json& e = j.contains("entries") ? j.at("entries") : j;
    auto entry = [&](const char* key) {
        const json& x = e.at(key);
        PsdComponentParams p;
        p.I = x.value("I", 0.0);
        p.J = x.value("J", 0.0);
        if (!x.contains("t_c")) throw std::invalid_argument(std::string("PsdSpec entry ") + key + " lacks t_c");
        p.t_c = x.at("t_c").get<double>();
        return p;
    };
    PsdSpec s;
    s.s11 = entry("11");
    s.s22 = entry("22");
    s.c12 = entry("12");
    if (e.contains("21")) {
        const PsdComponentParams p = entry("21");
        if (p.I != s.c12.I || p.J != s.c12.J || p.t_c != s.c12.t_c) {
            throw std::invalid_argument("PsdSpec: entry 21 must equal entry 12");
        }
    }
    check_component_invariants(s);
    return s;
}

std::string spectrum_metadata_json(const SpectrumEstimate& s) {
    json j;
    j["kind"] = to_string(s.kind);
    j["dt"] = s.meta.dt;
    j["n"] = s.meta.n;
    j["tau_a"] = s.meta.tau_a;
    j["tau_b"] = s.meta.tau_b;
    j["prefactor"] = to_string(s.meta.prefactor);
    j["batches"] = s.meta.batches;
    j["flagged_lags"] = s.meta.flagged_lags;
    j["total_lags"] = s.meta.total_lags;
    j["flagged_fraction"] = s.meta.flagged_fraction;
    j["noise_floor"] = s.meta.noise_floor;
    j["hermitian_defect"] = s.meta.hermitian_defect;
    if (s.binning) j["bins_per_decade"] = s.binning->bins_per_decade;
    return j.dump(2);
}

std::string fingerprint(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace sscs::io
