#include "sscs/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace sscs::fft {

namespace {

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

struct Buffer {
    void* p = nullptr;
    explicit Buffer(std::size_t bytes) : p(fftw_malloc(bytes)) {
        if (!p) throw std::bad_alloc();
    }
    ~Buffer() { fftw_free(p); }
    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;
};

struct Plan {
    fftw_plan p = nullptr;
    ~Plan() {
        if (p) {
            std::lock_guard<std::mutex> lk(plan_mutex());
            fftw_destroy_plan(p);
        }
    }
};

}  // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

cvec c2c(const cvec& in, int sign) {
    const std::size_t n = in.size();
    if (n == 0) return {};
    Buffer buf(sizeof(fftw_complex) * n);
    auto* data = static_cast<fftw_complex*>(buf.p);
    Plan plan;
    {
        std::lock_guard<std::mutex> lk(plan_mutex());
        plan.p = fftw_plan_dft_1d(static_cast<int>(n), data, data, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                  FFTW_ESTIMATE);
    }
    std::memcpy(data, in.data(), sizeof(fftw_complex) * n);
    fftw_execute(plan.p);
    cvec out(n);
    std::memcpy(static_cast<void*>(out.data()), data, sizeof(fftw_complex) * n);
    return out;
}

cvec r2c(const std::vector<double>& in, std::size_t L) {
    if (L == 0) throw std::invalid_argument("fft::r2c: zero length");
    Buffer rbuf(sizeof(double) * L);
    Buffer cbuf(sizeof(fftw_complex) * (L / 2 + 1));
    auto* r = static_cast<double*>(rbuf.p);
    auto* c = static_cast<fftw_complex*>(cbuf.p);
    Plan plan;
    {
        std::lock_guard<std::mutex> lk(plan_mutex());
        plan.p = fftw_plan_dft_r2c_1d(static_cast<int>(L), r, c, FFTW_ESTIMATE);
    }
    const std::size_t m = std::min(L, in.size());
    std::memcpy(r, in.data(), sizeof(double) * m);
    std::fill(r + m, r + L, 0.0);
    fftw_execute(plan.p);
    cvec out(L / 2 + 1);
    std::memcpy(static_cast<void*>(out.data()), c, sizeof(fftw_complex) * out.size());
    return out;
}

std::vector<double> c2r(const cvec& half, std::size_t L) {
    if (half.size() != L / 2 + 1) throw std::invalid_argument("fft::c2r: expected L/2+1 bins");
    Buffer rbuf(sizeof(double) * L);
    Buffer cbuf(sizeof(fftw_complex) * half.size());
    auto* r = static_cast<double*>(rbuf.p);
    auto* c = static_cast<fftw_complex*>(cbuf.p);
    Plan plan;
    {
        std::lock_guard<std::mutex> lk(plan_mutex());
        plan.p = fftw_plan_dft_c2r_1d(static_cast<int>(L), c, r, FFTW_ESTIMATE);
    }
    // c2r destroys its input, so it always works on the private copy.
    std::memcpy(c, half.data(), sizeof(fftw_complex) * half.size());
    fftw_execute(plan.p);
    return std::vector<double>(r, r + L);
}

}  // namespace sscs::fft
