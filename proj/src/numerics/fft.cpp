#include "gcm/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>

namespace gcm {

namespace {

// The FFTW planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

} // namespace

int fft_friendly_size(int n) {
    if (n < 1) return 1;
    for (int m = n;; ++m) {
        int r = m;
        for (int p : {2, 3, 5, 7})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

Fft3d::Fft3d(std::array<int, 3> shape)
    : shape_(shape), size_(static_cast<std::size_t>(shape[0]) * shape[1] * shape[2]) {
    buffer_ = static_cast<cplx*>(fftw_malloc(sizeof(cplx) * size_));
    if (!buffer_) throw std::bad_alloc();
    std::lock_guard lock(planner_mutex());
    // FFTW is row-major; x-fastest storage means dimensions (nz, ny, nx).
    forward_plan_ = fftw_plan_dft_3d(shape[2], shape[1], shape[0], as_fftw(buffer_),
                                     as_fftw(buffer_), FFTW_FORWARD, FFTW_ESTIMATE);
    backward_plan_ = fftw_plan_dft_3d(shape[2], shape[1], shape[0], as_fftw(buffer_),
                                      as_fftw(buffer_), FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft3d::~Fft3d() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
    fftw_free(buffer_);
}

void Fft3d::forward() { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }
void Fft3d::backward() { fftw_execute(static_cast<fftw_plan>(backward_plan_)); }

Fft2d::Fft2d(int nx, int ny) : size_(static_cast<std::size_t>(nx) * ny) {
    buffer_ = static_cast<cplx*>(fftw_malloc(sizeof(cplx) * size_));
    if (!buffer_) throw std::bad_alloc();
    std::lock_guard lock(planner_mutex());
    forward_plan_ = fftw_plan_dft_2d(ny, nx, as_fftw(buffer_), as_fftw(buffer_), FFTW_FORWARD,
                                     FFTW_ESTIMATE);
    backward_plan_ = fftw_plan_dft_2d(ny, nx, as_fftw(buffer_), as_fftw(buffer_), FFTW_BACKWARD,
                                      FFTW_ESTIMATE);
}

Fft2d::~Fft2d() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
    fftw_free(buffer_);
}

void Fft2d::forward() { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }
void Fft2d::backward() { fftw_execute(static_cast<fftw_plan>(backward_plan_)); }

Dst3d::Dst3d(std::array<int, 3> shape)
    : size_(static_cast<std::size_t>(shape[0]) * shape[1] * shape[2]) {
    buffer_ = static_cast<double*>(fftw_malloc(sizeof(double) * size_));
    if (!buffer_) throw std::bad_alloc();
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_r2r_3d(shape[2], shape[1], shape[0], buffer_, buffer_, FFTW_RODFT00,
                             FFTW_RODFT00, FFTW_RODFT00, FFTW_ESTIMATE);
}

Dst3d::~Dst3d() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    fftw_free(buffer_);
}

void Dst3d::transform() { fftw_execute(static_cast<fftw_plan>(plan_)); }

} // namespace gcm
