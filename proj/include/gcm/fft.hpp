#pragma once

#include <array>
#include <complex>
#include <span>

#include "gcm/field.hpp"

namespace gcm {

/// Smallest n' >= n whose prime factors are all in {2, 3, 5, 7}.
int fft_friendly_size(int n);

/// In-place complex DFT on an owned buffer with x-fastest layout.
///
/// forward() computes sum_j f_j exp(-i xi . x_j); backward() is the unnormalized
/// inverse. Plans use FFTW_ESTIMATE so results are reproducible run to run.
class Fft3d {
public:
    explicit Fft3d(std::array<int, 3> shape);
    ~Fft3d();
    Fft3d(const Fft3d&) = delete;
    Fft3d& operator=(const Fft3d&) = delete;

    std::span<cplx> data() { return {buffer_, size_}; }
    std::array<int, 3> shape() const { return shape_; }
    std::size_t size() const { return size_; }
    void forward();
    void backward();

private:
    std::array<int, 3> shape_;
    std::size_t size_;
    cplx* buffer_;
    void* forward_plan_;
    void* backward_plan_;
};

class Fft2d {
public:
    Fft2d(int nx, int ny);
    ~Fft2d();
    Fft2d(const Fft2d&) = delete;
    Fft2d& operator=(const Fft2d&) = delete;

    std::span<cplx> data() { return {buffer_, size_}; }
    void forward();
    void backward();

private:
    std::size_t size_;
    cplx* buffer_;
    void* forward_plan_;
    void* backward_plan_;
};

/// Type-I discrete sine transform in 3D on a real buffer (unnormalized;
/// applying it twice scales by 8 (nx+1)(ny+1)(nz+1)).
class Dst3d {
public:
    explicit Dst3d(std::array<int, 3> shape);
    ~Dst3d();
    Dst3d(const Dst3d&) = delete;
    Dst3d& operator=(const Dst3d&) = delete;

    std::span<double> data() { return {buffer_, size_}; }
    void transform();

private:
    std::size_t size_;
    double* buffer_;
    void* plan_;
};

} // namespace gcm
