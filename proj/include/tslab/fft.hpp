#pragma once

#include <complex>
#include <span>

namespace tslab {

using cplx = std::complex<double>;

namespace fft {

/// In-place unnormalized DFT. `sign = -1` computes
/// X_k = sum_j x_j exp(-2 pi i jk/n); `sign = +1` the conjugate kernel.
/// Plans are cached per (size, sign) and shared between threads.
void transform(std::span<cplx> data, int sign);

/// In-place transforms of the contiguous rows of length `size` in `data`.
void transform_rows(std::span<cplx> data, int size, int sign);

inline void forward(std::span<cplx> data) { transform(data, -1); }
inline void backward(std::span<cplx> data) { transform(data, +1); }
inline void backward_rows(std::span<cplx> data, int size) { transform_rows(data, size, +1); }

}  // namespace fft
}  // namespace tslab
