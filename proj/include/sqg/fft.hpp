#ifndef SQG_FFT_HPP
#define SQG_FFT_HPP

#include <complex>
#include <span>

namespace sqg::fft {

using cplx = std::complex<double>;

enum class Direction { forward, backward };

/// Unnormalized in-place 2D complex DFT of an n1 x n2 row-major array.
/// forward uses exp(-2 pi i jk/n), backward exp(+2 pi i jk/n).
/// Safe to call concurrently on distinct arrays; plans are cached per shape.
void transform_2d(std::span<cplx> data, int n1, int n2, Direction dir);

/// 1D variant, same conventions.
void transform_1d(std::span<cplx> data, Direction dir);

}  // namespace sqg::fft

#endif
