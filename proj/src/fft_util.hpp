#pragma once

#include <complex>
#include <cstddef>

namespace wigcert::detail {

/// In-place complex DFT of power-of-two length. sign = -1 forward
/// (e^{-2pi i jk/N}), +1 backward, unnormalized. Thread-safe; plans are
/// cached per (n, sign) behind a mutex and executed on caller buffers.
void fft_inplace(std::complex<double>* data, std::size_t n, int sign);

}  // namespace wigcert::detail
