#pragma once

#include <complex>
#include <span>

namespace nonkp::fft {

using Complex = std::complex<double>;

enum class Direction { Forward, Backward };

/// In-place unnormalized complex transform of a row-major array.
///
/// `shape` holds one or two extents (slowest first). Forward uses the
/// e^{-2 pi i jn/N} kernel. Plans are cached per (shape, direction) and
/// executed through the new-array interface, so concurrent calls are safe.
void execute(std::span<Complex> data, std::span<const int> shape, Direction dir);

inline void forward_1d(std::span<Complex> data) {
  const int n[] = {static_cast<int>(data.size())};
  execute(data, n, Direction::Forward);
}

inline void backward_1d(std::span<Complex> data) {
  const int n[] = {static_cast<int>(data.size())};
  execute(data, n, Direction::Backward);
}

}  // namespace nonkp::fft
