#pragma once

#include <cstddef>
#include <vector>

#include "mtqcl/linalg.hpp"

namespace mtqcl::testing {

/// Bit of wire w (1-based, big-endian) in basis index x of a k-qubit register.
inline std::size_t wire_bit(std::size_t x, int k, int w) { return (x >> (k - w)) & 1U; }

/// Embeds u on the listed wires by direct index arithmetic: the entry at
/// (r, c) is u(sub(r), sub(c)) when r and c agree off the listed wires.
inline ComplexMatrix index_embedding(const ComplexMatrix& u, int k, const std::vector<int>& wires) {
  const std::size_t dim = std::size_t{1} << k;
  ComplexMatrix out(dim);
  std::size_t mask = 0;
  for (int w : wires) mask |= std::size_t{1} << (k - w);
  auto sub = [&](std::size_t x) {
    std::size_t s = 0;
    for (int w : wires) s = (s << 1) | wire_bit(x, k, w);
    return s;
  };
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~mask) != (c & ~mask)) continue;
      out(r, c) = u(sub(r), sub(c));
    }
  }
  return out;
}

/// Permutation matrix exchanging the bits of wires a and b.
inline ComplexMatrix bit_swap(int k, int a, int b) {
  const std::size_t dim = std::size_t{1} << k;
  ComplexMatrix out(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t y = x;
    const std::size_t ba = wire_bit(x, k, a);
    const std::size_t bb = wire_bit(x, k, b);
    if (ba != bb) y ^= (std::size_t{1} << (k - a)) | (std::size_t{1} << (k - b));
    out(y, x) = 1.0;
  }
  return out;
}

}  // namespace mtqcl::testing
