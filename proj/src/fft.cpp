#include "fft.hpp"

#include <bit>
#include <cstddef>
#include <map>
#include <numbers>
#include <stdexcept>

namespace bmf::detail {

namespace {

// tw[k] = exp(2*pi*i*k/n), k < n/2. Cached per thread so concurrent norm
// evaluations never share mutable state.
const std::vector<Complex>& twiddles(std::size_t n) {
  thread_local std::map<std::size_t, std::vector<Complex>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<Complex> tw(n / 2);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t k = 0; k < tw.size(); ++k) {
    tw[k] = std::polar(1.0, step * static_cast<double>(k));
  }
  return cache.emplace(n, std::move(tw)).first->second;
}

}  // namespace

void fft_pow2(std::vector<Complex>& data) {
  const std::size_t n = data.size();
  if (n == 0 || !std::has_single_bit(n)) {
    throw std::invalid_argument("fft_pow2: size must be a power of two");
  }
  if (n == 1) return;

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  const std::vector<Complex>& tw = twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t block = 0; block < n; block += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex w = tw[k * stride];
        const Complex u = data[block + k];
        const Complex v = data[block + k + half] * w;
        data[block + k] = u + v;
        data[block + k + half] = u - v;
      }
    }
  }
}

}  // namespace bmf::detail
