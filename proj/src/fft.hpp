#pragma once

#include <vector>

#include "bmf/polynomial.hpp"

namespace bmf::detail {

// In-place transform X_j = sum_k a_k exp(+2*pi*i*j*k/N) for N a power of
// two (the synthesis sign, so the output is a polynomial evaluated at the
// N-th roots of unity). Twiddles come from the angle formula, not from
// accumulated multiplication.
void fft_pow2(std::vector<Complex>& data);

}  // namespace bmf::detail
