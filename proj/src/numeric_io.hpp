#pragma once

#include <string>

namespace bmf::detail {

// Locale-independent decimal text with 17 significant digits (full double
// round-trip). Used everywhere numbers reach a file, so reruns are
// byte-identical.
std::string format_double(double v);

}  // namespace bmf::detail
