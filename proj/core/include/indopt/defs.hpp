#pragma once

#include <limits>
#include <vector>

namespace indopt {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace indopt
