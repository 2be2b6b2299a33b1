#pragma once

#include <span>
#include <vector>

namespace refgame {

// 1-based ascending ranks; tied values share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace refgame
