#include "groupstat/stats/randomization.hpp"

#include <algorithm>

namespace groupstat::stats {

double threshold_from_values(std::vector<double> values, double alpha) {
  if (values.empty())
    throw std::invalid_argument("threshold_from_values: need at least one value");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("threshold_from_values: alpha must lie in (0,1)");
  std::sort(values.begin(), values.end());
  const auto count = static_cast<double>(values.size());
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i + 1;
    while (j < values.size() && values[j] == values[i]) ++j;
    // values[j..] strictly exceed values[i]
    if (static_cast<double>(values.size() - j) / count <= alpha) return values[i];
    i = j;
  }
  return values.back();  // unreachable: the maximum has no exceeders
}

}  // namespace groupstat::stats
