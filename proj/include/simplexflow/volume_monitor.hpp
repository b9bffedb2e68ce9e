#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "simplexflow/configuration.hpp"
#include "simplexflow/simplex_set.hpp"

namespace simplexflow {

/// Default number of sampled combinations when enumerating every simplex
/// would be too expensive.
inline constexpr std::size_t kDefaultVolumeSampleBudget = 100000;

/// Fixed list of unordered simplices whose mean volume is tracked over time.
class VolumeMonitor {
 public:
  /// Every (order+1)-subset if there are at most `budget` of them, otherwise
  /// `budget` distinct subsets drawn uniformly with the given seed.
  static VolumeMonitor combinations(std::size_t particles, std::size_t order,
                                    std::size_t budget = kDefaultVolumeSampleBudget,
                                    std::uint64_t seed = 0);

  /// The unordered simplices of S.
  static VolumeMonitor from_set(const SimplexSet& set);

  std::size_t order() const { return order_; }
  std::size_t size() const { return order_ + 1 == 0 ? 0 : indices_.size() / (order_ + 1); }
  bool sampled() const { return sampled_; }
  std::span<const std::size_t> simplex(std::size_t s) const {
    return {indices_.data() + s * (order_ + 1), order_ + 1};
  }

 private:
  std::size_t order_ = 0;
  bool sampled_ = false;
  std::vector<std::size_t> indices_;
};

/// Mean of Vol_n (not squared) over the monitored simplices.
double mean_simplex_volume(const Configuration& config, const VolumeMonitor& monitor);

}  // namespace simplexflow
