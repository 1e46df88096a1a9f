#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "unitdist/distribution.hpp"

namespace unitdist {

struct SampleRequest {
  DistributionSpec spec;
  std::size_t count = 1;
  std::uint64_t seed = 0;
};

// Deterministic: equal requests produce identical output on any platform.
// Every draw lies strictly inside (0, 1).
std::vector<double> sample(const SampleRequest& request);

// Draws groups of n from the parent and keeps the i-th smallest of each.
std::vector<double> sample_by_order_stat(const DistributionSpec& parent, int i, int n,
                                         std::size_t count, std::uint64_t seed);

}  // namespace unitdist
