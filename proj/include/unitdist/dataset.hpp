#pragma once

#include <cstddef>
#include <vector>

namespace unitdist {

// Ordered observations, each strictly inside (0,1). Source order is kept.
class Dataset {
 public:
  explicit Dataset(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

}  // namespace unitdist
