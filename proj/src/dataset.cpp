#include "unitdist/dataset.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace unitdist {

Dataset::Dataset(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("dataset must contain at least one value");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const double v = values_[k];
    if (!std::isfinite(v) || !(v > 0.0) || !(v < 1.0)) {
      std::ostringstream msg;
      msg << "dataset values must lie strictly in (0,1); value " << v << " at position "
          << (k + 1);
      throw std::invalid_argument(msg.str());
    }
  }
}

}  // namespace unitdist
