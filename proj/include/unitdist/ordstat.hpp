#pragma once

#include <functional>

#include "unitdist/distribution.hpp"

namespace unitdist {

// Any unit-supported parent: pdf on (0,1), cdf nondecreasing with limits 0 and 1.
struct ParentDistribution {
  std::function<double(double)> pdf;
  std::function<double(double)> cdf;
};

// Rank i within a (possibly non-integer) sample size n, 0 < i <= n.
struct OrderSelector {
  OrderSelector(double i, double n);
  double i;
  double n;
};

ParentDistribution make_parent(const DistributionSpec& spec);

// Density of the i-th order statistic of the parent, with the factorial
// normalizer generalized through the gamma function so non-integer ranks
// and sample sizes are well-defined.
double order_stat_log_pdf(const ParentDistribution& parent, const OrderSelector& sel, double y);
double order_stat_pdf(const ParentDistribution& parent, const OrderSelector& sel, double y);

// F_{i:n}(y) = I_{F(y)}(i, n - i + 1).
double order_stat_cdf(const ParentDistribution& parent, const OrderSelector& sel, double y);

// Maps the unit-power / unit-rayleigh order-statistic constructions onto
// their closed-form families; throws for selectors outside the table.
DistributionSpec derive_family(const DistributionSpec& parent, const OrderSelector& sel);

}  // namespace unitdist
