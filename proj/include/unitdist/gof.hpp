#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "unitdist/dataset.hpp"
#include "unitdist/mle.hpp"

namespace unitdist {

struct InformationCriteria {
  double aic;
  double caic;
  double bic;
  double hqic;
};

// Requires n > k + 1 so the corrected criterion's denominator stays positive.
InformationCriteria information_criteria(double log_lik, std::size_t k, std::size_t n);

using CdfFn = std::function<double(double)>;

// Kolmogorov-Smirnov statistic against a fully specified continuous model.
double ks_statistic(const Dataset& data, const CdfFn& model_cdf);

// Asymptotic two-sided p-value with the Stephens small-sample adjustment.
double ks_pvalue(double d, std::size_t n);

// Cramer-von Mises statistic.
double cvm_statistic(const Dataset& data, const CdfFn& model_cdf);

// Anderson-Darling statistic. Throws std::overflow_error when the model cdf
// reaches exactly 0 or 1 at an observation, since the statistic diverges.
double ad_statistic(const Dataset& data, const CdfFn& model_cdf);

struct GofReport {
  double log_lik;
  std::size_t k;  // parameters charged by the information criteria
  double aic;
  double caic;
  double bic;
  double hqic;
  double ks;
  double ks_pvalue;
  double cvm;
  double ad;
  bool reject_at_5pct;
};

// Scores a fitted model on the data it was fitted to. k_override substitutes
// the charged parameter count (the dimension of spec.params() otherwise).
GofReport gof_report(const FitResult& fit, const Dataset& data,
                     std::optional<std::size_t> k_override = std::nullopt);

struct DescriptiveStats {
  std::size_t n;
  double min;
  double max;
  double mean;
  double std_dev;   // n-1 divisor
  double skewness;  // bias-corrected
  double kurtosis;  // bias-corrected, 3 at the normal
  double q25;
  double median;
  double q75;
};

// Throws std::invalid_argument when all values coincide.
DescriptiveStats descriptive(const Dataset& data);

}  // namespace unitdist
