#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unitdist/dataset.hpp"
#include "unitdist/distribution.hpp"
#include "unitdist/specfun.hpp"

namespace unitdist {

struct FitConfig {
  std::optional<std::vector<double>> init;
  int max_iter = 2000;
  double x_tol = 1e-9;
  double f_tol = 1e-9;
  int multi_start = 4;          // random restarts beyond the default start
  std::uint64_t restart_seed = 0;
  specfun::NumericConfig numeric;
};

struct FitResult {
  DistributionSpec spec;
  double log_lik;
  std::optional<specfun::Matrix> vcov;    // inverse observed information
  std::optional<std::vector<double>> std_err;
  bool converged;
  int n_evals;
  bool identifiability_flag;
};

// Sum of log densities; closed forms for fatima1-fatima4. Invalid
// parameters yield -inf rather than an exception so the optimizer can
// treat them as rejections.
double log_likelihood(Family family, const std::vector<double>& params, const Dataset& data);

// Analytic gradient of the log-likelihood, defined for fatima1-fatima4.
std::vector<double> score(Family family, const std::vector<double>& params, const Dataset& data);

struct NelderMeadResult {
  std::vector<double> x;
  double f;
  bool converged;
  int n_evals;
};

// Derivative-free simplex minimizer (reflection 1, expansion 2,
// contraction 0.5, shrink 0.5), initial steps 5% of |x0_j| with floor
// 0.00025, terminating when both the simplex spread and the function
// spread fall below the configured tolerances.
NelderMeadResult nelder_mead(const specfun::ObjectiveFn& objective, std::vector<double> x0,
                             const FitConfig& config = {});

// Moment-style starting point, always finite and inside the valid region.
std::vector<double> default_init(Family family, const Dataset& data);

FitResult fit(Family family, const Dataset& data, const FitConfig& config = {});

// For the ridge families the likelihood determines only a parameter
// combination: alpha*beta (fatima1), beta/alpha^2 (fatima4).
std::optional<std::pair<std::string, double>> identified_quantity(const FitResult& result);

}  // namespace unitdist
