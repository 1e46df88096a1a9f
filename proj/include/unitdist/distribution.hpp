#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace unitdist {

enum class Family {
  unit_power,
  unit_rayleigh,
  kumaraswamy,
  fatima1,
  fatima2,
  fatima3,
  fatima4,
  fatima5,
  fatima6,
  fatima7,
  beta,
};

// Y = B^c with B ~ Beta(a,b). Every family in the catalogue reduces to
// this form, which serves as the cross-family oracle, the CDF/quantile
// backend for the incomplete-beta families, and the sampling route.
struct PowerBetaRep {
  double a;
  double b;
  double c;
};

// A family tag plus a validated parameter vector (ordering per
// family_param_names). Construction enforces the family's constraints.
class DistributionSpec {
 public:
  DistributionSpec(Family family, std::vector<double> params);

  Family family() const { return family_; }
  const std::vector<double>& params() const { return params_; }

 private:
  Family family_;
  std::vector<double> params_;
};

// True when params has the right arity and satisfies the family's
// constraints; never throws (used as the optimizer's rejection test).
bool params_valid(Family f, const std::vector<double>& params) noexcept;

Family family_from_name(std::string_view name);
std::string_view family_name(Family f);
const std::vector<std::string>& family_param_names(Family f);
std::size_t family_param_count(Family f);
std::string_view family_constraints(Family f);
const std::vector<std::string>& registered_family_names();

double log_pdf(const DistributionSpec& spec, double y);
double pdf(const DistributionSpec& spec, double y);
double cdf(const DistributionSpec& spec, double y);
double quantile(const DistributionSpec& spec, double u);
double raw_moment(const DistributionSpec& spec, double r);
double hazard(const DistributionSpec& spec, double y);

PowerBetaRep to_power_beta(const DistributionSpec& spec);

double power_beta_log_pdf(const PowerBetaRep& rep, double y);
double power_beta_cdf(const PowerBetaRep& rep, double y);
double power_beta_quantile(const PowerBetaRep& rep, double u);
double power_beta_raw_moment(const PowerBetaRep& rep, double r);

}  // namespace unitdist
