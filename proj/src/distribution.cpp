#include "unitdist/distribution.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "unitdist/specfun.hpp"

namespace unitdist {

namespace {

using specfun::log1mexp;
using specfun::log_beta;
using specfun::log_gamma;

constexpr double kLn6 = 1.791759469228055;

struct FamilyInfo {
  std::string_view name;
  std::vector<std::string> param_names;
  std::string_view constraints;
};

const std::array<FamilyInfo, 11>& family_table() {
  static const std::array<FamilyInfo, 11> table = {{
      {"unit-power", {"beta"}, "beta > 0"},
      {"unit-rayleigh", {"alpha"}, "alpha > 0"},
      {"kumaraswamy", {"alpha", "beta"}, "alpha > 0, beta > 0"},
      {"fatima1", {"alpha", "beta"}, "alpha > 0, beta > 0"},
      {"fatima2", {"alpha", "beta", "i"}, "beta > 0, i > 0, alpha > i - 1"},
      {"fatima3", {"alpha", "beta"}, "alpha > 0, beta > 0"},
      {"fatima4", {"alpha", "beta"}, "alpha > 0, beta > 0"},
      {"fatima5", {"alpha"}, "alpha > 0"},
      {"fatima6", {"alpha", "n"}, "alpha > 0, n >= 0"},
      {"fatima7", {"alpha", "n"}, "alpha > 0, n >= 1"},
      {"beta", {"a", "b"}, "a > 0, b > 0"},
  }};
  return table;
}

const FamilyInfo& info(Family f) { return family_table()[static_cast<std::size_t>(f)]; }

[[noreturn]] void bad_params(Family f, const std::vector<double>& params) {
  std::ostringstream msg;
  msg << family_name(f) << " requires " << info(f).constraints << " (got";
  const auto& names = family_param_names(f);
  for (std::size_t j = 0; j < params.size(); ++j)
    msg << ' ' << names[j] << '=' << params[j];
  msg << ')';
  throw std::invalid_argument(msg.str());
}

void check_unit_open(double y, const char* op) {
  if (!(y > 0.0) || !(y < 1.0)) {
    std::ostringstream msg;
    msg << op << ": y must lie strictly in (0,1), got " << y;
    throw std::domain_error(msg.str());
  }
}

// ln(1 - y^c) evaluated from ln y, stable for y near 1.
double ln_one_minus_pow(double ln_y, double c) { return log1mexp(c * ln_y); }

}  // namespace

bool params_valid(Family f, const std::vector<double>& params) noexcept {
  if (params.size() != family_param_count(f)) return false;
  for (double v : params)
    if (!std::isfinite(v)) return false;
  switch (f) {
    case Family::unit_power:
    case Family::unit_rayleigh:
    case Family::fatima5:
      return params[0] > 0.0;
    case Family::kumaraswamy:
    case Family::fatima1:
    case Family::fatima3:
    case Family::fatima4:
    case Family::beta:
      return params[0] > 0.0 && params[1] > 0.0;
    case Family::fatima2:
      return params[1] > 0.0 && params[2] > 0.0 && params[0] > params[2] - 1.0;
    case Family::fatima6:
      return params[0] > 0.0 && params[1] >= 0.0;
    case Family::fatima7:
      return params[0] > 0.0 && params[1] >= 1.0;
  }
  return false;
}

DistributionSpec::DistributionSpec(Family family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {
  const auto& names = family_param_names(family);
  if (params_.size() != names.size()) {
    std::ostringstream msg;
    msg << family_name(family) << " expects " << names.size() << " parameter(s), got "
        << params_.size();
    throw std::invalid_argument(msg.str());
  }
  if (!params_valid(family_, params_)) bad_params(family_, params_);
}

Family family_from_name(std::string_view name) {
  if (name == "mbur") return Family::fatima5;
  const auto& table = family_table();
  for (std::size_t idx = 0; idx < table.size(); ++idx)
    if (table[idx].name == name) return static_cast<Family>(idx);
  std::ostringstream msg;
  msg << "unknown distribution '" << name << "'; registered names:";
  for (const auto& fi : table) msg << ' ' << fi.name;
  msg << " (alias: mbur -> fatima5)";
  throw std::invalid_argument(msg.str());
}

std::string_view family_name(Family f) { return info(f).name; }

const std::vector<std::string>& family_param_names(Family f) { return info(f).param_names; }

std::size_t family_param_count(Family f) { return info(f).param_names.size(); }

std::string_view family_constraints(Family f) { return info(f).constraints; }

const std::vector<std::string>& registered_family_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& fi : family_table()) out.emplace_back(fi.name);
    return out;
  }();
  return names;
}

double log_pdf(const DistributionSpec& spec, double y) {
  check_unit_open(y, "log_pdf");
  const auto& p = spec.params();
  const double ln_y = std::log(y);
  switch (spec.family()) {
    case Family::unit_power:
      return std::log(p[0]) + (p[0] - 1.0) * ln_y;
    case Family::unit_rayleigh: {
      const double c = 1.0 / (p[0] * p[0]);
      return std::log(c) + (c - 1.0) * ln_y;
    }
    case Family::kumaraswamy:
      return std::log(p[0]) + std::log(p[1]) + (p[1] - 1.0) * ln_y +
             (p[0] - 1.0) * ln_one_minus_pow(ln_y, p[1]);
    case Family::fatima1:
      return std::log(p[0]) + std::log(p[1]) + (p[0] * p[1] - 1.0) * ln_y;
    case Family::fatima2: {
      const double alpha = p[0], beta = p[1], i = p[2];
      return log_gamma(alpha + 1.0) - log_gamma(i) - log_gamma(alpha - i + 1.0) +
             std::log(beta) + (i * beta - 1.0) * ln_y +
             (alpha - i) * ln_one_minus_pow(ln_y, beta);
    }
    case Family::fatima3: {
      const double c = 1.0 / (p[0] * p[0]);
      return std::log(p[1]) + std::log(c) + (c - 1.0) * ln_y +
             (p[1] - 1.0) * ln_one_minus_pow(ln_y, c);
    }
    case Family::fatima4: {
      const double c = p[1] / (p[0] * p[0]);
      return std::log(c) + (c - 1.0) * ln_y;
    }
    case Family::fatima5: {
      const double c = 1.0 / (p[0] * p[0]);
      return kLn6 + std::log(c) + (2.0 * c - 1.0) * ln_y + ln_one_minus_pow(ln_y, c);
    }
    case Family::fatima6: {
      const double c = 1.0 / (p[0] * p[0]), n = p[1];
      return log_gamma(2.0 * n + 2.0) - 2.0 * log_gamma(n + 1.0) + std::log(c) +
             ((n + 1.0) * c - 1.0) * ln_y + n * ln_one_minus_pow(ln_y, c);
    }
    case Family::fatima7: {
      const double c = 1.0 / (p[0] * p[0]), n = p[1];
      return log_gamma(n + 1.0) - 2.0 * log_gamma((n + 1.0) / 2.0) + std::log(c) +
             ((n + 1.0) / 2.0 * c - 1.0) * ln_y +
             (n - 1.0) / 2.0 * ln_one_minus_pow(ln_y, c);
    }
    case Family::beta:
      return (p[0] - 1.0) * ln_y + (p[1] - 1.0) * std::log1p(-y) - log_beta(p[0], p[1]);
  }
  throw std::logic_error("log_pdf: unhandled family");
}

double pdf(const DistributionSpec& spec, double y) { return std::exp(log_pdf(spec, y)); }

double cdf(const DistributionSpec& spec, double y) {
  if (!(y >= 0.0) || !(y <= 1.0))
    throw std::domain_error("cdf: y must lie in [0,1]");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;
  const auto& p = spec.params();
  const double ln_y = std::log(y);
  switch (spec.family()) {
    case Family::unit_power:
      return std::exp(p[0] * ln_y);
    case Family::unit_rayleigh:
      return std::exp(ln_y / (p[0] * p[0]));
    case Family::kumaraswamy:
      return -std::expm1(p[0] * ln_one_minus_pow(ln_y, p[1]));
    case Family::fatima1:
      return std::exp(p[0] * p[1] * ln_y);
    case Family::fatima2:
      return specfun::reg_inc_beta(std::exp(p[1] * ln_y), p[2], p[0] - p[2] + 1.0);
    case Family::fatima3:
      return -std::expm1(p[1] * ln_one_minus_pow(ln_y, 1.0 / (p[0] * p[0])));
    case Family::fatima4:
      return std::exp(p[1] / (p[0] * p[0]) * ln_y);
    case Family::fatima5:
    case Family::fatima6:
    case Family::fatima7:
      return power_beta_cdf(to_power_beta(spec), y);
    case Family::beta:
      return specfun::reg_inc_beta(y, p[0], p[1]);
  }
  throw std::logic_error("cdf: unhandled family");
}

double quantile(const DistributionSpec& spec, double u) {
  if (!(u >= 0.0) || !(u <= 1.0))
    throw std::domain_error("quantile: u must lie in [0,1]");
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  const auto& p = spec.params();
  const double ln_u = std::log(u);
  switch (spec.family()) {
    case Family::unit_power:
      return std::exp(ln_u / p[0]);
    case Family::unit_rayleigh:
      return std::exp(p[0] * p[0] * ln_u);
    case Family::kumaraswamy:
      return std::exp(log1mexp(std::log1p(-u) / p[0]) / p[1]);
    case Family::fatima1:
      return std::exp(ln_u / (p[0] * p[1]));
    case Family::fatima3:
      return std::exp(p[0] * p[0] * log1mexp(std::log1p(-u) / p[1]));
    case Family::fatima4:
      return std::exp(p[0] * p[0] / p[1] * ln_u);
    case Family::fatima2:
    case Family::fatima5:
    case Family::fatima6:
    case Family::fatima7:
    case Family::beta:
      return power_beta_quantile(to_power_beta(spec), u);
  }
  throw std::logic_error("quantile: unhandled family");
}

double raw_moment(const DistributionSpec& spec, double r) {
  if (!(r >= 0.0)) throw std::domain_error("raw_moment: requires r >= 0");
  if (r == 0.0) return 1.0;
  const auto& p = spec.params();
  switch (spec.family()) {
    case Family::fatima1:
      return p[0] * p[1] / (p[0] * p[1] + r);
    case Family::fatima2: {
      const double alpha = p[0], beta = p[1], i = p[2];
      return std::exp(log_gamma(alpha + 1.0) + log_gamma(i + r / beta) - log_gamma(i) -
                      log_gamma(r / beta + alpha + 1.0));
    }
    case Family::fatima3: {
      const double a2 = p[0] * p[0];
      return std::exp(log_gamma(r * a2 + 1.0) + log_gamma(p[1] + 1.0) -
                      log_gamma(r * a2 + 1.0 + p[1]));
    }
    case Family::fatima4: {
      const double a2 = p[0] * p[0];
      return p[1] / (p[1] + r * a2);
    }
    default:
      return power_beta_raw_moment(to_power_beta(spec), r);
  }
}

double hazard(const DistributionSpec& spec, double y) {
  check_unit_open(y, "hazard");
  const double surv = 1.0 - cdf(spec, y);
  if (surv <= 0.0)
    throw std::overflow_error("hazard: survival function underflowed to 0");
  return pdf(spec, y) / surv;
}

PowerBetaRep to_power_beta(const DistributionSpec& spec) {
  const auto& p = spec.params();
  switch (spec.family()) {
    case Family::unit_power:
      return {1.0, 1.0, 1.0 / p[0]};
    case Family::unit_rayleigh:
      return {1.0, 1.0, p[0] * p[0]};
    case Family::kumaraswamy:
      return {1.0, p[0], 1.0 / p[1]};
    case Family::fatima1:
      return {1.0, 1.0, 1.0 / (p[0] * p[1])};
    case Family::fatima2:
      return {p[2], p[0] - p[2] + 1.0, 1.0 / p[1]};
    case Family::fatima3:
      return {1.0, p[1], p[0] * p[0]};
    case Family::fatima4:
      return {1.0, 1.0, p[0] * p[0] / p[1]};
    case Family::fatima5:
      return {2.0, 2.0, p[0] * p[0]};
    case Family::fatima6:
      return {p[1] + 1.0, p[1] + 1.0, p[0] * p[0]};
    case Family::fatima7:
      return {(p[1] + 1.0) / 2.0, (p[1] + 1.0) / 2.0, p[0] * p[0]};
    case Family::beta:
      return {p[0], p[1], 1.0};
  }
  throw std::logic_error("to_power_beta: unhandled family");
}

namespace {

void check_rep(const PowerBetaRep& rep) {
  if (!(rep.a > 0.0) || !(rep.b > 0.0) || !(rep.c > 0.0))
    throw std::domain_error("PowerBetaRep requires a, b, c > 0");
}

}  // namespace

double power_beta_log_pdf(const PowerBetaRep& rep, double y) {
  check_rep(rep);
  check_unit_open(y, "power_beta_log_pdf");
  const double ln_y = std::log(y);
  return -log_beta(rep.a, rep.b) - std::log(rep.c) + (rep.a / rep.c - 1.0) * ln_y +
         (rep.b - 1.0) * log1mexp(ln_y / rep.c);
}

double power_beta_cdf(const PowerBetaRep& rep, double y) {
  check_rep(rep);
  if (!(y >= 0.0) || !(y <= 1.0))
    throw std::domain_error("power_beta_cdf: y must lie in [0,1]");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;
  return specfun::reg_inc_beta(std::exp(std::log(y) / rep.c), rep.a, rep.b);
}

double power_beta_quantile(const PowerBetaRep& rep, double u) {
  check_rep(rep);
  if (!(u >= 0.0) || !(u <= 1.0))
    throw std::domain_error("power_beta_quantile: u must lie in [0,1]");
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  const double b = specfun::inv_reg_inc_beta(u, rep.a, rep.b);
  return std::pow(b, rep.c);
}

double power_beta_raw_moment(const PowerBetaRep& rep, double r) {
  check_rep(rep);
  if (!(r >= 0.0)) throw std::domain_error("power_beta_raw_moment: requires r >= 0");
  if (r == 0.0) return 1.0;
  return std::exp(log_beta(rep.a + r * rep.c, rep.b) - log_beta(rep.a, rep.b));
}

}  // namespace unitdist
