#include "unitdist/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "unitdist/distribution.hpp"

namespace unitdist {

namespace {

std::vector<double> sorted_model_cdf(const Dataset& data, const CdfFn& model_cdf) {
  std::vector<double> f(data.values());
  std::sort(f.begin(), f.end());
  for (double& y : f) y = model_cdf(y);
  return f;
}

}  // namespace

InformationCriteria information_criteria(double log_lik, std::size_t k, std::size_t n) {
  if (n <= k + 1)
    throw std::domain_error("information_criteria: need n > k + 1");
  const double kd = static_cast<double>(k), nd = static_cast<double>(n);
  const double aic = 2.0 * kd - 2.0 * log_lik;
  return {aic, aic + 2.0 * kd * (kd + 1.0) / (nd - kd - 1.0),
          kd * std::log(nd) - 2.0 * log_lik,
          2.0 * kd * std::log(std::log(nd)) - 2.0 * log_lik};
}

double ks_statistic(const Dataset& data, const CdfFn& model_cdf) {
  const auto f = sorted_model_cdf(data, model_cdf);
  const double n = static_cast<double>(f.size());
  double d = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double hi = (k + 1.0) / n - f[k];
    const double lo = f[k] - k / n;
    d = std::max({d, hi, lo});
  }
  return d;
}

double ks_pvalue(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda <= 0.0) return 1.0;
  double p;
  if (lambda < 0.4) {
    // Jacobi theta form, accurate where the alternating series collapses.
    constexpr double kPi = 3.14159265358979323846;
    double s = 0.0;
    for (int j = 1; j <= 3; ++j) {
      const double m = (2.0 * j - 1.0) * kPi / lambda;
      s += std::exp(-m * m / 8.0);
    }
    p = 1.0 - std::sqrt(2.0 * kPi) / lambda * s;
  } else {
    double s = 0.0;
    for (int j = 1; j <= 200; ++j) {
      const double term = std::exp(-2.0 * j * j * lambda * lambda);
      s += (j % 2 == 1) ? term : -term;
      if (term < 1e-12) break;
    }
    p = 2.0 * s;
  }
  return std::clamp(p, 0.0, 1.0);
}

double cvm_statistic(const Dataset& data, const CdfFn& model_cdf) {
  const auto f = sorted_model_cdf(data, model_cdf);
  const double n = static_cast<double>(f.size());
  double w2 = 1.0 / (12.0 * n);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double e = f[k] - (2.0 * k + 1.0) / (2.0 * n);
    w2 += e * e;
  }
  return w2;
}

double ad_statistic(const Dataset& data, const CdfFn& model_cdf) {
  const auto f = sorted_model_cdf(data, model_cdf);
  const std::size_t n = f.size();
  const double nd = static_cast<double>(n);
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f[k];
    const double fr = f[n - 1 - k];
    if (fk <= 0.0 || fr >= 1.0)
      throw std::overflow_error("ad_statistic: model cdf reaches 0 or 1 at an observation");
    s += (2.0 * k + 1.0) * (std::log(fk) + std::log1p(-fr));
  }
  return -nd - s / nd;
}

GofReport gof_report(const FitResult& fit, const Dataset& data,
                     std::optional<std::size_t> k_override) {
  const auto& spec = fit.spec;
  const CdfFn model = [&spec](double y) { return cdf(spec, y); };
  const std::size_t k = k_override.value_or(spec.params().size());
  const auto ic = information_criteria(fit.log_lik, k, data.size());
  const double d = ks_statistic(data, model);
  const double p = ks_pvalue(d, data.size());
  GofReport report;
  report.log_lik = fit.log_lik;
  report.k = k;
  report.aic = ic.aic;
  report.caic = ic.caic;
  report.bic = ic.bic;
  report.hqic = ic.hqic;
  report.ks = d;
  report.ks_pvalue = p;
  report.cvm = cvm_statistic(data, model);
  report.ad = ad_statistic(data, model);
  report.reject_at_5pct = p < 0.05;
  return report;
}

DescriptiveStats descriptive(const Dataset& data) {
  std::vector<double> y(data.values());
  std::sort(y.begin(), y.end());
  const std::size_t n = y.size();
  const double nd = static_cast<double>(n);
  if (n < 2) throw std::invalid_argument("descriptive: need at least 2 values");
  if (y.front() == y.back())
    throw std::invalid_argument("descriptive: degenerate data (zero variance)");

  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= nd;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : y) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= nd;
  m3 /= nd;
  m4 /= nd;

  // Bias-corrected shape statistics; undefined below their sample-size floor.
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  const double g1 = m3 / std::pow(m2, 1.5);
  const double skew = n >= 3 ? std::sqrt(nd * (nd - 1.0)) / (nd - 2.0) * g1 : kNan;
  const double kurt =
      n >= 4 ? 3.0 + (nd - 1.0) / ((nd - 2.0) * (nd - 3.0)) *
                         ((nd + 1.0) * (m4 / (m2 * m2) - 3.0) + 6.0)
             : kNan;

  // h = n p + 1/2 positions the quantile between order statistics.
  auto quantile_at = [&](double p) {
    const double h = std::clamp(nd * p + 0.5, 1.0, nd);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(h));
    const double frac = h - std::floor(h);
    return y[lo - 1] + frac * (y[hi - 1] - y[lo - 1]);
  };

  DescriptiveStats stats;
  stats.n = n;
  stats.min = y.front();
  stats.max = y.back();
  stats.mean = mean;
  stats.std_dev = std::sqrt(m2 * nd / (nd - 1.0));
  stats.skewness = skew;
  stats.kurtosis = kurt;
  stats.q25 = quantile_at(0.25);
  stats.median = quantile_at(0.5);
  stats.q75 = quantile_at(0.75);
  return stats;
}

}  // namespace unitdist
