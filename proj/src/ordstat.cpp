#include "unitdist/ordstat.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "unitdist/specfun.hpp"

namespace unitdist {

namespace {

using specfun::log_gamma;

bool near(double x, double target) { return std::fabs(x - target) <= 1e-12 * std::max(1.0, std::fabs(target)); }

}  // namespace

OrderSelector::OrderSelector(double i_, double n_) : i(i_), n(n_) {
  if (!(i > 0.0) || !(n > 0.0) || !(n >= i))
    throw std::invalid_argument("OrderSelector requires 0 < i <= n");
}

ParentDistribution make_parent(const DistributionSpec& spec) {
  return {[spec](double y) { return pdf(spec, y); },
          [spec](double y) { return cdf(spec, y); }};
}

double order_stat_log_pdf(const ParentDistribution& parent, const OrderSelector& sel, double y) {
  if (!(y > 0.0) || !(y < 1.0))
    throw std::domain_error("order_stat_log_pdf: y must lie strictly in (0,1)");
  const double f = parent.cdf(y);
  const double norm = log_gamma(sel.n + 1.0) - log_gamma(sel.i) - log_gamma(sel.n - sel.i + 1.0);
  double weighted = norm + std::log(parent.pdf(y));
  if (sel.i != 1.0) weighted += (sel.i - 1.0) * std::log(f);
  if (sel.n != sel.i) weighted += (sel.n - sel.i) * std::log1p(-f);
  return weighted;
}

double order_stat_pdf(const ParentDistribution& parent, const OrderSelector& sel, double y) {
  return std::exp(order_stat_log_pdf(parent, sel, y));
}

double order_stat_cdf(const ParentDistribution& parent, const OrderSelector& sel, double y) {
  if (!(y > 0.0) || !(y < 1.0))
    throw std::domain_error("order_stat_cdf: y must lie strictly in (0,1)");
  return specfun::reg_inc_beta(parent.cdf(y), sel.i, sel.n - sel.i + 1.0);
}

DistributionSpec derive_family(const DistributionSpec& parent, const OrderSelector& sel) {
  if (parent.family() == Family::unit_power) {
    const double beta = parent.params()[0];
    if (near(sel.i, 1.0)) return {Family::kumaraswamy, {sel.n, beta}};
    if (near(sel.i, sel.n)) return {Family::fatima1, {sel.n, beta}};
    return {Family::fatima2, {sel.n, beta, sel.i}};
  }
  if (parent.family() == Family::unit_rayleigh) {
    const double alpha = parent.params()[0];
    if (near(sel.i, 2.0) && near(sel.n, 3.0)) return {Family::fatima5, {alpha}};
    if (near(sel.i, 1.0)) return {Family::fatima3, {alpha, sel.n}};
    if (near(sel.i, sel.n)) return {Family::fatima4, {alpha, sel.n}};
    if (near(sel.i, (sel.n + 1.0) / 2.0) && sel.n >= 1.0)
      return {Family::fatima7, {alpha, sel.n}};
  }
  std::ostringstream msg;
  msg << "derive_family: no closed-form family for parent " << family_name(parent.family())
      << " with i=" << sel.i << ", n=" << sel.n;
  throw std::invalid_argument(msg.str());
}

}  // namespace unitdist
