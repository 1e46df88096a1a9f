#include "unitdist/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace unitdist::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLnSqrt2Pi = 0.91893853320467274178;

// Lanczos g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};

double lanczos_sum(double z) {
  double s = kLanczos[0];
  for (int i = 1; i < 9; ++i) s += kLanczos[i] / (z + i);
  return s;
}

}  // namespace

double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::domain_error("log_gamma: requires finite x > 0");
  if (x < 0.5)
    return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
  double z = x - 1.0;
  double t = z + 7.5;
  return kLnSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

double digamma(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::domain_error("digamma: requires finite x > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  double inv = 1.0 / x;
  double inv2 = inv * inv;
  // Bernoulli tail of the asymptotic expansion.
  double tail =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 -
                                              inv2 * (691.0 / 32760 - inv2 * (1.0 / 12)))))));
  return acc + std::log(x) - 0.5 * inv - tail;
}

double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double log1mexp(double x) {
  if (x > 0.0) throw std::domain_error("log1mexp: requires x <= 0");
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  constexpr double kLn2 = 0.6931471805599453;
  return x < -kLn2 ? std::log1p(-std::exp(x)) : std::log(-std::expm1(x));
}

namespace {

// Lentz continued fraction for the incomplete beta.
double beta_cf(double x, double a, double b, int max_iter) {
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) return h;
  }
  throw std::runtime_error("reg_inc_beta: continued fraction did not converge");
}

}  // namespace

double reg_inc_beta(double x, double a, double b, const NumericConfig& cfg) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("reg_inc_beta: requires a > 0 and b > 0");
  if (!(x >= 0.0) || !(x <= 1.0))
    throw std::domain_error("reg_inc_beta: requires x in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const int max_iter = std::max(cfg.max_iter, 300);
  const double ln_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(x, a, b, max_iter) / a;
  return 1.0 - front * beta_cf(1.0 - x, b, a, max_iter) / b;
}

double inv_reg_inc_beta(double p, double a, double b, const NumericConfig& cfg) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("inv_reg_inc_beta: requires a > 0 and b > 0");
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::domain_error("inv_reg_inc_beta: requires p in [0,1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;

  const double ln_b = log_beta(a, b);
  double lo = 0.0, hi = 1.0;
  double x = a / (a + b);
  const int max_iter = std::max(cfg.max_iter, 200);
  for (int it = 0; it < max_iter; ++it) {
    const double f = reg_inc_beta(x, a, b, cfg) - p;
    if (std::fabs(f) <= 1e-11) return x;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    // Newton step; fall back to bisection when it leaves the bracket.
    const double ln_pdf = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - ln_b;
    double next = x - f * std::exp(-ln_pdf);
    if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    x = next;
  }
  throw std::runtime_error("inv_reg_inc_beta: tolerance not reached");
}

namespace {

double eval_checked(const ObjectiveFn& f, const std::vector<double>& x) {
  const double v = f(x);
  if (!std::isfinite(v))
    throw std::runtime_error("finite differences: objective non-finite at stencil point");
  return v;
}

}  // namespace

std::vector<double> finite_diff_grad(const ObjectiveFn& f, const std::vector<double>& theta,
                                     const NumericConfig& cfg) {
  const std::size_t p = theta.size();
  std::vector<double> g(p);
  for (std::size_t j = 0; j < p; ++j) {
    const double h = cfg.fd_step * std::max(std::fabs(theta[j]), 1.0);
    auto tp = theta, tm = theta;
    tp[j] += h;
    tm[j] -= h;
    g[j] = (eval_checked(f, tp) - eval_checked(f, tm)) / (2.0 * h);
  }
  return g;
}

Matrix numerical_hessian(const ObjectiveFn& f, const std::vector<double>& theta,
                         const NumericConfig& cfg) {
  const std::size_t p = theta.size();
  std::vector<double> h(p);
  for (std::size_t j = 0; j < p; ++j)
    h[j] = cfg.fd_step * std::max(std::fabs(theta[j]), 1.0);

  Matrix hess(p, std::vector<double>(p, 0.0));
  const double f0 = eval_checked(f, theta);
  for (std::size_t j = 0; j < p; ++j) {
    auto tp = theta, tm = theta;
    tp[j] += h[j];
    tm[j] -= h[j];
    hess[j][j] = (eval_checked(f, tp) + eval_checked(f, tm) - 2.0 * f0) / (h[j] * h[j]);
    for (std::size_t k = j + 1; k < p; ++k) {
      double acc = 0.0;
      for (int sj : {1, -1}) {
        for (int sk : {1, -1}) {
          auto t = theta;
          t[j] += sj * h[j];
          t[k] += sk * h[k];
          acc += sj * sk * eval_checked(f, t);
        }
      }
      hess[j][k] = hess[k][j] = acc / (4.0 * h[j] * h[k]);
    }
  }
  return hess;
}

std::vector<double> sym_eigenvalues(Matrix a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("sym_eigenvalues: matrix not square");
  if (n == 0) return {};

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale += a[i][j] * a[i][j];

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off <= 1e-30 * (scale + 1e-300)) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::optional<Matrix> invert_matrix(Matrix a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("invert_matrix: matrix not square");

  Matrix inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const double d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double m = a[r][col];
      if (m == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= m * a[col][j];
        inv[r][j] -= m * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace unitdist::specfun
