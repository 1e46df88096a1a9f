#include "unitdist/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace unitdist {

namespace {

using specfun::digamma;
using specfun::log1mexp;
using specfun::log_gamma;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kRejection = 1e300;

double sum_log(const Dataset& data) {
  double s = 0.0;
  for (double y : data.values()) s += std::log(y);
  return s;
}

// sum of ln(1 - y^c)
double sum_log_one_minus_pow(const Dataset& data, double c) {
  double s = 0.0;
  for (double y : data.values()) s += log1mexp(c * std::log(y));
  return s;
}

}  // namespace

double log_likelihood(Family family, const std::vector<double>& params, const Dataset& data) {
  if (!params_valid(family, params)) return kNegInf;
  const double n = static_cast<double>(data.size());
  switch (family) {
    case Family::fatima1: {
      const double alpha = params[0], beta = params[1];
      return n * std::log(alpha) + n * std::log(beta) + (alpha * beta - 1.0) * sum_log(data);
    }
    case Family::fatima2: {
      const double alpha = params[0], beta = params[1], i = params[2];
      return n * std::log(beta) + n * log_gamma(alpha + 1.0) - n * log_gamma(i) -
             n * log_gamma(alpha - i + 1.0) + (beta * i - 1.0) * sum_log(data) +
             (alpha - i) * sum_log_one_minus_pow(data, beta);
    }
    case Family::fatima3: {
      const double alpha = params[0], beta = params[1];
      const double c = 1.0 / (alpha * alpha);
      return n * std::log(beta) + n * std::log(c) + (c - 1.0) * sum_log(data) +
             (beta - 1.0) * sum_log_one_minus_pow(data, c);
    }
    case Family::fatima4: {
      const double alpha = params[0], beta = params[1];
      return n * std::log(beta) - n * std::log(alpha * alpha) +
             (beta / (alpha * alpha) - 1.0) * sum_log(data);
    }
    default: {
      const DistributionSpec spec(family, params);
      double ll = 0.0;
      for (double y : data.values()) ll += log_pdf(spec, y);
      return ll;
    }
  }
}

std::vector<double> score(Family family, const std::vector<double>& params, const Dataset& data) {
  if (!params_valid(family, params))
    throw std::domain_error("score: parameters outside the valid region");
  const double n = static_cast<double>(data.size());
  const double s_log = sum_log(data);
  switch (family) {
    case Family::fatima1: {
      const double alpha = params[0], beta = params[1];
      return {n / alpha + beta * s_log, n / beta + alpha * s_log};
    }
    case Family::fatima2: {
      const double alpha = params[0], beta = params[1], i = params[2];
      double s_l1p = 0.0;  // sum ln(1 - y^beta)
      double s_rat = 0.0;  // sum y^beta ln y / (1 - y^beta)
      for (double y : data.values()) {
        const double ln_y = std::log(y);
        const double t = beta * ln_y;
        s_l1p += log1mexp(t);
        s_rat += std::exp(t) * ln_y / (-std::expm1(t));
      }
      const double d_alpha = n * digamma(alpha + 1.0) - n * digamma(alpha - i + 1.0) + s_l1p;
      const double d_beta = n / beta + i * s_log - (alpha - i) * s_rat;
      const double d_i = -n * digamma(i) + n * digamma(alpha - i + 1.0) + beta * s_log - s_l1p;
      return {d_alpha, d_beta, d_i};
    }
    case Family::fatima3: {
      const double alpha = params[0], beta = params[1];
      const double c = 1.0 / (alpha * alpha);
      double s_l1p = 0.0;  // sum ln(1 - y^c)
      double s_rat = 0.0;  // sum y^c ln y / (1 - y^c)
      for (double y : data.values()) {
        const double ln_y = std::log(y);
        const double t = c * ln_y;
        s_l1p += log1mexp(t);
        s_rat += std::exp(t) * ln_y / (-std::expm1(t));
      }
      const double a3 = alpha * alpha * alpha;
      const double d_alpha = -2.0 * n / alpha - 2.0 / a3 * s_log + 2.0 * (beta - 1.0) / a3 * s_rat;
      const double d_beta = n / beta + s_l1p;
      return {d_alpha, d_beta};
    }
    case Family::fatima4: {
      const double alpha = params[0], beta = params[1];
      const double a3 = alpha * alpha * alpha;
      return {-2.0 * n / alpha - 2.0 * beta / a3 * s_log,
              n / beta + s_log / (alpha * alpha)};
    }
    default:
      throw std::domain_error("score: analytic gradient available only for fatima1-fatima4");
  }
}

NelderMeadResult nelder_mead(const specfun::ObjectiveFn& objective, std::vector<double> x0,
                             const FitConfig& config) {
  constexpr double kRho = 1.0, kChi = 2.0, kPsi = 0.5, kSigma = 0.5;
  const std::size_t dim = x0.size();
  if (dim == 0) throw std::invalid_argument("nelder_mead: empty starting point");

  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = objective(x);
    return std::isfinite(v) ? v : kRejection;
  };

  std::vector<std::vector<double>> sim(dim + 1, x0);
  for (std::size_t j = 0; j < dim; ++j)
    sim[j + 1][j] += std::max(0.05 * std::fabs(x0[j]), 0.00025);
  std::vector<double> fsim(dim + 1);
  for (std::size_t k = 0; k <= dim; ++k) fsim[k] = eval(sim[k]);

  auto order = [&] {
    std::vector<std::size_t> idx(dim + 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return fsim[a] < fsim[b]; });
    std::vector<std::vector<double>> s2(dim + 1);
    std::vector<double> f2(dim + 1);
    for (std::size_t k = 0; k <= dim; ++k) {
      s2[k] = sim[idx[k]];
      f2[k] = fsim[idx[k]];
    }
    sim = std::move(s2);
    fsim = std::move(f2);
  };
  order();

  bool converged = false;
  for (int iter = 0; iter < config.max_iter; ++iter) {
    double x_spread = 0.0, f_spread = 0.0;
    for (std::size_t k = 1; k <= dim; ++k) {
      for (std::size_t j = 0; j < dim; ++j)
        x_spread = std::max(x_spread, std::fabs(sim[k][j] - sim[0][j]));
      f_spread = std::max(f_spread, std::fabs(fsim[k] - fsim[0]));
    }
    if (x_spread <= config.x_tol && f_spread <= config.f_tol) {
      converged = true;
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k)
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += sim[k][j] / dim;

    auto affine = [&](double t) {
      std::vector<double> x(dim);
      for (std::size_t j = 0; j < dim; ++j)
        x[j] = centroid[j] + t * (centroid[j] - sim[dim][j]);
      return x;
    };

    const auto xr = affine(kRho);
    const double fr = eval(xr);
    bool shrink = false;
    if (fr < fsim[0]) {
      const auto xe = affine(kRho * kChi);
      const double fe = eval(xe);
      if (fe < fr) {
        sim[dim] = xe;
        fsim[dim] = fe;
      } else {
        sim[dim] = xr;
        fsim[dim] = fr;
      }
    } else if (fr < fsim[dim - 1]) {
      sim[dim] = xr;
      fsim[dim] = fr;
    } else if (fr < fsim[dim]) {
      const auto xc = affine(kPsi * kRho);
      const double fc = eval(xc);
      if (fc <= fr) {
        sim[dim] = xc;
        fsim[dim] = fc;
      } else {
        shrink = true;
      }
    } else {
      const auto xcc = affine(-kPsi);
      const double fcc = eval(xcc);
      if (fcc < fsim[dim]) {
        sim[dim] = xcc;
        fsim[dim] = fcc;
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t k = 1; k <= dim; ++k) {
        for (std::size_t j = 0; j < dim; ++j)
          sim[k][j] = sim[0][j] + kSigma * (sim[k][j] - sim[0][j]);
        fsim[k] = eval(sim[k]);
      }
    }
    order();
  }

  return {sim[0], fsim[0], converged, evals};
}

namespace {

std::vector<double> to_unconstrained(Family family, const std::vector<double>& theta) {
  auto safe_log = [](double v) { return std::log(std::max(v, 1e-12)); };
  switch (family) {
    case Family::fatima2:
      // alpha > i - 1 becomes a free exponent
      return {safe_log(theta[0] - theta[2] + 1.0), safe_log(theta[1]), safe_log(theta[2])};
    case Family::fatima7:
      return {safe_log(theta[0]), safe_log(theta[1] - 1.0)};
    default: {
      std::vector<double> z(theta.size());
      for (std::size_t j = 0; j < theta.size(); ++j) z[j] = safe_log(theta[j]);
      return z;
    }
  }
}

std::vector<double> from_unconstrained(Family family, const std::vector<double>& z) {
  switch (family) {
    case Family::fatima2: {
      const double i = std::exp(z[2]);
      return {i - 1.0 + std::exp(z[0]), std::exp(z[1]), i};
    }
    case Family::fatima7:
      return {std::exp(z[0]), 1.0 + std::exp(z[1])};
    default: {
      std::vector<double> theta(z.size());
      for (std::size_t j = 0; j < z.size(); ++j) theta[j] = std::exp(z[j]);
      return theta;
    }
  }
}

double splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double clamp_init(double v) { return std::clamp(v, 1e-3, 1e6); }

}  // namespace

std::vector<double> default_init(Family family, const Dataset& data) {
  const double n = static_cast<double>(data.size());
  double mean = 0.0;
  for (double y : data.values()) mean += y;
  mean /= n;
  const double ratio = clamp_init(mean / (1.0 - mean));
  const double alpha_r = clamp_init(std::sqrt(-sum_log(data) / n));

  switch (family) {
    case Family::unit_power:
      return {ratio};
    case Family::unit_rayleigh:
      return {alpha_r};
    case Family::kumaraswamy:
      return {1.0, ratio};
    case Family::fatima1: {
      const double s = clamp_init(std::sqrt(ratio));
      return {s, s};
    }
    case Family::fatima2:
      return {2.0, ratio, 1.0};
    case Family::fatima3:
      return {alpha_r, 1.0};
    case Family::fatima4:
      return {1.0, ratio};
    case Family::fatima5:
      return {alpha_r};
    case Family::fatima6:
      return {alpha_r, 1.0};
    case Family::fatima7:
      return {alpha_r, 3.0};
    case Family::beta: {
      double var = 0.0;
      for (double y : data.values()) var += (y - mean) * (y - mean);
      var /= std::max(n - 1.0, 1.0);
      if (!(var > 0.0)) return {1.0, 1.0};
      const double scale = mean * (1.0 - mean) / var - 1.0;
      return {clamp_init(mean * scale), clamp_init((1.0 - mean) * scale)};
    }
  }
  throw std::logic_error("default_init: unhandled family");
}

FitResult fit(Family family, const Dataset& data, const FitConfig& config) {
  const std::size_t n_params = family_param_count(family);
  if (data.size() < n_params)
    throw std::invalid_argument("fit: dataset smaller than the parameter count");
  const auto& values = data.values();
  if (std::all_of(values.begin(), values.end(),
                  [&](double v) { return v == values.front(); }))
    throw std::invalid_argument("fit: degenerate dataset (all values identical)");

  std::vector<double> theta0;
  if (config.init) {
    theta0 = *config.init;
    if (!params_valid(family, theta0))
      throw std::invalid_argument("fit: init outside the family's valid region");
  } else {
    theta0 = default_init(family, data);
  }
  const auto z0 = to_unconstrained(family, theta0);

  const auto objective = [&](const std::vector<double>& z) {
    return -log_likelihood(family, from_unconstrained(family, z), data);
  };

  struct Run {
    NelderMeadResult nm;
    std::vector<double> theta;
  };
  std::vector<Run> runs;
  int total_evals = 0;
  std::uint64_t rng_state = config.restart_seed;
  for (int r = 0; r <= std::max(config.multi_start, 0); ++r) {
    auto start = z0;
    if (r > 0)
      for (auto& zj : start) zj += 1.5 * splitmix64(rng_state) - 0.75;
    auto nm = nelder_mead(objective, start, config);
    total_evals += nm.n_evals;
    runs.push_back({std::move(nm), {}});
    runs.back().theta = from_unconstrained(family, runs.back().nm.x);
  }

  const auto norm2 = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    const double diff = runs[r].nm.f - runs[best].nm.f;
    if (diff < -1e-8 ||
        (std::fabs(diff) <= 1e-8 && norm2(runs[r].theta) < norm2(runs[best].theta)))
      best = r;
  }
  const auto& chosen = runs[best];
  const auto& theta_hat = chosen.theta;
  const double log_lik = -chosen.nm.f;

  bool flag = false;
  std::optional<specfun::Matrix> vcov;
  std::optional<std::vector<double>> std_err;
  const auto neg_ll = [&](const std::vector<double>& theta) {
    return -log_likelihood(family, theta, data);
  };
  try {
    const auto hess = specfun::numerical_hessian(neg_ll, theta_hat, config.numeric);
    const auto eig = specfun::sym_eigenvalues(hess);
    double max_abs = 0.0, min_abs = std::numeric_limits<double>::infinity();
    for (double ev : eig) {
      max_abs = std::max(max_abs, std::fabs(ev));
      min_abs = std::min(min_abs, std::fabs(ev));
    }
    const double cond = min_abs == 0.0 ? std::numeric_limits<double>::infinity()
                                       : max_abs / min_abs;
    double h_min = std::numeric_limits<double>::infinity();
    for (double t : theta_hat)
      h_min = std::min(h_min, config.numeric.fd_step * std::max(std::fabs(t), 1.0));
    // Smallest eigenvalue below the finite-difference noise floor means the
    // curvature in some direction is indistinguishable from zero.
    const double noise_floor = 50.0 * std::numeric_limits<double>::epsilon() *
                               std::max(std::fabs(neg_ll(theta_hat)), 1.0) / (h_min * h_min);
    if (cond > 1e8 || eig.front() <= noise_floor) {
      flag = true;
    } else if (auto inv = specfun::invert_matrix(hess)) {
      bool diag_ok = true;
      std::vector<double> se(n_params);
      for (std::size_t j = 0; j < n_params; ++j) {
        if ((*inv)[j][j] < 0.0) {
          diag_ok = false;
          break;
        }
        se[j] = std::sqrt((*inv)[j][j]);
      }
      if (diag_ok) {
        vcov = std::move(*inv);
        std_err = std::move(se);
      } else {
        flag = true;
      }
    } else {
      flag = true;
    }
  } catch (const std::runtime_error&) {
    flag = true;  // Hessian not evaluable at the optimum
  }

  return {DistributionSpec(family, theta_hat), log_lik,     std::move(vcov),
          std::move(std_err),                  chosen.nm.converged, total_evals,
          flag};
}

std::optional<std::pair<std::string, double>> identified_quantity(const FitResult& result) {
  const auto& p = result.spec.params();
  switch (result.spec.family()) {
    case Family::fatima1:
      return std::make_pair(std::string("alpha*beta"), p[0] * p[1]);
    case Family::fatima4:
      return std::make_pair(std::string("beta/alpha^2"), p[1] / (p[0] * p[0]));
    default:
      return std::nullopt;
  }
}

}  // namespace unitdist
