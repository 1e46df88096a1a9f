#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace unitdist::specfun {

struct NumericConfig {
  double rel_tol = 1e-12;   // relative tolerance for iterative evaluations
  int max_iter = 200;       // continued-fraction / root-finding iteration cap
  double fd_step = 1e-5;    // finite-difference step scale
};

// ln Gamma(x) for x > 0. Lanczos approximation, relative error <= 1e-13
// over [1e-6, 1e6].
double log_gamma(double x);

// psi(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

// ln B(a,b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b).
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a,b), the Beta(a,b) CDF.
double reg_inc_beta(double x, double a, double b, const NumericConfig& cfg = {});

// Inverse of reg_inc_beta in x: returns x with |I_x(a,b) - p| <= 1e-10.
double inv_reg_inc_beta(double p, double a, double b, const NumericConfig& cfg = {});

// ln(1 - e^x) for x <= 0, stable at both ends.
double log1mexp(double x);

using ObjectiveFn = std::function<double(const std::vector<double>&)>;
using Matrix = std::vector<std::vector<double>>;

// Central differences with per-coordinate step fd_step * max(|theta_j|, 1).
std::vector<double> finite_diff_grad(const ObjectiveFn& f, const std::vector<double>& theta,
                                     const NumericConfig& cfg = {});
Matrix numerical_hessian(const ObjectiveFn& f, const std::vector<double>& theta,
                         const NumericConfig& cfg = {});

// Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> sym_eigenvalues(Matrix a);

// Gauss-Jordan inverse with partial pivoting; nullopt when singular.
std::optional<Matrix> invert_matrix(Matrix a);

}  // namespace unitdist::specfun
