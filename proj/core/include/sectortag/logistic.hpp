#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sectortag/dataset.hpp"

namespace sectortag {

struct LogisticParams {
    double l2_lambda = 1.0; // coefficients only; the intercept is unpenalized
    size_t max_iter = 300;
    double tol = 1e-5;      // gradient max-norm
};

struct LogisticModel {
    std::vector<double> beta;
    double intercept = 0.0;
    bool converged = false;
    size_t iterations = 0;
    double final_objective = 0.0;
};

/// L2-regularized negative log-likelihood:
///   L(b) = sum_i [ -y_i z_i + log(1 + e^{z_i}) ] + (lambda/2) ||beta||^2
/// with z_i = intercept + x_i . beta. Exposed for the finite-difference tests.
double logistic_objective(const DataMatrix& X, std::span<const uint8_t> y,
                          std::span<const double> beta, double intercept, double l2_lambda);

/// Gradient of the objective; grad_out has size p+1 with the intercept last.
void logistic_gradient(const DataMatrix& X, std::span<const uint8_t> y,
                       std::span<const double> beta, double intercept, double l2_lambda,
                       std::span<double> grad_out);

/// Deterministic gradient descent with Armijo backtracking from a zero start.
/// Non-convergence within max_iter is reported via the model's flag, not an
/// error.
LogisticModel fit_logistic(const DataMatrix& X, std::span<const uint8_t> y,
                           const LogisticParams& params);

double predict_score(const LogisticModel& model, const FeatureVector& x);

} // namespace sectortag
