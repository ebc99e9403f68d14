#include "sectortag/logistic.hpp"

#include <algorithm>
#include <cmath>

#include "sectortag/errors.hpp"
#include "sectortag/forest.hpp" // sigmoid

namespace sectortag {

namespace {

void raw_scores(const DataMatrix& X, std::span<const double> beta, double intercept,
                std::vector<double>& z) {
    size_t n = X.rows();
    z.resize(n);
    for (size_t i = 0; i < n; ++i) {
        auto cols = X.row_cols(i);
        auto vals = X.row_vals(i);
        double dot = intercept;
        for (size_t e = 0; e < cols.size(); ++e) dot += vals[e] * beta[cols[e]];
        z[i] = dot;
    }
}

double objective_from_scores(std::span<const uint8_t> y, const std::vector<double>& z,
                             std::span<const double> beta, double l2_lambda) {
    double loss = 0.0;
    for (size_t i = 0; i < y.size(); ++i) {
        double zi = z[i];
        loss += std::max(zi, 0.0) - static_cast<double>(y[i]) * zi +
                std::log1p(std::exp(-std::abs(zi)));
    }
    double penalty = 0.0;
    for (double b : beta) penalty += b * b;
    return loss + 0.5 * l2_lambda * penalty;
}

} // namespace

double logistic_objective(const DataMatrix& X, std::span<const uint8_t> y,
                          std::span<const double> beta, double intercept, double l2_lambda) {
    std::vector<double> z;
    raw_scores(X, beta, intercept, z);
    return objective_from_scores(y, z, beta, l2_lambda);
}

void logistic_gradient(const DataMatrix& X, std::span<const uint8_t> y,
                       std::span<const double> beta, double intercept, double l2_lambda,
                       std::span<double> grad_out) {
    size_t p = beta.size();
    std::fill(grad_out.begin(), grad_out.end(), 0.0);
    std::vector<double> z;
    raw_scores(X, beta, intercept, z);
    for (size_t i = 0; i < X.rows(); ++i) {
        double err = sigmoid(z[i]) - static_cast<double>(y[i]);
        auto cols = X.row_cols(i);
        auto vals = X.row_vals(i);
        for (size_t e = 0; e < cols.size(); ++e) grad_out[cols[e]] += err * vals[e];
        grad_out[p] += err;
    }
    for (size_t j = 0; j < p; ++j) grad_out[j] += l2_lambda * beta[j];
}

LogisticModel fit_logistic(const DataMatrix& X, std::span<const uint8_t> y,
                           const LogisticParams& params) {
    if (X.rows() == 0) throw DataError("fit_logistic: empty input");
    if (y.size() != X.rows()) throw DataError("fit_logistic: label size mismatch");
    size_t pos = 0;
    for (uint8_t v : y) pos += v;
    if (pos == 0 || pos == y.size())
        throw DataError("fit_logistic: both classes must be present in the labels");

    size_t p = X.n_features;
    LogisticModel model;
    model.beta.assign(p, 0.0);

    std::vector<double> grad(p + 1, 0.0);
    std::vector<double> cand_beta(p, 0.0);
    std::vector<double> z;
    constexpr double kArmijo = 1e-4;

    raw_scores(X, model.beta, model.intercept, z);
    double obj = objective_from_scores(y, z, model.beta, params.l2_lambda);
    double step = 1.0;

    size_t iter = 0;
    for (; iter < params.max_iter; ++iter) {
        logistic_gradient(X, y, model.beta, model.intercept, params.l2_lambda, grad);
        double gmax = 0.0, gsq = 0.0;
        for (double g : grad) {
            gmax = std::max(gmax, std::abs(g));
            gsq += g * g;
        }
        if (gmax <= params.tol) {
            model.converged = true;
            break;
        }

        step = std::min(step * 2.0, 1e6);
        bool accepted = false;
        for (int halvings = 0; halvings < 60; ++halvings) {
            for (size_t j = 0; j < p; ++j) cand_beta[j] = model.beta[j] - step * grad[j];
            double cand_intercept = model.intercept - step * grad[p];
            raw_scores(X, cand_beta, cand_intercept, z);
            double cand_obj = objective_from_scores(y, z, cand_beta, params.l2_lambda);
            if (cand_obj <= obj - kArmijo * step * gsq) {
                model.beta.swap(cand_beta);
                model.intercept = cand_intercept;
                obj = cand_obj;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break; // step underflow; gradient is as good as flat
    }
    model.iterations = iter;
    model.final_objective = obj;
    return model;
}

double predict_score(const LogisticModel& model, const FeatureVector& x) {
    if (!x.entries.empty() && x.entries.back().first >= model.beta.size())
        throw DataError("feature vector does not match the model's feature dimension");
    double z = model.intercept;
    for (const auto& [col, v] : x.entries) z += v * model.beta[col];
    return sigmoid(z);
}

} // namespace sectortag
