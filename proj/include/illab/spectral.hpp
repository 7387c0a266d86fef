#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "illab/seqspace.hpp"

namespace illab {

// Discretized forward map. When `factors` is non-empty the operator is also
// available in product form: matrix == factors.back() * ... * factors.front(),
// which lets the SVD keep relative accuracy for strongly graded spectra.
struct WeightedOperator {
    Eigen::MatrixXd matrix;  // codomain-dim x domain-dim
    WeightSequence domain;
    WeightSequence codomain;
    std::string label;
    std::vector<Eigen::MatrixXd> factors;

    Eigen::Index rows() const { return matrix.rows(); }
    Eigen::Index cols() const { return matrix.cols(); }
    // diag(codomain) * matrix * diag(domain)^-1
    Eigen::MatrixXd weighted() const;
    void validate() const;
};

WeightedOperator make_operator(Eigen::MatrixXd m, std::string label = "matrix");

struct Fit {
    std::string model;  // "poly" or "stretched"
    double exponent = 0;
    double coefficient = 0;  // poly: log-amplitude slope form c k^-m -> c; stretched: rho
    double amplitude = 0;
    int k0 = 0, k1 = 0;  // 1-based inclusive
    double residual = 0;  // rms of log residuals
};

struct CarlBracket {
    int N = 1;
    double lo = 0;
    double hi = 0;
};

struct SpectrumReport {
    std::vector<double> sigmas;      // descending
    std::vector<double> log_sigmas;  // natural logs, -inf for exact zeros
    int resolved = 0;                // leading count that is numerically resolved
    std::string method;              // "dense" or "graded-product"
    std::optional<Fit> fit;
    std::vector<CarlBracket> carl;
    Eigen::MatrixXd U, V;  // filled when vectors are requested
};

SpectrumReport weighted_svd(const WeightedOperator& op, bool vectors = false);

// Dense singular values (descending) of a plain matrix.
std::vector<double> singular_values(const Eigen::MatrixXd& m);

// SVD of F_n ... F_1 (factors[0] applied first) in scaled arithmetic.
SpectrumReport graded_product_svd(const std::vector<Eigen::MatrixXd>& factors, bool vectors = false);

CarlBracket carl_sandwich(const std::vector<double>& sigmas, int N, bool real_scalars = false);

Fit fit_decay(const std::vector<double>& sigmas, int k0, int k1, const std::string& model);
Fit fit_log_decay(const std::vector<double>& log_sigmas, int k0, int k1, const std::string& model);

struct WeylViolation {
    std::string kind;  // "sum" or "product"
    int j = 0, k = 0;
    double lhs = 0, rhs = 0;
};

// sigma_{j+k-1}(s) <= sa_j + sb_k (additive) or sa_j * sb_k, all j, k.
std::vector<WeylViolation> weyl_violations(const std::vector<double>& sa, const std::vector<double>& sb,
                                           const std::vector<double>& s, bool additive, double tol = 1e-10);

// Sum inequality when shapes agree, product inequality for A * B when composable.
std::vector<WeylViolation> weyl_checks(const WeightedOperator& A, const WeightedOperator& B,
                                       double tol = 1e-10);

}  // namespace illab
