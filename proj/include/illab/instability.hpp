#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "illab/seqspace.hpp"
#include "illab/spectral.hpp"

namespace illab {

using Evaluator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// K = { x : sum kappa_j^2 x_j^2 <= radius^2 }, distances in plain l2 of the coefficients.
struct WeightedBall {
    WeightSequence kappa;
    double radius = 1.0;

    double norm(const Eigen::VectorXd& x) const;
    bool contains(const Eigen::VectorXd& x, double rtol = 1e-12) const;
};

struct InstabilityCertificate {
    Eigen::VectorXd x1, x2;
    double domain_distance = 0;
    double image_distance = 0;
    double eps = 0;
    double delta = 0;
    std::vector<std::pair<double, double>> modulus_curve;  // (t, omega lower bound)
    std::string provenance;
};

// Throws NumericalError when a postcondition does not hold.
void verify_certificate(const InstabilityCertificate& c, const Evaluator& F, const WeightedBall& K);

struct PigeonholeOptions {
    int sample_budget = 10000;
    std::optional<double> op_norm;  // estimated from the samples when absent
    int max_halvings = 200;
};

struct PigeonholeStats {
    int dimension = 0;       // active coordinates D
    int candidates = 0;      // lattice points inside K
    int discrete_size = 0;   // |X_eps|
    std::vector<std::pair<double, int>> nets;  // (delta, net size) per tried delta
};

struct WitnessResult {
    std::optional<InstabilityCertificate> certificate;
    PigeonholeStats stats;
    std::string diagnostic;
};

WitnessResult pigeonhole_witness(const Evaluator& F, const WeightedBall& K, double eps,
                                 const PigeonholeOptions& opt = {});

// Evaluator of op in X-orthonormal coordinates: y = diag(domain) x, image norm is the codomain norm.
Evaluator weighted_evaluator(const WeightedOperator& op);

int spectral_cutoff(const WeightSequence& kappa, double eps);

// Witness pair +-u, u in X-orthonormal coordinates of op.
InstabilityCertificate spectral_witness(const WeightedOperator& op, const WeightSequence& kappa, double eps);

struct Eta {
    std::string name;
    std::function<double(double)> f;
};

Eta eta_power(double alpha, double c = 1.0);
Eta eta_identity();
Eta eta_log(double mu, double c = 1.0);

struct StabilityCheck {
    bool pass = true;
    int first_violation = 0;  // 1-based, 0 when pass
    double lhs = 0, rhs = 0;  // at the violation
};

// Throws ConfigError if eta is not increasing, concave, with eta(t)/t nonincreasing on a
// 64-point log grid spanning the relevant t range.
StabilityCheck holder_stability_check(const std::vector<double>& sigmas, const WeightSequence& kappa,
                                      const Eta& eta, int J);

struct BruteForceStability {
    int samples = 0;
    int violations = 0;
    double worst_ratio = 0;  // max ||f||^2 / eta(||Af||^2)
};

BruteForceStability holder_stability_bruteforce(const std::vector<double>& sigmas, const WeightSequence& kappa,
                                                const Eta& eta, int J, int samples, std::uint64_t seed);

// log N(x) = c * x^-p (power) or c * |log x|^p (logpower)
struct CountFamily {
    enum class Kind { power, logpower } kind = Kind::power;
    double c = 1;
    double p = 1;
    double log_count(double x) const;
};

std::vector<std::pair<double, double>> modulus_lower_curve(const CountFamily& f, const CountFamily& g,
                                                           const std::vector<double>& t_grid,
                                                           double diameter = 2.0);

double hs_embedding_bound(const WeightSequence& alpha, const WeightSequence& beta, int M, int N);

// g(t) = t^p (power, p = delta/m) or (log(t)/beta)^s (logpower)
struct InterpolationFamily {
    enum class Kind { power, logpower } kind = Kind::power;
    double p = 1;
    double s = 1, beta = 1;
    double g(double t) const;
};

std::vector<std::pair<double, double>> interpolation_triple_curve(const InterpolationFamily& g, double op_norm_bound,
                                                                  const std::vector<double>& inclusion_sigmas);

const char* to_string(CountFamily::Kind k);
const char* to_string(InterpolationFamily::Kind k);

}  // namespace illab
