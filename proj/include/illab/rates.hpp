#pragma once

#include <string>
#include <vector>

namespace illab {

enum class Direction { upper, lower };

// poly: c * k^(-m);  stretched: C * exp(-rho * k^mu)
struct Rate {
    enum class Kind { poly, stretched } kind = Kind::poly;
    double amplitude = 1.0;
    double rho = 1.0;       // stretched only
    double exponent = 1.0;  // m for poly, mu for stretched
    Direction direction = Direction::upper;
    bool up_to_constants = false;

    static Rate poly(double c, double m, Direction d = Direction::upper);
    static Rate stretched(double C, double rho, double mu, Direction d = Direction::upper);
    double operator()(double k) const;
    double log_value(double k) const;
};

// holder: t^alpha;  log: |log t|^(-mu);  logexp: exp(-c |log t|^beta)
struct ModulusBound {
    enum class Kind { holder, log, logexp } kind = Kind::holder;
    double exponent = 1.0;  // alpha, mu or beta
    double c = 1.0;         // logexp only
    double operator()(double t) const;
};

Rate singular_to_entropy(const Rate& r);
ModulusBound entropy_pair_to_modulus(const Rate& lower_i, const Rate& upper_j);
Rate compose_rate(const Rate& a, const Rate& c);

enum class Problem {
    lowreg_sobolev,
    lowreg_calderon,
    backward_heat_modulus,
    heat_time_independent,
    calderon_lowreg_eps,
    calderon_analytic,
    ucp_boundary_a,
    ucp_boundary_b,
    radon_limited,
    control_cost_eps,
    carleman_lower,
    dn_smoothing,
    sobolev_smoothing,
};

struct ExponentParams {
    double n = 1, delta = 1, ell = 1, mu = 1, m = 1, sigma = 1, s = 1;
    double dim_M = 1, dim_N = 1;
};

struct CatalogueEntry {
    Problem problem;
    const char* name;
    const char* formula;
};

const std::vector<CatalogueEntry>& exponent_catalogue();
Problem problem_from_name(const std::string& name);
double theorem_exponent(Problem p, const ExponentParams& q);

// One step of a self-composition: sigma_k <= C * k^(-a) * t^(-b) at step length t = 1/N.
struct StepRate {
    double C = 1.0;
    double a = 1.0;
    double b = 0.5;
};

StepRate heat_step(double n, double delta = 1.0, double C = 1.0);
StepRate ucp_step(double n, double delta = 1.0, double C = 1.0);

struct IterationPoint {
    double k;
    long N;
    double log_bound;
};

struct IterationResult {
    Rate rate;  // fitted stretched rate, or the step rate itself when max_steps == 1
    std::vector<IterationPoint> table;
};

// log of the N-fold bound N*(log C - a*log(k/N) + b*log N)
double iterate_log_bound(const StepRate& s, double k, long N);
long optimal_steps(const StepRate& s, double k, long max_steps = -1);

// Fits the stretched exponent of the optimized bound on k = 2^6 .. 2^budget_exponent.
IterationResult iterate_composition(const StepRate& s, int budget_exponent = 14, long max_steps = -1);

std::string to_string(const Rate& r);
std::string to_string(const ModulusBound& m);

}  // namespace illab
