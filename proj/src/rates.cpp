#include "illab/rates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "illab/error.hpp"

namespace illab {

Rate Rate::poly(double c, double m, Direction d) {
    require(c > 0, "poly rate: amplitude must be > 0");
    require(m >= 0, "poly rate: exponent must be >= 0");
    Rate r;
    r.kind = Kind::poly;
    r.amplitude = c;
    r.exponent = m;
    r.direction = d;
    return r;
}

Rate Rate::stretched(double C, double rho, double mu, Direction d) {
    require(C > 0 && rho > 0, "stretched rate: amplitude and coefficient must be > 0");
    require(mu > 0, "stretched rate: exponent must be > 0");
    Rate r;
    r.kind = Kind::stretched;
    r.amplitude = C;
    r.rho = rho;
    r.exponent = mu;
    r.direction = d;
    return r;
}

double Rate::log_value(double k) const {
    if (kind == Kind::poly) return std::log(amplitude) - exponent * std::log(k);
    return std::log(amplitude) - rho * std::pow(k, exponent);
}

double Rate::operator()(double k) const { return std::exp(log_value(k)); }

double ModulusBound::operator()(double t) const {
    switch (kind) {
        case Kind::holder: return std::pow(t, exponent);
        case Kind::log: return std::pow(std::abs(std::log(t)), -exponent);
        case Kind::logexp: return std::exp(-c * std::pow(std::abs(std::log(t)), exponent));
    }
    return 0.0;
}

Rate singular_to_entropy(const Rate& r) {
    Rate out = r;
    out.up_to_constants = true;
    if (r.kind == Rate::Kind::stretched) out.exponent = r.exponent / (1.0 + r.exponent);
    return out;
}

ModulusBound entropy_pair_to_modulus(const Rate& lower_i, const Rate& upper_j) {
    require(lower_i.direction == Direction::lower,
            "entropy_pair_to_modulus: first rate must be a lower bound");
    require(upper_j.direction == Direction::upper,
            "entropy_pair_to_modulus: second rate must be an upper bound");
    using K = Rate::Kind;
    ModulusBound m;
    if (lower_i.kind == K::poly && upper_j.kind == K::poly) {
        m.kind = ModulusBound::Kind::holder;
        m.exponent = lower_i.exponent / upper_j.exponent;
        require(m.exponent > 0 && m.exponent <= 1, "entropy_pair_to_modulus: Holder exponent outside (0,1]");
    } else if (lower_i.kind == K::poly && upper_j.kind == K::stretched) {
        m.kind = ModulusBound::Kind::log;
        m.exponent = lower_i.exponent / upper_j.exponent;
    } else if (lower_i.kind == K::stretched && upper_j.kind == K::stretched) {
        m.kind = ModulusBound::Kind::logexp;
        m.exponent = lower_i.exponent / upper_j.exponent;
    } else {
        throw ConfigError("entropy_pair_to_modulus: stretched lower bound against a poly upper bound gives no modulus");
    }
    return m;
}

// sigma_N(A C) <= sigma_j(A) sigma_j(C) with j = ceil(N/2) >= N/2
Rate compose_rate(const Rate& a, const Rate& c) {
    require(a.direction == Direction::upper && c.direction == Direction::upper,
            "compose_rate: both rates must be upper bounds");
    using K = Rate::Kind;
    Rate out;
    if (a.kind == K::poly && c.kind == K::poly) {
        const double m = a.exponent + c.exponent;
        out = Rate::poly(a.amplitude * c.amplitude * std::pow(2.0, m), m);
    } else if (a.kind == K::stretched && c.kind == K::stretched) {
        if (a.exponent == c.exponent) {
            const double mu = a.exponent;
            out = Rate::stretched(a.amplitude * c.amplitude, (a.rho + c.rho) * std::pow(2.0, -mu), mu);
        } else {
            const Rate& big = a.exponent > c.exponent ? a : c;
            out = Rate::stretched(a.amplitude * c.amplitude, big.rho * std::pow(2.0, -big.exponent),
                                  big.exponent);
        }
    } else {
        const Rate& s = a.kind == K::stretched ? a : c;
        out = Rate::stretched(a.amplitude * c.amplitude, s.rho * std::pow(2.0, -s.exponent), s.exponent);
    }
    out.up_to_constants = a.up_to_constants || c.up_to_constants;
    return out;
}

const std::vector<CatalogueEntry>& exponent_catalogue() {
    static const std::vector<CatalogueEntry> cat = {
        {Problem::lowreg_sobolev, "lowreg_sobolev", "m(mu+1)/mu"},
        {Problem::lowreg_calderon, "lowreg_calderon", "m(mu+2)/mu"},
        {Problem::backward_heat_modulus, "backward_heat_modulus", "ell(n+4)/(2n)"},
        {Problem::heat_time_independent, "heat_time_independent", "(n+2)/(2n)"},
        {Problem::calderon_lowreg_eps, "calderon_lowreg_eps", "n/(delta(2n+1))"},
        {Problem::calderon_analytic, "calderon_analytic", "delta(2n-1)/n"},
        {Problem::ucp_boundary_a, "ucp_boundary_a", "2(n-1)/(n+1)"},
        {Problem::ucp_boundary_b, "ucp_boundary_b", "(n-1)/n"},
        {Problem::radon_limited, "radon_limited", "delta(2mu+1)/2"},
        {Problem::control_cost_eps, "control_cost_eps", "(1/delta) n/(n+2)"},
        {Problem::carleman_lower, "carleman_lower", "mu*s"},
        {Problem::dn_smoothing, "dn_smoothing", "delta(2 sigma dim_N + 1)/dim_M"},
        {Problem::sobolev_smoothing, "sobolev_smoothing", "delta(sigma dim_N + 1)/dim_M"},
    };
    return cat;
}

Problem problem_from_name(const std::string& name) {
    for (const auto& e : exponent_catalogue())
        if (name == e.name) return e.problem;
    throw ConfigError("unknown exponent problem '" + name + "'");
}

double theorem_exponent(Problem p, const ExponentParams& q) {
    auto need = [](bool ok, const char* what) { require(ok, std::string("theorem_exponent: ") + what); };
    switch (p) {
        case Problem::lowreg_sobolev:
            need(q.m > 0 && q.mu > 0, "needs m > 0, mu > 0");
            return q.m * (q.mu + 1) / q.mu;
        case Problem::lowreg_calderon:
            need(q.m > 0 && q.mu > 0, "needs m > 0, mu > 0");
            return q.m * (q.mu + 2) / q.mu;
        case Problem::backward_heat_modulus:
            need(q.n >= 1 && q.ell > 0, "needs n >= 1, ell > 0");
            return q.ell * (q.n + 4) / (2 * q.n);
        case Problem::heat_time_independent:
            need(q.n >= 1, "needs n >= 1");
            return (q.n + 2) / (2 * q.n);
        case Problem::calderon_lowreg_eps:
            need(q.n >= 1 && q.delta > 0, "needs n >= 1, delta > 0");
            return q.n / (q.delta * (2 * q.n + 1));
        case Problem::calderon_analytic:
            need(q.n >= 1 && q.delta > 0, "needs n >= 1, delta > 0");
            return q.delta * (2 * q.n - 1) / q.n;
        case Problem::ucp_boundary_a:
            need(q.n >= 2, "needs n >= 2");
            return 2 * (q.n - 1) / (q.n + 1);
        case Problem::ucp_boundary_b:
            need(q.n >= 2, "needs n >= 2");
            return (q.n - 1) / q.n;
        case Problem::radon_limited:
            need(q.delta > 0 && q.mu > 0, "needs delta > 0, mu > 0");
            return q.delta * (2 * q.mu + 1) / 2;
        case Problem::control_cost_eps:
            need(q.n >= 1 && q.delta > 0, "needs n >= 1, delta > 0");
            return (1 / q.delta) * q.n / (q.n + 2);
        case Problem::carleman_lower:
            need(q.mu > 0 && q.s > 0, "needs mu > 0, s > 0");
            return q.mu * q.s;
        case Problem::dn_smoothing:
            need(q.delta > 0 && q.sigma >= 1 && q.dim_M >= 1 && q.dim_N >= 1,
                 "needs delta > 0, sigma >= 1, dim_M, dim_N >= 1");
            return q.delta * (2 * q.sigma * q.dim_N + 1) / q.dim_M;
        case Problem::sobolev_smoothing:
            need(q.delta > 0 && q.sigma >= 1 && q.dim_M >= 1 && q.dim_N >= 1,
                 "needs delta > 0, sigma >= 1, dim_M, dim_N >= 1");
            return q.delta * (q.sigma * q.dim_N + 1) / q.dim_M;
    }
    throw ConfigError("theorem_exponent: unknown problem");
}

StepRate heat_step(double n, double delta, double C) {
    require(n >= 1 && delta > 0 && C > 0, "heat_step: needs n >= 1, delta > 0, C > 0");
    return {C, delta / n, delta / 2};
}

StepRate ucp_step(double n, double delta, double C) {
    require(n >= 2 && delta > 0 && C > 0, "ucp_step: needs n >= 2, delta > 0, C > 0");
    return {C, delta / (n - 1), delta};
}

double iterate_log_bound(const StepRate& s, double k, long N) {
    const double n = double(N);
    return n * (std::log(s.C) - s.a * std::log(k / n) + s.b * std::log(n));
}

long optimal_steps(const StepRate& s, double k, long max_steps) {
    require(s.a > 0 && s.b > 0 && s.C > 0, "iterate_composition: needs a, b, C > 0");
    long hi = std::max(1L, long(std::floor(k)));
    if (max_steps > 0) hi = std::min(hi, max_steps);
    auto f = [&](double x) {
        const double n = std::exp(x);
        return n * (std::log(s.C) - s.a * std::log(k / n) + s.b * x);
    };
    double lo = 0.0, up = std::log(double(hi));
    const double g = (std::sqrt(5.0) - 1) / 2;
    double x1 = up - g * (up - lo), x2 = lo + g * (up - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && up - lo > 1e-12; ++it) {
        if (f1 <= f2) {
            up = x2;
            x2 = x1;
            f2 = f1;
            x1 = up - g * (up - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (up - lo);
            f2 = f(x2);
        }
    }
    const long guess = std::lround(std::exp(0.5 * (lo + up)));
    long best = std::clamp(guess, 1L, hi);
    double bestv = iterate_log_bound(s, k, best);
    for (long N = std::max(1L, guess - 2); N <= std::min(hi, guess + 2); ++N) {
        const double v = iterate_log_bound(s, k, N);
        if (v < bestv) {
            bestv = v;
            best = N;
        }
    }
    return best;
}

IterationResult iterate_composition(const StepRate& s, int budget_exponent, long max_steps) {
    require(s.a > 0 && s.b > 0 && s.C > 0, "iterate_composition: needs a, b, C > 0");
    require(budget_exponent >= 7 && budget_exponent <= 40, "iterate_composition: budget exponent in [7, 40]");
    IterationResult res;
    for (int e = 6; e <= budget_exponent; ++e) {
        const double k = std::ldexp(1.0, e);
        const long N = optimal_steps(s, k, max_steps);
        res.table.push_back({k, N, iterate_log_bound(s, k, N)});
    }
    if (max_steps == 1) {
        res.rate = Rate::poly(s.C, s.a);
        return res;
    }
    // least squares of log(-log bound) against log k
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& p : res.table) {
        if (p.log_bound >= 0) continue;
        const double x = std::log(p.k), y = std::log(-p.log_bound);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) throw NumericalError("iterate_composition: bound never drops below 1 on the k grid");
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / cnt;
    res.rate = Rate::stretched(1.0, std::exp(icpt), slope);
    res.rate.up_to_constants = true;
    return res;
}

std::string to_string(const Rate& r) {
    std::ostringstream os;
    os.precision(6);
    if (r.kind == Rate::Kind::poly)
        os << "poly(c=" << r.amplitude << ", m=" << r.exponent << ")";
    else
        os << "stretched(C=" << r.amplitude << ", rho=" << r.rho << ", mu=" << r.exponent << ")";
    os << (r.direction == Direction::upper ? " upper" : " lower");
    return os.str();
}

std::string to_string(const ModulusBound& m) {
    std::ostringstream os;
    os.precision(6);
    switch (m.kind) {
        case ModulusBound::Kind::holder: os << "holder(alpha=" << m.exponent << ")"; break;
        case ModulusBound::Kind::log: os << "log(mu=" << m.exponent << ")"; break;
        case ModulusBound::Kind::logexp: os << "logexp(c=" << m.c << ", beta=" << m.exponent << ")"; break;
    }
    return os.str();
}

}  // namespace illab
