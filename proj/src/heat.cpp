#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "illab/error.hpp"
#include "illab/forward_ops.hpp"

namespace illab {

Coefficient constant_coefficient(double c) {
    require(c > 0, "constant coefficient must be > 0");
    std::ostringstream os;
    os << "constant(" << c << ")";
    return {os.str(), [c](double, double) { return c; }, std::min(c, 1.0 / c), true};
}

Coefficient oscillating_coefficient() {
    return {"2+sin(2pi x)cos(2pi t)",
            [](double x, double t) {
                return 2.0 + std::sin(2 * std::numbers::pi * x) * std::cos(2 * std::numbers::pi * t);
            },
            1.0 / 3.0, false};
}

Coefficient piecewise_coefficient(double left, double right, double jump_at) {
    require(left > 0 && right > 0, "piecewise coefficient values must be > 0");
    const double lo = std::min(left, right), hi = std::max(left, right);
    std::ostringstream os;
    os << "piecewise(" << left << "," << right << "," << jump_at << ")";
    return {os.str(), [=](double x, double) { return x < jump_at ? left : right; }, std::min(lo, 1.0 / hi), true};
}

Coefficient tabulated_coefficient(std::vector<std::vector<double>> values, double lambda) {
    require(values.size() >= 1 && values[0].size() >= 2, "tabulated coefficient needs at least 1 x 2 values");
    for (const auto& row : values) require(row.size() == values[0].size(), "tabulated coefficient rows differ");
    const bool ti = values.size() == 1;
    auto v = std::make_shared<std::vector<std::vector<double>>>(std::move(values));
    auto f = [v](double x, double t) {
        const auto& g = *v;
        const int nt = int(g.size()), nx = int(g[0].size());
        auto locate = [](double u, int n, int& i, double& w) {
            if (n == 1) {
                i = 0;
                w = 0;
                return;
            }
            const double p = std::clamp(u, 0.0, 1.0) * (n - 1);
            i = std::min(int(p), n - 2);
            w = p - i;
        };
        int ix, it;
        double wx, wt;
        locate(x, nx, ix, wx);
        locate(t, nt, it, wt);
        const int it2 = nt == 1 ? 0 : it + 1;
        const double a0 = (1 - wx) * g[it][ix] + wx * g[it][ix + 1];
        const double a1 = (1 - wx) * g[it2][ix] + wx * g[it2][ix + 1];
        return (1 - wt) * a0 + wt * a1;
    };
    return {"tabulated", f, lambda, ti};
}

HeatConfig heat_config(int n_x, int n_t, Coefficient c) {
    HeatConfig cfg;
    cfg.n_x = n_x;
    cfg.h = 1.0 / (n_x + 1);
    cfg.n_t = n_t;
    cfg.dt = n_t > 0 ? 1.0 / n_t : 0.0;
    cfg.coeff = std::move(c);
    return cfg;
}

static void check_heat(const HeatConfig& cfg) {
    require(cfg.n_x >= 1, "heat: n_x must be >= 1");
    require(cfg.h > 0 && std::abs(cfg.h * (cfg.n_x + 1) - 1.0) < 1e-12, "heat: h must equal 1/(n_x+1)");
    require(cfg.n_t >= 0, "heat: n_t must be >= 0");
    if (cfg.n_t > 0)
        require(cfg.dt > 0 && std::abs(cfg.dt * cfg.n_t - 1.0) < 1e-12, "heat: n_t * dt must equal 1");
    require(cfg.coeff.lambda > 0 && cfg.coeff.lambda <= 1, "heat: ellipticity constant must lie in (0, 1]");
    require(bool(cfg.coeff.a), "heat: missing coefficient function");
}

Eigen::MatrixXd heat_generator(const HeatConfig& cfg, double t) {
    const int n = cfg.n_x;
    const double h = cfg.h, lam = cfg.coeff.lambda;
    Eigen::VectorXd a(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double x = (i + 0.5) * h;
        a(i) = cfg.coeff.a(x, t);
        if (!(a(i) >= lam * (1 - 1e-12) && a(i) <= (1 + 1e-12) / lam)) {
            std::ostringstream os;
            os << "heat: coefficient " << a(i) << " at (x=" << x << ", t=" << t << ") violates ellipticity bounds ["
               << lam << ", " << 1 / lam << "]";
            throw ConfigError(os.str());
        }
    }
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    const double ih2 = 1.0 / (h * h);
    for (int i = 0; i < n; ++i) {
        A(i, i) = (a(i) + a(i + 1)) * ih2;
        if (i + 1 < n) A(i, i + 1) = A(i + 1, i) = -a(i + 1) * ih2;
    }
    return A;
}

std::vector<double> dirichlet_laplacian_eigenvalues(int n_x, double h) {
    std::vector<double> ev(n_x);
    for (int k = 1; k <= n_x; ++k) {
        const double s = std::sin(k * std::numbers::pi * h / 2);
        ev[k - 1] = 4.0 / (h * h) * s * s;
    }
    return ev;
}

WeightedOperator heat_propagator(const HeatConfig& cfg) {
    check_heat(cfg);
    const int n = cfg.n_x;
    WeightedOperator op;
    op.domain = unit_weights(n);
    op.codomain = unit_weights(n);
    std::ostringstream os;
    os << "heat_propagator(n_x=" << n << ", n_t=" << cfg.n_t << ", a=" << cfg.coeff.name << ")";
    op.label = os.str();
    op.matrix = Eigen::MatrixXd::Identity(n, n);
    if (cfg.n_t == 0) return op;
    Eigen::MatrixXd step;
    for (int m = 0; m < cfg.n_t; ++m) {
        if (m == 0 || !cfg.coeff.time_independent) {
            Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n) + cfg.dt * heat_generator(cfg, (m + 1) * cfg.dt);
            step = B.llt().solve(Eigen::MatrixXd::Identity(n, n));
            step = 0.5 * (step + step.transpose());
        }
        op.factors.push_back(step);
        op.matrix = step * op.matrix;
    }
    return op;
}

}  // namespace illab
