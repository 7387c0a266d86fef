#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <numbers>
#include <sstream>

#include "illab/error.hpp"
#include "illab/forward_ops.hpp"

namespace illab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Grid {
    int nr, nt;
    double h, dth;
    double r(int i) const { return i * h; }
    double th(int t) const { return t * dth; }
    // ring node (i, t), i = 1..nr-1; center is index 0
    int id(int i, int t) const { return 1 + (i - 1) * nt + ((t % nt) + nt) % nt; }
    int unknowns() const { return 1 + (nr - 1) * nt; }
};

double basis(int m, bool sine, double th) {
    if (m == 0) return 1.0 / std::sqrt(2 * kPi);
    return (sine ? std::sin(m * th) : std::cos(m * th)) / std::sqrt(kPi);
}

struct Mode {
    int m;
    bool sine;
};

std::vector<Mode> basis_modes(int n_modes) {
    std::vector<Mode> v{{0, false}};
    for (int m = 1; m <= n_modes; ++m) {
        v.push_back({m, false});
        v.push_back({m, true});
    }
    return v;
}

std::vector<double> simpson_weights(int nr, double h) {
    std::vector<double> w(nr + 1);
    for (int i = 0; i <= nr; ++i) w[i] = (i == 0 || i == nr) ? 1 : (i % 2 ? 4 : 2);
    for (double& x : w) x *= h / 3;
    return w;
}

void check_cfg(const DtnConfig& cfg) {
    require(cfg.n_modes >= 0, "disk_dtn: n_modes must be >= 0");
    require(cfg.n_r >= 4 && cfg.n_r % 2 == 0, "disk_dtn: n_r must be even and >= 4");
    require(cfg.n_theta >= 2 * cfg.n_modes + 2, "disk_dtn: n_theta must exceed twice the mode count");
    require(bool(cfg.q.q), "disk_dtn: missing potential");
    require(cfg.q.support <= 0.5 + 1e-12, "disk_dtn: potential support radius must be <= 1/2");
}

// Symmetric tridiagonal solve (Thomas); returns min |pivot| / max |diag|.
double thomas(std::vector<double> diag, std::vector<double> off, std::vector<double>& rhs) {
    const int n = int(diag.size());
    double dmax = 0;
    for (double d : diag) dmax = std::max(dmax, std::abs(d));
    double pmin = std::abs(diag[0]);
    for (int i = 1; i < n; ++i) {
        const double f = off[i - 1] / diag[i - 1];
        diag[i] -= f * off[i - 1];
        rhs[i] -= f * rhs[i - 1];
        pmin = std::min(pmin, std::abs(diag[i]));
    }
    rhs[n - 1] /= diag[n - 1];
    for (int i = n - 2; i >= 0; --i) rhs[i] = (rhs[i] - off[i] * rhs[i + 1]) / diag[i];
    return dmax > 0 ? pmin / dmax : 0;
}

// Radial mode-m solve of -(1/r)(r w')' + (m^2/r^2 + q) w = f on the grid, w(1) = bc.
// Returns w_0..w_nr; rows scaled by the cell measure so the system is symmetric.
std::vector<double> radial_solve(int m, const std::vector<double>& q, const std::vector<double>& f, double bc,
                                 double h, double& pivot_ratio) {
    const int nr = int(q.size()) - 1;
    const int i0 = m == 0 ? 0 : 1;
    const int n = nr - i0;
    std::vector<double> diag(n), off(std::max(n - 1, 0)), rhs(n);
    for (int i = i0; i < nr; ++i) {
        const int row = i - i0;
        if (i == 0) {
            diag[row] = 0.5 + h * h / 8 * q[0];
            rhs[row] = h * h / 8 * f[0];
            if (n > 1) off[row] = -0.5;
            continue;
        }
        const double r = i * h, rp = (i + 0.5) * h, rm = (i - 0.5) * h;
        diag[row] = (rp + rm) / h + h * r * (double(m) * m / (r * r) + q[i]);
        rhs[row] = h * r * f[i];
        if (i + 1 < nr) off[row] = -rp / h;
        if (i + 1 == nr) rhs[row] += rp / h * bc;
    }
    pivot_ratio = thomas(diag, off, rhs);
    std::vector<double> w(nr + 1, 0.0);
    for (int i = i0; i < nr; ++i) w[i] = rhs[i - i0];
    w[nr] = bc;
    return w;
}

std::string label_of(const DtnConfig& cfg, const char* what) {
    std::ostringstream os;
    os << what << "(q=" << cfg.q.name << ", n_r=" << cfg.n_r << ", n_theta=" << cfg.n_theta
       << ", modes=" << cfg.n_modes << ")";
    return os.str();
}

Eigen::SparseMatrix<double> assemble_2d(const Grid& g, const std::vector<double>& qc,
                                        const std::vector<std::vector<double>>& q) {
    std::vector<Eigen::Triplet<double>> tr;
    const int N = g.unknowns();
    tr.reserve(std::size_t(N) * 5);
    const double h = g.h, dth = g.dth;
    tr.emplace_back(0, 0, kPi + kPi * h * h / 4 * qc[0]);
    for (int i = 1; i < g.nr; ++i) {
        const double r = g.r(i), rp = (i + 0.5) * h, rm = (i - 0.5) * h;
        for (int t = 0; t < g.nt; ++t) {
            const int me = g.id(i, t);
            double d = dth * (rp + rm) / h + 2 * h / (r * dth) + r * h * dth * q[i][t];
            tr.emplace_back(me, me, d);
            const double ca = -h / (r * dth);
            tr.emplace_back(me, g.id(i, t + 1), ca);
            tr.emplace_back(me, g.id(i, t - 1), ca);
            if (i == 1) {
                tr.emplace_back(me, 0, -dth * rm / h);
                tr.emplace_back(0, me, -dth * rm / h);
            } else {
                tr.emplace_back(me, g.id(i - 1, t), -dth * rm / h);
            }
            if (i + 1 < g.nr) tr.emplace_back(me, g.id(i + 1, t), -dth * rp / h);
        }
    }
    Eigen::SparseMatrix<double> L(N, N);
    L.setFromTriplets(tr.begin(), tr.end());
    return L;
}

}  // namespace

std::vector<int> dtn_mode_numbers(int n_modes) {
    std::vector<int> v;
    for (const auto& m : basis_modes(n_modes)) v.push_back(m.m);
    return v;
}

Potential zero_potential() {
    return {"zero", [](double, double) { return 0.0; }, true, 0.0, 0.0};
}

Potential radial_bump(double amp, double R) {
    require(R > 0 && R <= 0.5, "radial_bump: support radius must lie in (0, 1/2]");
    std::ostringstream os;
    os << "radial_bump(amp=" << amp << ", R=" << R << ")";
    auto f = [amp, R](double r, double) {
        if (r >= R) return 0.0;
        const double c = std::cos(kPi * r / (2 * R));
        return amp * c * c;
    };
    return {os.str(), f, true, R, std::abs(amp)};
}

Potential shifted_bump(double amp, double R, double cx, double cy) {
    require(R > 0 && std::hypot(cx, cy) + R <= 0.5 + 1e-12, "shifted_bump: support must stay inside B_{1/2}");
    std::ostringstream os;
    os << "shifted_bump(amp=" << amp << ", R=" << R << ", c=(" << cx << "," << cy << "))";
    auto f = [=](double r, double th) {
        const double d = std::hypot(r * std::cos(th) - cx, r * std::sin(th) - cy);
        if (d >= R) return 0.0;
        const double c = std::cos(kPi * d / (2 * R));
        return amp * c * c;
    };
    return {os.str(), f, false, std::hypot(cx, cy) + R, std::abs(amp)};
}

DtnResult disk_dtn(const DtnConfig& cfg) {
    check_cfg(cfg);
    const Grid g{cfg.n_r, cfg.n_theta, 1.0 / cfg.n_r, 2 * kPi / cfg.n_theta};
    const auto modes = basis_modes(cfg.n_modes);
    const int J = int(modes.size());
    const auto S = simpson_weights(g.nr, g.h);

    // potential on the polar grid; q[i][t], center separately
    std::vector<std::vector<double>> q(g.nr + 1, std::vector<double>(g.nt, 0.0));
    std::vector<double> qc{cfg.q.q(0.0, 0.0)};
    for (int i = 1; i <= g.nr; ++i)
        for (int t = 0; t < g.nt; ++t) q[i][t] = cfg.q.q(g.r(i), g.th(t));
    for (int t = 0; t < g.nt; ++t) q[0][t] = qc[0];
    double qmax = 0;
    for (const auto& row : q)
        for (double x : row) qmax = std::max(qmax, std::abs(x));
    require(qmax <= cfg.q.bound * (1 + 1e-12) + 1e-300, "disk_dtn: potential exceeds its declared sup bound");
    for (int i = 0; i <= g.nr; ++i)
        if (g.r(i) > cfg.q.support + 1e-12)
            for (int t = 0; t < g.nt; ++t)
                require(q[i][t] == 0.0, "disk_dtn: potential is nonzero outside its declared support");

    // v0 and the correction w per input mode, tabulated on (i, t) as separable or full fields
    std::vector<std::vector<double>> phi(J, std::vector<double>(g.nt));
    for (int j = 0; j < J; ++j)
        for (int t = 0; t < g.nt; ++t) phi[j][t] = basis(modes[j].m, modes[j].sine, g.th(t));
    auto v0 = [&](int j, int i, int t) { return std::pow(g.r(i), modes[j].m) * phi[j][t]; };

    DtnResult res;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(J, J);
    // main term: sum of q v0_j v0_k with Simpson in r, trapezoid in theta
    for (int i = 1; i <= g.nr; ++i) {
        const double wr = S[i] * g.r(i) * g.dth;
        for (int t = 0; t < g.nt; ++t) {
            if (q[i][t] == 0) continue;
            for (int j = 0; j < J; ++j) {
                const double a = wr * q[i][t] * v0(j, i, t);
                for (int k = 0; k < J; ++k) A(j, k) += a * v0(k, i, t);
            }
        }
    }
    // correction fields
    std::vector<Eigen::VectorXd> w(J);  // full-grid layout of Grid::id, center at 0
    double cond = 0;
    if (cfg.q.radial && !cfg.force_2d) {
        std::vector<double> qr(g.nr + 1);
        for (int i = 0; i <= g.nr; ++i) qr[i] = q[i][0];
        double worst = 1;
        for (int j = 0; j < J; ++j) {
            const int m = modes[j].m;
            std::vector<double> f(g.nr + 1);
            for (int i = 0; i <= g.nr; ++i) f[i] = -qr[i] * std::pow(g.r(i), m);
            double piv = 1;
            const auto wr = radial_solve(m, qr, f, 0.0, g.h, piv);
            worst = std::min(worst, piv);
            w[j] = Eigen::VectorXd::Zero(g.unknowns());
            w[j](0) = m == 0 ? wr[0] * basis(0, false, 0) : 0.0;
            for (int i = 1; i < g.nr; ++i)
                for (int t = 0; t < g.nt; ++t) w[j](g.id(i, t)) = wr[i] * phi[j][t];
        }
        cond = worst > 0 ? 1 / worst : INFINITY;
    } else {
        const auto L = assemble_2d(g, qc, q);
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(L);
        if (ldlt.info() != Eigen::Success) {
            res.flagged = true;
            res.diagnostic = "sparse factorization failed";
        }
        const auto D = ldlt.vectorD();
        const double dmin = D.cwiseAbs().minCoeff(), dmax = D.cwiseAbs().maxCoeff();
        cond = dmin > 0 ? dmax / dmin : INFINITY;
        for (int j = 0; j < J && !res.flagged; ++j) {
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(g.unknowns());
            rhs(0) = -kPi * g.h * g.h / 4 * qc[0] * v0(j, 0, 0);
            for (int i = 1; i < g.nr; ++i)
                for (int t = 0; t < g.nt; ++t)
                    rhs(g.id(i, t)) = -g.r(i) * g.h * g.dth * q[i][t] * v0(j, i, t);
            w[j] = ldlt.solve(rhs);
            const double resid = (L * w[j] - rhs).norm();
            if (!(resid <= cfg.solver_tol * std::max(1.0, rhs.norm()))) {
                res.flagged = true;
                res.diagnostic = "solver residual above tolerance";
            }
        }
    }
    res.condition_estimate = cond;
    if (!(cond < 1e12)) {
        res.flagged = true;
        res.diagnostic = "near-eigenvalue conditioning: 0 is close to a Dirichlet eigenvalue of -Laplace + q";
    }
    // correction term with the cell measure used by the solver (keeps the pairing symmetric)
    if (!res.flagged) {
        for (int j = 0; j < J; ++j) {
            const double c0 = kPi * g.h * g.h / 4 * qc[0] * w[j](0);
            for (int k = 0; k < J; ++k) A(j, k) += c0 * v0(k, 0, 0);
            for (int i = 1; i < g.nr; ++i) {
                const double wr = g.r(i) * g.h * g.dth;
                for (int t = 0; t < g.nt; ++t) {
                    if (q[i][t] == 0) continue;
                    const double a = wr * q[i][t] * w[j](g.id(i, t));
                    for (int k = 0; k < J; ++k) A(j, k) += a * v0(k, i, t);
                }
            }
        }
    }
    res.op.matrix = A;
    res.op.domain = unit_weights(J);
    res.op.codomain = unit_weights(J);
    res.op.label = label_of(cfg, "disk_dtn");
    return res;
}

WeightedOperator disk_dtn_lambda0(const DtnConfig& cfg) {
    check_cfg(cfg);
    const Grid g{cfg.n_r, cfg.n_theta, 1.0 / cfg.n_r, 2 * kPi / cfg.n_theta};
    const auto modes = basis_modes(cfg.n_modes);
    const int J = int(modes.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(J, J);
    std::vector<double> zero(g.nr + 1, 0.0);
    if (!cfg.force_2d) {
        for (int j = 0; j < J; ++j) {
            const int m = modes[j].m;
            double piv = 1;
            const auto R = radial_solve(m, zero, zero, 1.0, g.h, piv);
            double E = 0;
            for (int i = 0; i < g.nr; ++i) E += (i + 0.5) * std::pow(R[i + 1] - R[i], 2);
            for (int i = 1; i <= g.nr; ++i) {
                const double wt = i == g.nr ? 0.5 : 1.0;
                E += wt * g.h * double(m) * m / g.r(i) * R[i] * R[i];
            }
            A(j, j) = E;
        }
    } else {
        // full grid including the boundary ring; energy bilinear form of discrete harmonic extensions
        std::vector<std::vector<double>> q(g.nr + 1, std::vector<double>(g.nt, 0.0));
        const auto L = assemble_2d(g, {0.0}, q);
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(L);
        if (ldlt.info() != Eigen::Success) throw NumericalError("disk_dtn_lambda0: factorization failed");
        std::vector<std::vector<double>> u(J);  // (nr+1) x nt flattened, center replicated in ring 0
        for (int j = 0; j < J; ++j) {
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(g.unknowns());
            const int i = g.nr - 1;
            for (int t = 0; t < g.nt; ++t)
                rhs(g.id(i, t)) = g.dth * (i + 0.5) * basis(modes[j].m, modes[j].sine, g.th(t));
            const Eigen::VectorXd x = ldlt.solve(rhs);
            auto& uj = u[j];
            uj.assign(std::size_t(g.nr + 1) * g.nt, 0.0);
            for (int t = 0; t < g.nt; ++t) {
                uj[t] = x(0);
                for (int ii = 1; ii < g.nr; ++ii) uj[std::size_t(ii) * g.nt + t] = x(g.id(ii, t));
                uj[std::size_t(g.nr) * g.nt + t] = basis(modes[j].m, modes[j].sine, g.th(t));
            }
        }
        auto at = [&](const std::vector<double>& v, int i, int t) {
            return v[std::size_t(i) * g.nt + ((t % g.nt) + g.nt) % g.nt];
        };
        for (int j = 0; j < J; ++j)
            for (int k = j; k < J; ++k) {
                double E = 0;
                for (int i = 0; i < g.nr; ++i) {
                    const double c = g.dth * (i + 0.5);
                    for (int t = 0; t < g.nt; ++t)
                        E += c * (at(u[j], i + 1, t) - at(u[j], i, t)) * (at(u[k], i + 1, t) - at(u[k], i, t));
                }
                for (int i = 1; i <= g.nr; ++i) {
                    const double c = (i == g.nr ? 0.5 : 1.0) * g.h / (g.r(i) * g.dth);
                    for (int t = 0; t < g.nt; ++t)
                        E += c * (at(u[j], i, t + 1) - at(u[j], i, t)) * (at(u[k], i, t + 1) - at(u[k], i, t));
                }
                A(j, k) = A(k, j) = E;
            }
    }
    WeightedOperator op;
    op.matrix = A;
    op.domain = unit_weights(J);
    op.codomain = unit_weights(J);
    op.label = label_of(cfg, "disk_dtn_lambda0");
    return op;
}

void attach_half_weights(WeightedOperator& op, const DtnConfig& cfg) {
    const int J = 2 * cfg.n_modes + 1;
    require(op.rows() == J && op.cols() == J, "attach_half_weights: operator size does not match the config");
    op.domain = sobolev(0.5, 1, J);
    op.codomain = sobolev(-0.5, 1, J);
}

}  // namespace illab
