#include <cmath>
#include <sstream>

#include "illab/error.hpp"
#include "illab/forward_ops.hpp"

namespace illab {

std::vector<int> annulus_modes(int K) {
    std::vector<int> m{0};
    for (int k = 1; k <= K; ++k) {
        m.push_back(k);
        m.push_back(-k);
    }
    return m;
}

WeightedOperator annulus_restriction(double s, double r, int K, BoundaryNorm norm) {
    require(K >= 0, "annulus_restriction: K must be >= 0");
    require(r > 0 && s > 0, "annulus_restriction: radii must be > 0");
    require(r <= s, "annulus_restriction: inner radius must not exceed outer radius");
    const auto modes = annulus_modes(K);
    const int J = int(modes.size());
    WeightedOperator op;
    op.matrix = Eigen::MatrixXd::Zero(J, J);
    const double q = r / s;
    for (int j = 0; j < J; ++j) op.matrix(j, j) = std::pow(q, std::abs(modes[j]));
    if (norm == BoundaryNorm::h_half) {
        op.domain = sobolev(0.5, 1, J);
        op.codomain = sobolev(0.5, 1, J);
    } else {
        op.domain = unit_weights(J);
        op.codomain = unit_weights(J);
    }
    std::ostringstream os;
    os << "annulus_restriction(s=" << s << ", r=" << r << ", K=" << K << ")";
    op.label = os.str();
    return op;
}

ThreeBall three_ball_ratios(int ell, int n, double r1, double r, double r2) {
    require(ell >= 0 && n >= 1, "three_ball_ratios: needs ell >= 0, n >= 1");
    require(0 < r1 && r1 < r && r < r2, "three_ball_ratios: needs 0 < r1 < r < r2");
    // Gauss-Legendre rule exact for the radial integrand rho^(2 ell + n - 1)
    const int deg = 2 * ell + n - 1;
    const int m = deg / 2 + 1;
    std::vector<double> x(m), w(m);
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double dp = 1;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = z;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (z * p1 - p0) / (z * z - 1);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = z;
        w[i] = 2 / ((1 - z * z) * dp * dp);
    }
    auto mass = [&](double R) {
        double acc = 0;
        for (int i = 0; i < m; ++i) {
            const double rho = 0.5 * R * (x[i] + 1);
            acc += w[i] * std::pow(rho, deg);
        }
        return 0.5 * R * acc;
    };
    const double big = mass(r2);
    return {std::sqrt(mass(r) / big), std::sqrt(mass(r1) / big)};
}

}  // namespace illab
