#include <gtest/gtest.h>

#include <cfloat>
#include <cmath>
#include <numbers>

#include "illab/error.hpp"
#include "illab/forward_ops.hpp"
#include "illab/spectral.hpp"

using namespace illab;

namespace {

constexpr double kPi = std::numbers::pi;

// y = r R'/R for -R'' - R'/r + m^2 R/r^2 + q R = 0, so that (Lambda_q - Lambda_0) e_m = (y(1) - m) e_m
double riccati_dtn(int m, const Potential& q, int steps = 20000) {
    auto f = [&](double r, double y) { return (m * m - y * y) / r + q.q(r, 0) * r; };
    double r = 1e-6, y = m + q.q(0, 0) * r * r / (2 * m + 2);
    const double h = (1 - r) / steps;
    for (int i = 0; i < steps; ++i) {
        const double k1 = f(r, y), k2 = f(r + h / 2, y + h / 2 * k1), k3 = f(r + h / 2, y + h / 2 * k2),
                     k4 = f(r + h, y + h * k3);
        y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        r += h;
    }
    return y - m;
}

}  // namespace

TEST(Heat, OneStepExample) {
    const auto op = heat_propagator(heat_config(3, 1, constant_coefficient(1)));
    const auto s = weighted_svd(op).sigmas;
    const double ex[3] = {1 / (1 + 64 * std::pow(std::sin(kPi / 8), 2)), 1 / (1 + 64 * std::pow(std::sin(kPi / 4), 2)),
                          1 / (1 + 64 * std::pow(std::sin(3 * kPi / 8), 2))};
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(s[k], ex[k], 1e-14);
    EXPECT_NEAR(s[0], 0.096408, 1e-6);
    EXPECT_NEAR(s[1], 0.030303, 1e-6);
    EXPECT_NEAR(s[2], 0.017977, 1e-6);
}

TEST(Heat, ZeroStepsIsIdentity) {
    const auto op = heat_propagator(heat_config(7, 0, oscillating_coefficient()));
    EXPECT_TRUE(op.matrix.isApprox(Eigen::MatrixXd::Identity(7, 7)));
    EXPECT_TRUE(op.factors.empty());
}

TEST(Heat, TimeIndependentClosedForm) {
    const int n = 31, nt = 8;
    const auto cfg = heat_config(n, nt, constant_coefficient(1));
    const auto s = weighted_svd(heat_propagator(cfg)).sigmas;
    const auto ev = dirichlet_laplacian_eigenvalues(n, cfg.h);
    for (int k = 0; k < n; ++k) {
        const double ex = std::pow(1 + cfg.dt * ev[k], -nt);
        EXPECT_LE(std::abs(s[k] / ex - 1), 1e-8) << "k=" << k + 1;
    }
}

TEST(Heat, GeneratorMatchesClosedFormEigenvalues) {
    const auto cfg = heat_config(15, 4, constant_coefficient(1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(heat_generator(cfg, 0.5));
    const auto ev = dirichlet_laplacian_eigenvalues(15, cfg.h);
    for (int k = 0; k < 15; ++k) EXPECT_NEAR(es.eigenvalues()(k) / ev[k], 1.0, 1e-12);
}

TEST(Heat, ContractionForAdmissibleCoefficients) {
    for (const auto& c : {oscillating_coefficient(), piecewise_coefficient(0.5, 2), constant_coefficient(3),
                          tabulated_coefficient({{1, 2, 1}, {0.5, 0.5, 2}}, 0.5)}) {
        const auto op = heat_propagator(heat_config(40, 16, c));
        EXPECT_LE(weighted_svd(op).sigmas[0], 1 + 1e-12) << c.name;
    }
}

TEST(Heat, EllipticityViolationDetected) {
    Coefficient c{"bad", [](double x, double) { return x < 0.5 ? 1.0 : 5.0; }, 0.5, true};
    EXPECT_THROW(heat_propagator(heat_config(9, 2, c)), ConfigError);
    EXPECT_THROW(constant_coefficient(0), ConfigError);
    auto cfg = heat_config(9, 2, constant_coefficient(1));
    cfg.dt = 0.3;
    EXPECT_THROW(heat_propagator(cfg), ConfigError);
}

TEST(Annulus, Examples) {
    const auto s = weighted_svd(annulus_restriction(1, 0.5, 2)).sigmas;
    const std::vector<double> ex{1, 0.5, 0.5, 0.25, 0.25};
    ASSERT_EQ(s.size(), 5u);
    for (int k = 0; k < 5; ++k) EXPECT_DOUBLE_EQ(s[k], ex[k]);
    for (double x : weighted_svd(annulus_restriction(0.7, 0.7, 6)).sigmas) EXPECT_DOUBLE_EQ(x, 1.0);
    EXPECT_EQ(annulus_modes(2), (std::vector<int>{0, 1, -1, 2, -2}));
}

TEST(Annulus, SemigroupExact) {
    const auto a = annulus_restriction(1, 0.8, 12), b = annulus_restriction(0.8, 0.5, 12),
               c = annulus_restriction(1, 0.5, 12);
    const Eigen::MatrixXd p = b.matrix * a.matrix;
    EXPECT_LE((p - c.matrix).cwiseAbs().maxCoeff(), 4 * DBL_EPSILON);
}

TEST(Annulus, HalfNormKeepsSingularValues) {
    const auto a = weighted_svd(annulus_restriction(1, 0.5, 8, BoundaryNorm::h_half)).sigmas;
    const auto b = weighted_svd(annulus_restriction(1, 0.5, 8)).sigmas;
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-15);
}

TEST(Annulus, Errors) {
    EXPECT_THROW(annulus_restriction(0.5, 1, 3), ConfigError);
    EXPECT_THROW(annulus_restriction(1, 0.5, -1), ConfigError);
    EXPECT_THROW(annulus_restriction(1, 0, 3), ConfigError);
}

TEST(Dtn, ZeroPotentialGivesZero) {
    DtnConfig cfg;
    cfg.n_modes = 6;
    cfg.n_r = 64;
    cfg.n_theta = 64;
    const auto r = disk_dtn(cfg);
    EXPECT_FALSE(r.flagged);
    EXPECT_LE(r.op.matrix.cwiseAbs().maxCoeff(), cfg.solver_tol);
    EXPECT_EQ(r.op.rows(), 13);
    EXPECT_EQ(dtn_mode_numbers(2), (std::vector<int>{0, 1, 1, 2, 2}));
}

TEST(Dtn, LambdaZeroCalibration) {
    DtnConfig cfg;
    cfg.n_modes = 10;
    cfg.n_r = 256;
    cfg.n_theta = 64;
    const auto L = disk_dtn_lambda0(cfg);
    const auto m = dtn_mode_numbers(10);
    for (int j = 0; j < L.rows(); ++j) {
        EXPECT_NEAR(L.matrix(j, j), m[j], 0.02 * std::max(1, m[j])) << "index " << j;
        for (int k = 0; k < L.cols(); ++k)
            if (k != j) EXPECT_LE(std::abs(L.matrix(j, k)), 1e-10);
    }
}

TEST(Dtn, RadialPotentialDiagonalAndDecaying) {
    DtnConfig cfg;
    cfg.n_modes = 20;
    cfg.q = radial_bump(1.0, 0.5);
    const auto r = disk_dtn(cfg);
    ASSERT_FALSE(r.flagged) << r.diagnostic;
    const auto& A = r.op.matrix;
    EXPECT_LE((A - A.transpose()).norm(), 10 * cfg.solver_tol);
    for (int j = 0; j < A.rows(); ++j)
        for (int k = 0; k < A.cols(); ++k)
            if (j != k) EXPECT_LE(std::abs(A(j, k)), cfg.solver_tol);
    // cosine entries of modes 2..20 sit at index 2m - 1
    std::vector<double> ls;
    for (int m = 2; m <= 20; ++m) ls.push_back(std::log(std::abs(A(2 * m - 1, 2 * m - 1))));
    std::vector<double> lx;
    for (int m = 2; m <= 20; ++m) lx.push_back(m);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        mx += lx[i] / ls.size();
        my += ls[i] / ls.size();
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        sxy += (lx[i] - mx) * (ls[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    EXPECT_LE(sxy / sxx, -1.0);
}

TEST(Dtn, RadialMatchesRiccatiOracle) {
    DtnConfig cfg;
    cfg.n_modes = 6;
    cfg.n_r = 512;
    cfg.n_theta = 64;
    cfg.q = radial_bump(1.0, 0.5);
    const auto r = disk_dtn(cfg);
    const auto m = dtn_mode_numbers(6);
    for (int j = 0; j < r.op.rows(); ++j) {
        const double ex = riccati_dtn(m[j], cfg.q);
        EXPECT_NEAR(r.op.matrix(j, j), ex, 0.01 * std::abs(ex)) << "mode " << m[j];
    }
}

TEST(Dtn, TwoDimensionalPathAgreesWithRadial) {
    DtnConfig cfg;
    cfg.n_modes = 8;
    cfg.n_r = 64;
    cfg.n_theta = 64;
    cfg.q = radial_bump(1.0, 0.5);
    const auto a = disk_dtn(cfg);
    cfg.force_2d = true;
    const auto b = disk_dtn(cfg);
    ASSERT_FALSE(b.flagged) << b.diagnostic;
    EXPECT_LE((a.op.matrix - b.op.matrix).norm(), 1e-6 * a.op.matrix.norm());
}

TEST(Dtn, ShiftedBumpSymmetric) {
    DtnConfig cfg;
    cfg.n_modes = 8;
    cfg.n_r = 64;
    cfg.n_theta = 64;
    cfg.q = shifted_bump(2.0, 0.25, 0.2, 0.1);
    const auto r = disk_dtn(cfg);
    ASSERT_FALSE(r.flagged) << r.diagnostic;
    EXPECT_LE((r.op.matrix - r.op.matrix.transpose()).norm(), 10 * cfg.solver_tol);
    EXPECT_GT(r.op.matrix.norm(), 1e-4);
    EXPECT_LT(r.condition_estimate, 1e12);
}

TEST(Dtn, RejectsBadPotentials) {
    DtnConfig cfg;
    cfg.n_modes = 4;
    cfg.n_r = 32;
    cfg.n_theta = 32;
    cfg.q = radial_bump(2.0, 0.5);
    cfg.q.bound = 1.0;
    EXPECT_THROW(disk_dtn(cfg), ConfigError);
    cfg.q = Potential{"wide", [](double r, double) { return r < 0.7 ? 1.0 : 0.0; }, true, 0.5, 1.0};
    EXPECT_THROW(disk_dtn(cfg), ConfigError);
    cfg.q.support = 0.7;
    EXPECT_THROW(disk_dtn(cfg), ConfigError);
    EXPECT_THROW(shifted_bump(1, 0.3, 0.3, 0), ConfigError);
}

TEST(Dtn, HalfWeights) {
    DtnConfig cfg;
    cfg.n_modes = 3;
    WeightedOperator op = make_operator(Eigen::MatrixXd::Identity(7, 7));
    attach_half_weights(op, cfg);
    EXPECT_NEAR(op.domain.at(4), 2.0, 1e-15);
    EXPECT_NEAR(op.codomain.at(4), 0.5, 1e-15);
    WeightedOperator bad = make_operator(Eigen::MatrixXd::Identity(5, 5));
    EXPECT_THROW(attach_half_weights(bad, cfg), ConfigError);
}

TEST(Radon, ZeroImage) {
    const auto op = radon_matrix(radon_full(16, 12, 9));
    EXPECT_EQ((op.matrix * Eigen::VectorXd::Zero(op.cols())).norm(), 0.0);
    EXPECT_EQ(op.rows(), 12 * 9);
}

TEST(Radon, PixelCount) {
    EXPECT_EQ(radon_pixels(8).size(), 60u);
    EXPECT_EQ(radon_pixels(64).size(), 3332u);
}

TEST(Radon, DiskChords) {
    const int n = 64;
    const auto cfg = radon_full(n, 16, 33);
    const auto op = radon_matrix(cfg);
    const auto pix = radon_pixels(n);
    Eigen::VectorXd f(Eigen::Index(pix.size()));
    const double w = 2.0 / n;
    for (std::size_t k = 0; k < pix.size(); ++k) {
        const double x = -1 + (pix[k] % n + 0.5) * w, y = -1 + (pix[k] / n + 0.5) * w;
        f(Eigen::Index(k)) = x * x + y * y < 0.25 ? 1.0 : 0.0;
    }
    const Eigen::VectorXd g = op.matrix * f;
    auto chord = [](double R, double s) { return std::abs(s) < R ? 2 * std::sqrt(R * R - s * s) : 0.0; };
    // the pixelated disk sits between the disks of radius 1/2 -+ half a pixel diagonal
    const double lo_r = 0.5 - w / std::sqrt(2.0), hi_r = 0.5 + w / std::sqrt(2.0);
    for (std::size_t r = 0; r < cfg.mask.size(); ++r) {
        const double s = cfg.offsets[cfg.mask[r].second];
        const double v = g(Eigen::Index(r));
        EXPECT_GE(v, chord(lo_r, s) - 1e-12) << "row " << r;
        EXPECT_LE(v, chord(hi_r, s) + 1e-12) << "row " << r;
        if (std::abs(s) <= 0.25) EXPECT_NEAR(v, chord(0.5, s), 2 * w) << "row " << r;
    }
    for (std::size_t j = 0; j < cfg.offsets.size(); ++j) {
        double mn = 1e300, mx = -1e300;
        for (std::size_t r = 0; r < cfg.mask.size(); ++r)
            if (cfg.mask[r].second == int(j)) {
                mn = std::min(mn, g(Eigen::Index(r)));
                mx = std::max(mx, g(Eigen::Index(r)));
            }
        EXPECT_LE(mx - mn, chord(hi_r, cfg.offsets[j]) - chord(lo_r, cfg.offsets[j]) + 1e-12);
    }
}

TEST(Radon, RowSumsBracketedByChords) {
    const int n = 32;
    const auto cfg = radon_full(n, 10, 17);
    const auto op = radon_matrix(cfg);
    const Eigen::VectorXd g = op.matrix * Eigen::VectorXd::Ones(op.cols());
    for (std::size_t r = 0; r < cfg.mask.size(); ++r) {
        const auto [i, j] = cfg.mask[r];
        const double s = cfg.offsets[j];
        double full = 0;
        for (auto [id, len] : line_pixel_lengths(n, cfg.angles[i], s)) full += len;
        const double disk = std::abs(s) < 1 ? 2 * std::sqrt(1 - s * s) : 0.0;
        EXPECT_GE(g(Eigen::Index(r)), disk - 1e-12);
        EXPECT_LE(g(Eigen::Index(r)), full + 1e-12);
    }
}

TEST(Radon, LineLengthsSumToClip) {
    for (double phi : {0.0, 0.3, kPi / 4, 1.9, kPi / 2})
        for (double s : {-0.9, -0.2, 0.0, 0.55}) {
            double tot = 0;
            for (auto [id, len] : line_pixel_lengths(16, phi, s)) {
                EXPECT_GT(len, 0);
                EXPECT_LE(len, 2.0 / 16 * std::sqrt(2.0) + 1e-12);
                tot += len;
            }
            // clip length of the line in [-1,1]^2
            const double c = std::cos(phi), sn = std::sin(phi);
            double tmin = -1e300, tmax = 1e300;
            for (auto [p, d] : {std::pair{s * c, -sn}, {s * sn, c}}) {
                if (std::abs(d) < 1e-15) continue;
                const double a = (-1 - p) / d, b = (1 - p) / d;
                tmin = std::max(tmin, std::min(a, b));
                tmax = std::min(tmax, std::max(a, b));
            }
            EXPECT_NEAR(tot, std::max(0.0, tmax - tmin), 1e-12);
        }
    EXPECT_TRUE(line_pixel_lengths(8, 0.0, 1.5).empty());
}

TEST(Radon, MasksAndErrors) {
    const auto full = radon_full(16, 24, 11);
    EXPECT_TRUE(mask_symmetric(full));
    const auto lim = radon_limited(16, 24, 11, 0.0, kPi / 2);
    EXPECT_TRUE(mask_symmetric(lim));
    EXPECT_EQ(lim.mask.size(), full.mask.size() / 2);
    auto broken = lim;
    broken.mask.pop_back();
    EXPECT_FALSE(mask_symmetric(broken));
    RadonConfig empty = full;
    empty.mask.clear();
    EXPECT_THROW(radon_matrix(empty), ConfigError);
    EXPECT_THROW(radon_limited(16, 24, 11, 0, 4.0), ConfigError);
}

TEST(ThreeBall, Examples) {
    const auto z = three_ball_ratios(0, 3, 0.1, 0.3, 0.9);
    EXPECT_NEAR(z.ratio_mid, std::pow(1.0 / 3, 1.5), 1e-14);
    EXPECT_NEAR(z.ratio_small, std::pow(1.0 / 9, 1.5), 1e-14);
    const auto o = three_ball_ratios(1, 2, 0.125, 0.25, 0.5);
    EXPECT_NEAR(o.ratio_mid, 0.25, 1e-14);
    EXPECT_NEAR(o.ratio_small, 1.0 / 16, 1e-14);
    EXPECT_THROW(three_ball_ratios(1, 2, 0.3, 0.25, 0.5), ConfigError);
}

TEST(ThreeBall, ExponentTendsToHalf) {
    for (int ell = 1; ell <= 40; ++ell) {
        const auto t = three_ball_ratios(ell, 2, 0.125, 0.25, 0.5);
        EXPECT_NEAR(std::log(t.ratio_mid) / std::log(t.ratio_small), 0.5, 1e-12);
    }
    for (int ell : {0, 1, 5, 20, 80}) {
        const auto t = three_ball_ratios(ell, 3, 0.1, 0.3, 1.0);
        EXPECT_NEAR(std::log(t.ratio_mid) / std::log(t.ratio_small), std::log(0.3) / std::log(0.1), 1e-12);
        EXPECT_NEAR(t.ratio_mid, std::pow(0.3, ell + 1.5), 1e-12 * std::pow(0.3, ell + 1.5));
    }
}
