#include <gtest/gtest.h>

#include <cmath>

#include "illab/error.hpp"
#include "illab/forward_ops.hpp"
#include "illab/instability.hpp"

using namespace illab;

namespace {

WeightedOperator exp_diagonal(int J) {
    Eigen::VectorXd d(J);
    for (int j = 0; j < J; ++j) d(j) = std::exp(-(j + 1.0));
    return make_operator(d.asDiagonal());
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i] / x.size();
        my += y[i] / y.size();
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace

TEST(Pigeonhole, ZeroMap) {
    const int J = 6;
    Evaluator F = [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Zero(x.size()); };
    const WeightedBall K{unit_weights(J), 1.0};
    const auto r = pigeonhole_witness(F, K, 0.5);
    ASSERT_TRUE(r.certificate) << r.diagnostic;
    EXPECT_EQ(r.certificate->image_distance, 0.0);
    EXPECT_GE(r.certificate->domain_distance, 0.5);
    EXPECT_NO_THROW(verify_certificate(*r.certificate, F, K));
}

TEST(Pigeonhole, IsometryHasNoWitness) {
    const int J = 6;
    Evaluator F = [](const Eigen::VectorXd& x) { return x; };
    const auto r = pigeonhole_witness(F, WeightedBall{sobolev(1, 1, J), 1.0}, 0.3);
    EXPECT_FALSE(r.certificate);
    EXPECT_FALSE(r.diagnostic.empty());
    EXPECT_GT(r.stats.discrete_size, 1);
}

TEST(Pigeonhole, ExponentialDiagonal) {
    const auto op = exp_diagonal(20);
    const Evaluator F = weighted_evaluator(op);
    const WeightedBall K{sobolev(1, 1, 20), 1.0};
    PigeonholeOptions opt;
    opt.sample_budget = 10000;
    const auto r = pigeonhole_witness(F, K, 0.2, opt);
    ASSERT_TRUE(r.certificate) << r.diagnostic;
    const auto& c = *r.certificate;
    EXPECT_GE(c.domain_distance, 0.2);
    EXPECT_LE(c.image_distance, 2 * c.delta);
    EXPECT_LT(c.image_distance, 0.1 * 0.2);
    EXPECT_TRUE(K.contains(c.x1));
    EXPECT_TRUE(K.contains(c.x2));
    EXPECT_NEAR((F(c.x1) - F(c.x2)).norm(), c.image_distance, 1e-15);
    EXPECT_NEAR((c.x1 - c.x2).norm(), c.domain_distance, 1e-15);
}

TEST(Pigeonhole, AnnulusImagesCollapse) {
    const auto op = annulus_restriction(1, 0.5, 32);
    const Evaluator F = weighted_evaluator(op);
    const WeightedBall K{sobolev(1, 1, int(op.cols())), 1.0};
    std::vector<double> inv, li;
    for (double eps : {0.2, 0.1, 0.05}) {
        const auto r = pigeonhole_witness(F, K, eps);
        ASSERT_TRUE(r.certificate) << "eps " << eps << ": " << r.diagnostic;
        inv.push_back(1 / eps);
        li.push_back(std::log(r.certificate->image_distance));
    }
    EXPECT_LT(slope(inv, li), 0);
}

TEST(Pigeonhole, VerifyRejectsForgedCertificate) {
    Evaluator F = [](const Eigen::VectorXd& x) { return x; };
    const WeightedBall K{unit_weights(2), 1.0};
    InstabilityCertificate c;
    c.x1 = Eigen::Vector2d(0.5, 0);
    c.x2 = Eigen::Vector2d(-0.5, 0);
    c.eps = 0.5;
    c.delta = 0.01;
    c.domain_distance = 1;
    c.image_distance = 0.01;
    EXPECT_THROW(verify_certificate(c, F, K), NumericalError);
    EXPECT_THROW(pigeonhole_witness(F, K, 0), ConfigError);
}

TEST(Spectral, ExponentialDiagonal) {
    const auto op = exp_diagonal(20);
    const auto kappa = sobolev(1, 1, 20);
    EXPECT_EQ(spectral_cutoff(kappa, 0.25), 4);
    const auto c = spectral_witness(op, kappa, 0.25);
    EXPECT_NEAR(c.domain_distance, 0.5, 1e-15);
    EXPECT_NEAR(c.delta, 0.25 * std::exp(-4.0), 1e-15);
    EXPECT_LE(c.delta, 4.58e-3);
    EXPECT_NEAR(c.image_distance, 2 * c.delta, 1e-15);
    const WeightedBall K{kappa, 1.0};
    EXPECT_TRUE(K.contains(c.x1));
    EXPECT_NO_THROW(verify_certificate(c, weighted_evaluator(op), K));
}

TEST(Spectral, IdentityShowsNoInstability) {
    const auto op = make_operator(Eigen::MatrixXd::Identity(10, 10));
    const auto c = spectral_witness(op, sobolev(1, 1, 10), 0.2);
    EXPECT_NEAR(c.delta, 0.2, 1e-14);
    EXPECT_NEAR(c.image_distance, c.domain_distance, 1e-14);
}

TEST(Spectral, AnnulusBoundBySortedSigma) {
    const auto op = annulus_restriction(1, 0.5, 32);
    const auto kappa = sobolev(1, 1, int(op.cols()));
    for (double eps : {0.4, 0.2, 0.1, 0.05}) {
        const int N = spectral_cutoff(kappa, eps);
        const auto c = spectral_witness(op, kappa, eps);
        // N-th value of the sorted annulus spectrum 1, 1/2, 1/2, 1/4, 1/4, ...
        const double sN = std::pow(0.5, N / 2);
        EXPECT_LE(c.delta, sN * eps * (1 + 1e-12)) << "eps " << eps;
    }
}

TEST(Spectral, Errors) {
    const auto op = exp_diagonal(5);
    EXPECT_THROW(spectral_witness(op, sobolev(1, 1, 5), 2.0), ConfigError);
    EXPECT_THROW(spectral_witness(op, sobolev(1, 1, 10), 0.1), ConfigError);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
    m(0, 0) = 1;
    EXPECT_THROW(spectral_witness(make_operator(m), sobolev(1, 1, 5), 0.3), NumericalError);
}

TEST(Holder, PowerHalfPasses) {
    const int J = 30;
    std::vector<double> s(J), k(J);
    for (int j = 0; j < J; ++j) {
        s[j] = std::exp(-(j + 1.0));
        k[j] = std::exp(j + 1.0);
    }
    const auto r = holder_stability_check(s, custom_weights(k), eta_power(0.5), J);
    EXPECT_TRUE(r.pass);
    const auto v = holder_stability_check(s, custom_weights(k), eta_power(0.6), J);
    EXPECT_FALSE(v.pass);
    EXPECT_EQ(v.first_violation, 1);
    EXPECT_GT(v.lhs, v.rhs);
}

TEST(Holder, EqualityCases) {
    const int J = 12;
    std::vector<double> s(J), k(J);
    for (int j = 0; j < J; ++j) {
        k[j] = j + 1.0;
        s[j] = 1 / k[j];
    }
    EXPECT_TRUE(holder_stability_check(s, custom_weights(k), eta_power(0.5), J).pass);
    EXPECT_FALSE(holder_stability_check(s, custom_weights(k), eta_identity(), J).pass);
    std::vector<double> ones(J, 1.0);
    EXPECT_TRUE(holder_stability_check(ones, custom_weights(ones), eta_identity(), J).pass);
}

TEST(Holder, ShapePreconditions) {
    std::vector<double> s{0.5, 0.25, 0.125}, k{1, 2, 3};
    EXPECT_THROW(holder_stability_check(s, custom_weights(k), Eta{"t^2", [](double t) { return t * t; }}, 3),
                 ConfigError);
    EXPECT_THROW(holder_stability_check(s, custom_weights(k), Eta{"-t", [](double t) { return -t; }}, 3), ConfigError);
    EXPECT_THROW(eta_power(1.5), ConfigError);
    std::vector<double> small{0.1, 0.01, 0.001};
    EXPECT_NO_THROW(holder_stability_check(small, custom_weights(k), eta_log(1), 3));
    EXPECT_THROW(holder_stability_check({0.9, 0.8, 0.7}, custom_weights(k), eta_log(1), 3), ConfigError);
}

TEST(Holder, BruteForceAgreesWithPassingCheck) {
    const int J = 24;
    std::vector<double> s(J), k(J);
    for (int j = 0; j < J; ++j) {
        s[j] = std::exp(-0.5 * (j + 1));
        k[j] = std::exp(0.5 * (j + 1));
    }
    const auto kw = custom_weights(k);
    ASSERT_TRUE(holder_stability_check(s, kw, eta_power(0.5), J).pass);
    const auto b = holder_stability_bruteforce(s, kw, eta_power(0.5), J, 10000, 17);
    EXPECT_EQ(b.samples, 10000);
    EXPECT_EQ(b.violations, 0);
    EXPECT_LE(b.worst_ratio, 1 + 1e-9);
    const auto v = holder_stability_bruteforce(s, kw, eta_power(0.9), J, 10000, 17);
    EXPECT_GT(v.violations, 0);
}

TEST(Modulus, PowerPowerIsHalfT) {
    const CountFamily f{CountFamily::Kind::power, 1, 1}, g{CountFamily::Kind::power, 1, 1};
    const auto c = modulus_lower_curve(f, g, {1e-3, 0.1, 1.0, 1.9, 2.0, 5.0});
    ASSERT_EQ(c.size(), 4u);
    for (auto [t, w] : c) EXPECT_NEAR(w, t / 2, 1e-15 * t);
}

TEST(Modulus, LogPowerExponent) {
    const double alpha = 0.5, m = 2;
    const CountFamily f{CountFamily::Kind::logpower, 3, 1 / alpha}, g{CountFamily::Kind::power, 1.5, 1 / m};
    std::vector<double> ts;
    for (int i = 0; i <= 40; ++i) ts.push_back(std::pow(10.0, -104 + 0.1 * i));
    const auto c = modulus_lower_curve(f, g, ts);
    std::vector<double> x, y;
    for (auto [t, w] : c) {
        x.push_back(std::log(-std::log(t)));
        y.push_back(std::log(w));
    }
    EXPECT_NEAR(slope(x, y), -m / alpha, 0.01 * m / alpha);
}

TEST(Modulus, Truncation) {
    const CountFamily f{CountFamily::Kind::logpower, 1, 1}, g{CountFamily::Kind::power, 1, 1};
    EXPECT_EQ(modulus_lower_curve(f, g, {1.5, 2.5}).size(), 1u);
    EXPECT_EQ(modulus_lower_curve(f, g, {2.5}, 4.0).size(), 0u);
    EXPECT_THROW(modulus_lower_curve(f, g, {-1.0}), ConfigError);
}

TEST(HsBound, Examples) {
    const auto a = custom_weights({1, 2, 4, 8});
    EXPECT_DOUBLE_EQ(hs_embedding_bound(a, a, 1, 1), 0.5);
    std::vector<double> e;
    for (int j = 1; j <= 8; ++j) e.push_back(std::exp(0.25 * j));
    const auto w = custom_weights(e);
    const double b = hs_embedding_bound(w, w, 3, 3);
    EXPECT_NEAR(b, std::exp(-1.25), 1e-15);
    EXPECT_LE(b, std::exp(-1.0));
    EXPECT_THROW(hs_embedding_bound(a, a, 0, 1), ConfigError);
    EXPECT_THROW(hs_embedding_bound(a, a, 1, 4), ConfigError);
    EXPECT_THROW(hs_embedding_bound(custom_weights({2, 1, 3}), a, 1, 1), ConfigError);
}

TEST(Interpolation, PowerFamily) {
    const InterpolationFamily g{InterpolationFamily::Kind::power, 1.0};
    const double C = 3;
    std::vector<double> s{0.5, 0.2, 0.05, 0.01};
    const auto c = interpolation_triple_curve(g, C, s);
    ASSERT_EQ(c.size(), 4u);
    for (std::size_t j = 0; j < s.size(); ++j) {
        EXPECT_NEAR(c[j].first, C * s[j] * s[j], 1e-15);
        EXPECT_NEAR(c[j].second, std::sqrt(c[j].first / C), 1e-15);
    }
}

TEST(Interpolation, LogPowerFamily) {
    InterpolationFamily g;
    g.kind = InterpolationFamily::Kind::logpower;
    g.s = 1;
    g.beta = 1;
    std::vector<double> s;
    for (int j = 1; j <= 60; ++j) s.push_back(std::exp(-double(j)));
    const auto c = interpolation_triple_curve(g, 1.0, s);
    for (std::size_t j = 10; j < c.size(); ++j) {
        const double ratio = c[j].second * std::abs(std::log(c[j].first));
        EXPECT_GT(ratio, 1.0);
        EXPECT_LT(ratio, 1.5);
    }
    EXPECT_EQ(interpolation_triple_curve(g, 1.0, {0.3}).size(), 1u);
}

TEST(Interpolation, Errors) {
    const InterpolationFamily bad{InterpolationFamily::Kind::power, -2.0};
    EXPECT_THROW(interpolation_triple_curve(bad, 1.0, {0.5, 0.25}), NumericalError);
    const InterpolationFamily g{InterpolationFamily::Kind::power, 1.0};
    EXPECT_THROW(interpolation_triple_curve(g, 1.0, {0.25, 0.5}), ConfigError);
    EXPECT_THROW(interpolation_triple_curve(g, 0.0, {0.5}), ConfigError);
}
