#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "illab/error.hpp"
#include "illab/seqspace.hpp"

using namespace illab;

TEST(Weights, SobolevExamples) {
    EXPECT_EQ(sobolev(0, 1, 3).w, (std::vector<double>{1, 1, 1}));
    const auto w = sobolev(2, 2, 3);
    for (int j = 1; j <= 3; ++j) EXPECT_DOUBLE_EQ(w.at(j), j);
    EXPECT_TRUE(sobolev(1.5, 2, 100).nondecreasing());
}

TEST(Weights, GevreyExamples) {
    const auto w = gevrey(1, 1, 1, 3);
    EXPECT_DOUBLE_EQ(w.at(1), 1.0);
    EXPECT_NEAR(w.at(2), 2.718281828459045, 1e-15);
    EXPECT_NEAR(w.at(3), 7.38905609893065, 1e-14);
    EXPECT_TRUE(gevrey(2, 0.5, 2, 512).nondecreasing());
}

TEST(Weights, RejectsBadParameters) {
    EXPECT_THROW(sobolev(1, 1, 0), ConfigError);
    EXPECT_THROW(sobolev(1, 0.5, 4), ConfigError);
    EXPECT_THROW(gevrey(1, 0, 1, 4), ConfigError);
    EXPECT_THROW(gevrey(1, -1, 1, 4), ConfigError);
    EXPECT_THROW(gevrey(0.5, 1, 1, 4), ConfigError);
    EXPECT_THROW(custom_weights({1, 0, 2}), ConfigError);
    EXPECT_THROW(make_weights(WeightKind::sobolev, {1}, 4), ConfigError);
}

TEST(Weights, GevreyOverflowIsAnError) {
    EXPECT_THROW(gevrey(1, 1, 1, 800), NumericalError);
    EXPECT_NO_THROW(gevrey(1, 1, 1, 700));
}

TEST(Embedding, Examples) {
    const auto s = embedding_singular_values(sobolev(1, 1, 4), sobolev(0, 1, 4));
    ASSERT_EQ(s.size(), 4u);
    for (int k = 1; k <= 4; ++k) EXPECT_NEAR(s[k - 1], 1.0 / k, 1e-16);
    for (double x : embedding_singular_values(gevrey(2, 1, 1, 9), gevrey(2, 1, 1, 9))) EXPECT_EQ(x, 1.0);
    const auto g = embedding_singular_values(gevrey(1, 1, 1, 3), sobolev(0, 1, 3));
    EXPECT_NEAR(g[0], 1.0, 1e-16);
    EXPECT_NEAR(g[1], 0.36787944117144233, 1e-16);
    EXPECT_NEAR(g[2], 0.1353352832366127, 1e-16);
    EXPECT_THROW(embedding_singular_values(sobolev(1, 1, 4), sobolev(0, 1, 5)), ConfigError);
}

TEST(Embedding, SobolevPowersToMachinePrecision) {
    for (auto [s1, s2, n] : {std::tuple{1.0, 0.0, 1.0}, {2.0, 0.0, 2.0}, {3.0, 1.0, 3.0}, {0.5, -0.5, 2.0}}) {
        const auto s = embedding_singular_values(sobolev(s1, n, 512), sobolev(s2, n, 512));
        for (int k = 1; k <= 512; ++k) {
            const double ex = std::pow(double(k), -(s1 - s2) / n);
            EXPECT_LE(std::abs(s[k - 1] / ex - 1), 1e-12) << "k=" << k;
        }
    }
}

TEST(Embedding, GevreyToSobolevFormula) {
    for (auto [sig, rho, n, s] : {std::tuple{1.0, 1.0, 1.0, 0.0}, {2.0, 0.5, 2.0, 1.0}}) {
        const auto got = embedding_singular_values(gevrey(sig, rho, n, 512), sobolev(s, n, 512));
        std::vector<double> formula;
        for (int k = 1; k <= 512; ++k)
            formula.push_back(std::pow(double(k), s / n) * std::exp(-rho * std::pow(k - 1.0, 1 / (n * sig))));
        // index-wise ratio of the weights
        const auto dom = gevrey(sig, rho, n, 512), cod = sobolev(s, n, 512);
        for (int k = 1; k <= 512; ++k) EXPECT_LE(std::abs(cod.at(k) / dom.at(k) / formula[k - 1] - 1), 1e-12);
        // sorted values against the sorted formula
        const auto sorted = sort_descending(formula);
        for (int k = 0; k < 512; ++k) EXPECT_LE(std::abs(got[k] / sorted[k] - 1), 1e-12);
    }
}

TEST(Embedding, OutputNonincreasingPositive) {
    const auto s = embedding_singular_values(gevrey(2, 0.5, 2, 512), sobolev(1, 2, 512));
    for (std::size_t k = 0; k < s.size(); ++k) {
        EXPECT_GT(s[k], 0);
        if (k) EXPECT_LE(s[k], s[k - 1]);
    }
}

TEST(Embedding, IsometryInvariance) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, 10);
    std::vector<double> f(64);
    for (double& x : f) x = u(rng);
    auto d = sobolev(1, 1, 64), c = sobolev(0.25, 1, 64);
    const auto ref = embedding_singular_values(d, c);
    for (int j = 0; j < 64; ++j) {
        d.w[j] *= f[j];
        c.w[j] *= f[j];
    }
    const auto got = embedding_singular_values(d, c);
    for (int k = 0; k < 64; ++k) EXPECT_NEAR(got[k] / ref[k], 1.0, 1e-12);
}

TEST(Sorting, TiesKeepIndexOrder) {
    const auto o = descending_order({0.5, 1.0, 0.5, 1.0, 0.25});
    EXPECT_EQ(o, (std::vector<std::size_t>{1, 3, 0, 2, 4}));
}

TEST(Diagonal, SingularValuesAreSortedRatios) {
    DiagonalOperator op{sobolev(1, 1, 5), unit_weights(5), {1, 10, 1, 1, 1}};
    const auto s = op.singular_values();
    EXPECT_NEAR(s[0], 5.0, 1e-15);
    EXPECT_NEAR(s[1], 1.0, 1e-15);
    EXPECT_NEAR(s[2], 1.0 / 3, 1e-15);
    EXPECT_NEAR(s[4], 0.2, 1e-15);
}

TEST(CompactSet, SingleThreshold) {
    const auto k = compact_set_weights({{4, 0.25}}, 10);
    const double c1 = M_PI * M_PI / 6;
    for (int j = 1; j < 4; ++j) EXPECT_NEAR(k.at(j) * k.at(j), 1 / c1, 1e-15);
    for (int j = 4; j <= 10; ++j) EXPECT_NEAR(k.at(j) * k.at(j), 4 / c1, 1e-14);
    EXPECT_TRUE(k.nondecreasing());
}

TEST(CompactSet, EmptyThresholdsGiveConstantWeights) {
    const auto k = compact_set_weights({}, 6);
    for (int j = 1; j <= 6; ++j) EXPECT_EQ(k.at(j), k.at(1));
}

TEST(CompactSet, GeometricFamilyIsInside) {
    const int J = 60;
    std::vector<double> c(J);
    for (int j = 1; j <= J; ++j) c[j - 1] = std::pow(2.0, -j);
    const auto th = tail_thresholds(c, 12);
    for (std::size_t i = 0; i < th.size(); ++i) {
        double tail = 0;
        for (int j = th[i].first; j <= J; ++j) tail += c[j - 1] * c[j - 1];
        EXPECT_LE(tail, std::pow(th[i].second, 2));
        if (i) EXPECT_GT(th[i].first, th[i - 1].first);
    }
    const auto k = compact_set_weights(th, J);
    double s = 0;
    for (int j = 1; j <= J; ++j) s += std::pow(k.at(j) * c[j - 1], 2);
    EXPECT_LE(s, 1.0);
    EXPECT_TRUE(k.nondecreasing());
}

TEST(CompactSet, RejectsNonmonotoneThresholds) {
    EXPECT_THROW(compact_set_weights({{4, 0.25}, {3, 0.1}}, 10), ConfigError);
    EXPECT_THROW(compact_set_weights({{4, 0.25}, {6, 0.5}}, 10), ConfigError);
}
