#include "illab/seqspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <string>

#include "illab/error.hpp"

namespace illab {

const char* to_string(WeightKind k) {
    switch (k) {
        case WeightKind::sobolev: return "sobolev";
        case WeightKind::gevrey: return "gevrey";
        case WeightKind::custom: return "custom";
    }
    return "custom";
}

bool WeightSequence::nondecreasing() const {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] < w[i - 1]) return false;
    return true;
}

WeightSequence sobolev(double s, double n, int J) {
    require(J >= 1, "sobolev weights: J must be >= 1");
    require(n >= 1, "sobolev weights: n must be >= 1");
    WeightSequence ws;
    ws.kind = WeightKind::sobolev;
    ws.params = {s, n};
    ws.w.resize(J);
    const double e = s / n;
    for (int j = 1; j <= J; ++j) ws.w[j - 1] = std::pow(double(j), e);
    return ws;
}

WeightSequence gevrey(double sigma, double rho, double n, int J) {
    require(J >= 1, "gevrey weights: J must be >= 1");
    require(n >= 1, "gevrey weights: n must be >= 1");
    require(sigma >= 1, "gevrey weights: sigma must be >= 1");
    require(rho > 0, "gevrey weights: rho must be > 0");
    WeightSequence ws;
    ws.kind = WeightKind::gevrey;
    ws.params = {sigma, rho, n};
    ws.w.resize(J);
    const double p = 1.0 / (n * sigma);
    for (int j = 1; j <= J; ++j) {
        const double ex = rho * std::pow(double(j - 1), p);
        if (ex > 700.0)
            throw NumericalError("gevrey weight exp(" + std::to_string(ex) + ") at index " +
                                 std::to_string(j) + " exceeds exp(700)");
        ws.w[j - 1] = std::exp(ex);
    }
    return ws;
}

WeightSequence unit_weights(int J) {
    require(J >= 1, "unit weights: J must be >= 1");
    return sobolev(0.0, 1.0, J);
}

WeightSequence custom_weights(std::vector<double> w) {
    require(!w.empty(), "custom weights: empty sequence");
    for (double x : w) require(std::isfinite(x) && x > 0, "custom weights must be positive and finite");
    WeightSequence ws;
    ws.kind = WeightKind::custom;
    ws.w = std::move(w);
    return ws;
}

WeightSequence make_weights(WeightKind kind, const std::vector<double>& params, int J) {
    switch (kind) {
        case WeightKind::sobolev:
            require(params.size() == 2, "sobolev expects params {s, n}");
            return sobolev(params[0], params[1], J);
        case WeightKind::gevrey:
            require(params.size() == 3, "gevrey expects params {sigma, rho, n}");
            return gevrey(params[0], params[1], params[2], J);
        case WeightKind::custom:
            require(int(params.size()) == J, "custom weights: params must list J weights");
            return custom_weights(params);
    }
    throw ConfigError("unknown weight kind");
}

std::vector<std::size_t> descending_order(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    return idx;
}

std::vector<double> sort_descending(const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i : descending_order(v)) out.push_back(v[i]);
    return out;
}

std::vector<double> embedding_singular_values(const WeightSequence& domain,
                                              const WeightSequence& codomain) {
    DiagonalOperator op{domain, codomain, {}};
    return op.singular_values();
}

double DiagonalOperator::entry(std::size_t i) const {
    const double s = scale.empty() ? 1.0 : scale[i];
    return s * codomain.w[i] / domain.w[i];
}

std::vector<double> DiagonalOperator::singular_values() const {
    require(domain.size() == codomain.size(), "diagonal operator: weight length mismatch");
    require(scale.empty() || scale.size() == domain.size(), "diagonal operator: scale length mismatch");
    std::vector<double> d(dim());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::abs(entry(i));
    return sort_descending(d);
}

WeightSequence compact_set_weights(const std::vector<TailThreshold>& thresholds, int J) {
    require(J >= 1, "compact set weights: J must be >= 1");
    const double c1 = std::numbers::pi * std::numbers::pi / 6.0;
    double c = 1.0;
    int prevN = 1;
    double prevEps = 1.0;
    for (const auto& [N, eps] : thresholds) {
        require(N > prevN, "compact set weights: thresholds N_k must be strictly increasing and > 1");
        require(eps > 0 && eps < prevEps, "compact set weights: eps_k must be positive and decreasing");
        c += eps;
        prevN = N;
        prevEps = eps;
    }
    c = std::max(c, c1);
    std::vector<double> w(J, std::sqrt(1.0 / c));
    for (std::size_t l = 0; l < thresholds.size(); ++l) {
        const int lo = thresholds[l].first;
        const int hi = l + 1 < thresholds.size() ? thresholds[l + 1].first : J + 1;
        const double val = std::sqrt(1.0 / (thresholds[l].second * c));
        for (int j = lo; j < hi && j <= J; ++j) w[j - 1] = val;
    }
    return custom_weights(std::move(w));
}

std::vector<TailThreshold> tail_thresholds(const std::vector<double>& c, int kmax) {
    const int J = int(c.size());
    std::vector<double> tail(J + 2, 0.0);  // tail[j] = sum_{i >= j} c_i^2, 1-based
    for (int j = J; j >= 1; --j) tail[j] = tail[j + 1] + c[j - 1] * c[j - 1];
    std::vector<TailThreshold> out;
    int prev = 1;
    for (int k = 2; k <= kmax; ++k) {
        const double eps = 1.0 / (double(k) * k);
        int N = 1;
        while (N <= J && tail[N] > eps * eps) ++N;
        N = std::max(N, prev + 1);
        out.emplace_back(N, eps);
        prev = N;
    }
    return out;
}

}  // namespace illab
