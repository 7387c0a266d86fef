#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace illab {

enum class WeightKind { sobolev, gevrey, custom };

const char* to_string(WeightKind k);

// Positive weights w_1..w_J (stored 0-based) of a weighted l2 norm
// ||u||^2 = sum_j w_j^2 |u_j|^2.
struct WeightSequence {
    WeightKind kind = WeightKind::custom;
    std::vector<double> params;  // sobolev: {s, n}; gevrey: {sigma, rho, n}
    std::vector<double> w;

    std::size_t size() const { return w.size(); }
    double operator[](std::size_t i) const { return w[i]; }
    // 1-based access
    double at(std::size_t j) const { return w.at(j - 1); }
    bool nondecreasing() const;
};

WeightSequence make_weights(WeightKind kind, const std::vector<double>& params, int J);
WeightSequence sobolev(double s, double n, int J = 512);
WeightSequence gevrey(double sigma, double rho, double n, int J = 512);
WeightSequence unit_weights(int J);
WeightSequence custom_weights(std::vector<double> w);

// Descending order, ties kept in original index order.
std::vector<double> sort_descending(const std::vector<double>& v);
std::vector<std::size_t> descending_order(const std::vector<double>& v);

std::vector<double> embedding_singular_values(const WeightSequence& domain,
                                              const WeightSequence& codomain);

struct DiagonalOperator {
    WeightSequence domain;
    WeightSequence codomain;
    std::vector<double> scale;  // empty means all ones

    std::size_t dim() const { return domain.size(); }
    double entry(std::size_t i) const;  // 0-based diagonal of the weighted map
    std::vector<double> singular_values() const;
};

// Tail schedule (N_k, eps_k), k = 2, 3, ... (N_1 = 1, eps_1 = 1 implied).
using TailThreshold = std::pair<int, double>;

WeightSequence compact_set_weights(const std::vector<TailThreshold>& thresholds, int J);

// N_k for the schedule eps_k = 1/k^2, k = 2..kmax: first index with
// sum_{j >= N_k} |c_j|^2 <= eps_k^2, forced strictly increasing.
std::vector<TailThreshold> tail_thresholds(const std::vector<double>& c, int kmax);

}  // namespace illab
