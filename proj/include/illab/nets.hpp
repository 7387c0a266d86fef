#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "illab/seqspace.hpp"

namespace illab {

// Points are the columns of `points`. With `weights` set the metric is
// sqrt(sum_j w_j^2 |x_j - y_j|^2), otherwise euclidean.
struct PointCloud {
    Eigen::MatrixXd points;
    std::vector<double> weights;

    std::size_t size() const { return std::size_t(points.cols()); }
    int dim() const { return int(points.rows()); }
    double distance(std::size_t i, std::size_t j) const;
    double norm(std::size_t i) const;
};

// Maximal eps-discrete subset (pairwise >= eps, inclusive), in selection order.
std::vector<std::size_t> greedy_discrete(const PointCloud& cloud, double eps);

struct NetCheck {
    double min_pairwise;     // over the selected subset (inf for a singleton)
    double covering_radius;  // max over cloud of distance to the subset
};
NetCheck check_net(const PointCloud& cloud, const std::vector<std::size_t>& subset);

struct Bracket {
    int k = 1;
    double lo = 0;
    double hi = 0;
    bool certified = false;
    long evaluations = 0;
};

// Brute-force brackets for the real diagonal map with the given semi-axes (d <= 3).
Bracket entropy_bruteforce(const std::vector<double>& sigma, int k, double resolution,
                           long budget = 10'000'000);
Bracket capacity_bruteforce(const std::vector<double>& sigma, int k, double resolution,
                            long budget = 10'000'000);

// Certified lower bound on e_k from the k-dimensional volume argument (real scalars).
double entropy_volume_bound(const std::vector<double>& sigma, int k);

// Best packing of 2^(k-1)+1 points found in the image; returns the points (columns).
Eigen::MatrixXd capacity_packing(const std::vector<double>& sigma, int k);

// 1/2 e_k <= c_k <= e_k checked on brackets, allowing relative slack `resolution`.
bool entropy_capacity_sandwich(const Bracket& e, const Bracket& c, double resolution);

}  // namespace illab
