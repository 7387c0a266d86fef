#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "illab/spectral.hpp"

namespace illab {

// ---- backward heat -------------------------------------------------------

struct Coefficient {
    std::string name;
    std::function<double(double x, double t)> a;
    double lambda = 1.0;  // claimed ellipticity: a in [lambda, 1/lambda]
    bool time_independent = false;
};

Coefficient constant_coefficient(double c);
Coefficient oscillating_coefficient();  // 2 + sin(2 pi x) cos(2 pi t)
Coefficient piecewise_coefficient(double left, double right, double jump_at = 0.5);
// bilinear interpolation of values[it][ix] on a uniform grid of [0,1] x [0,1]
Coefficient tabulated_coefficient(std::vector<std::vector<double>> values, double lambda);

struct HeatConfig {
    int n_x = 127;
    double h = 1.0 / 128;
    int n_t = 64;
    double dt = 1.0 / 64;
    Coefficient coeff = constant_coefficient(1.0);
};

HeatConfig heat_config(int n_x, int n_t, Coefficient c);

// Tridiagonal A_h(t) = -D+ a(., t) D- with Dirichlet ends, as a dense matrix.
Eigen::MatrixXd heat_generator(const HeatConfig& cfg, double t);
// Closed-form eigenvalues (4/h^2) sin^2(k pi h / 2), k = 1..n_x, of the a == 1 generator.
std::vector<double> dirichlet_laplacian_eigenvalues(int n_x, double h);

WeightedOperator heat_propagator(const HeatConfig& cfg);

// ---- harmonic restriction on annuli --------------------------------------

enum class BoundaryNorm { l2, h_half };

// basis order k = 0, 1, -1, 2, -2, ...
std::vector<int> annulus_modes(int K);
WeightedOperator annulus_restriction(double s, double r, int K, BoundaryNorm norm = BoundaryNorm::l2);

// ---- Schroedinger DtN on the unit disk -----------------------------------

struct Potential {
    std::string name;
    std::function<double(double r, double theta)> q;
    bool radial = false;
    double support = 0.5;  // supp q inside the disk of this radius
    double bound = 1.0;    // sup |q|
};

Potential zero_potential();
// cos^2(pi r / (2R)) * amp on r < R
Potential radial_bump(double amp = 1.0, double R = 0.5);
// same profile centered at (cx, cy)
Potential shifted_bump(double amp, double R, double cx, double cy);

struct DtnConfig {
    int n_modes = 20;  // trigonometric modes 0..n_modes (real basis of size 2 n_modes + 1)
    int n_r = 256;
    int n_theta = 256;
    Potential q = zero_potential();
    bool force_2d = false;
    double solver_tol = 1e-10;
};

struct DtnResult {
    WeightedOperator op;  // Lambda_q - Lambda_0
    bool flagged = false;
    std::string diagnostic;
    double condition_estimate = 0;
};

// real orthonormal basis 1/sqrt(2pi), cos(m t)/sqrt(pi), sin(m t)/sqrt(pi), ...
std::vector<int> dtn_mode_numbers(int n_modes);
DtnResult disk_dtn(const DtnConfig& cfg);
// Lambda_0 from the discrete Dirichlet energy of discrete harmonic extensions.
WeightedOperator disk_dtn_lambda0(const DtnConfig& cfg);
// domain sobolev(1/2, 1), codomain sobolev(-1/2, 1) in the DtN basis ordering.
void attach_half_weights(WeightedOperator& op, const DtnConfig& cfg);

// ---- Radon -----------------------------------------------------------------

struct RadonConfig {
    int n_pix = 64;
    std::vector<double> angles;
    std::vector<double> offsets;
    std::vector<std::pair<int, int>> mask;  // (angle index, offset index) rows, in this order
};

RadonConfig radon_full(int n_pix, int n_angles, int n_offsets);
// Removes phi in [start, start + width) and its image under (phi, s) -> (phi + pi, -s).
RadonConfig radon_limited(int n_pix, int n_angles, int n_offsets, double start, double width);
bool mask_symmetric(const RadonConfig& cfg);
// pixel indices (row-major over the n_pix^2 grid on [-1,1]^2) meeting the unit disk
std::vector<int> radon_pixels(int n_pix);
WeightedOperator radon_matrix(const RadonConfig& cfg);
// Exact length of the line x.theta(phi) = s inside each pixel of the grid.
std::vector<std::pair<int, double>> line_pixel_lengths(int n_pix, double phi, double s);

// ---- three-ball ratios -----------------------------------------------------

struct ThreeBall {
    double ratio_mid;
    double ratio_small;
};

ThreeBall three_ball_ratios(int ell, int n, double r1, double r, double r2);

}  // namespace illab
