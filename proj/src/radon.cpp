#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "illab/error.hpp"
#include "illab/forward_ops.hpp"

namespace illab {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double a) {
    a = std::fmod(a, 2 * kPi);
    return a < 0 ? a + 2 * kPi : a;
}

bool in_sector(double phi, double start, double width) {
    const double d = wrap(phi - start);
    return d < width - 1e-12 || d > 2 * kPi - 1e-12;
}

}  // namespace

RadonConfig radon_full(int n_pix, int n_angles, int n_offsets) {
    require(n_pix >= 1, "radon: n_pix must be >= 1");
    require(n_angles >= 1, "radon: n_angles must be >= 1");
    require(n_offsets >= 2, "radon: n_offsets must be >= 2");
    RadonConfig c;
    c.n_pix = n_pix;
    for (int i = 0; i < n_angles; ++i) c.angles.push_back(2 * kPi * i / n_angles);
    for (int j = 0; j < n_offsets; ++j) c.offsets.push_back(-1.0 + 2.0 * j / (n_offsets - 1));
    for (int i = 0; i < n_angles; ++i)
        for (int j = 0; j < n_offsets; ++j) c.mask.emplace_back(i, j);
    return c;
}

RadonConfig radon_limited(int n_pix, int n_angles, int n_offsets, double start, double width) {
    require(width > 0 && width < kPi, "radon_limited: removed sector width must lie in (0, pi)");
    RadonConfig c = radon_full(n_pix, n_angles, n_offsets);
    c.mask.clear();
    for (int i = 0; i < n_angles; ++i) {
        const double phi = c.angles[i];
        if (in_sector(phi, start, width) || in_sector(phi, start + kPi, width)) continue;
        for (int j = 0; j < n_offsets; ++j) c.mask.emplace_back(i, j);
    }
    return c;
}

bool mask_symmetric(const RadonConfig& cfg) {
    std::vector<std::pair<int, int>> sorted = cfg.mask;
    std::sort(sorted.begin(), sorted.end());
    auto find_index = [](const std::vector<double>& v, double x) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (std::abs(v[i] - x) < 1e-9) return int(i);
        return -1;
    };
    for (auto [i, j] : cfg.mask) {
        const int ii = find_index(cfg.angles, wrap(cfg.angles[i] + kPi));
        const int jj = find_index(cfg.offsets, -cfg.offsets[j]);
        if (ii < 0 || jj < 0) return false;
        if (!std::binary_search(sorted.begin(), sorted.end(), std::make_pair(ii, jj))) return false;
    }
    return true;
}

std::vector<int> radon_pixels(int n_pix) {
    const double w = 2.0 / n_pix;
    std::vector<int> out;
    for (int iy = 0; iy < n_pix; ++iy)
        for (int ix = 0; ix < n_pix; ++ix) {
            const double x0 = -1 + ix * w, y0 = -1 + iy * w;
            const double cx = std::clamp(0.0, x0, x0 + w), cy = std::clamp(0.0, y0, y0 + w);
            if (cx * cx + cy * cy < 1.0) out.push_back(iy * n_pix + ix);
        }
    return out;
}

std::vector<std::pair<int, double>> line_pixel_lengths(int n_pix, double phi, double s) {
    // points s*theta + t*theta_perp, theta = (cos, sin), theta_perp = (-sin, cos)
    const double c = std::cos(phi), sn = std::sin(phi);
    const double px = s * c, py = s * sn, dx = -sn, dy = c;
    const double w = 2.0 / n_pix;
    double tmin = -INFINITY, tmax = INFINITY;
    auto clip = [&](double p, double d) {
        if (std::abs(d) < 1e-15) return std::abs(p) <= 1.0;
        const double a = (-1 - p) / d, b = (1 - p) / d;
        tmin = std::max(tmin, std::min(a, b));
        tmax = std::min(tmax, std::max(a, b));
        return true;
    };
    if (!clip(px, dx) || !clip(py, dy) || !(tmin < tmax)) return {};
    std::vector<double> ts{tmin, tmax};
    for (int k = 0; k <= n_pix; ++k) {
        const double g = -1 + k * w;
        if (std::abs(dx) >= 1e-15) ts.push_back((g - px) / dx);
        if (std::abs(dy) >= 1e-15) ts.push_back((g - py) / dy);
    }
    std::erase_if(ts, [&](double t) { return t < tmin || t > tmax; });
    std::sort(ts.begin(), ts.end());
    std::vector<std::pair<int, double>> out;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
        const double len = ts[k + 1] - ts[k];
        if (len <= 1e-14) continue;
        const double tm = 0.5 * (ts[k] + ts[k + 1]);
        const int ix = std::clamp(int(std::floor((px + tm * dx + 1) / w)), 0, n_pix - 1);
        const int iy = std::clamp(int(std::floor((py + tm * dy + 1) / w)), 0, n_pix - 1);
        const int id = iy * n_pix + ix;
        if (!out.empty() && out.back().first == id)
            out.back().second += len;
        else
            out.emplace_back(id, len);
    }
    return out;
}

WeightedOperator radon_matrix(const RadonConfig& cfg) {
    require(cfg.n_pix >= 1, "radon: n_pix must be >= 1");
    require(!cfg.mask.empty(), "radon: empty mask");
    const auto pix = radon_pixels(cfg.n_pix);
    std::vector<int> col(std::size_t(cfg.n_pix) * cfg.n_pix, -1);
    for (std::size_t k = 0; k < pix.size(); ++k) col[pix[k]] = int(k);
    WeightedOperator op;
    op.matrix = Eigen::MatrixXd::Zero(Eigen::Index(cfg.mask.size()), Eigen::Index(pix.size()));
    for (std::size_t r = 0; r < cfg.mask.size(); ++r) {
        const auto [i, j] = cfg.mask[r];
        require(i >= 0 && i < int(cfg.angles.size()) && j >= 0 && j < int(cfg.offsets.size()),
                "radon: mask index out of range");
        for (auto [id, len] : line_pixel_lengths(cfg.n_pix, cfg.angles[i], cfg.offsets[j]))
            if (col[id] >= 0) op.matrix(Eigen::Index(r), col[id]) += len;
    }
    op.domain = unit_weights(int(pix.size()));
    op.codomain = unit_weights(int(cfg.mask.size()));
    std::ostringstream os;
    os << "radon(n_pix=" << cfg.n_pix << ", rows=" << cfg.mask.size() << ", cols=" << pix.size() << ")";
    op.label = os.str();
    return op;
}

}  // namespace illab
