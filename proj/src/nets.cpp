#include "illab/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <numeric>

#include "illab/error.hpp"

namespace illab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Ball {
    Vec c;
    double r2 = -1;  // empty
};

// Smallest ball with all of `support` on its boundary (center in their affine hull).
Ball circumball(const Mat& P, const std::vector<int>& support, int d) {
    Ball b;
    if (support.empty()) {
        b.c = Vec::Zero(d);
        b.r2 = -1;
        return b;
    }
    const Vec p0 = P.col(support[0]);
    const int m = int(support.size()) - 1;
    if (m == 0) {
        b.c = p0;
        b.r2 = 0;
        return b;
    }
    Mat Q(d, m);
    Vec rhs(m);
    for (int i = 0; i < m; ++i) {
        Q.col(i) = P.col(support[i + 1]) - p0;
        rhs(i) = Q.col(i).squaredNorm();
    }
    const Mat G = 2.0 * Q.transpose() * Q;
    const Vec lam = G.completeOrthogonalDecomposition().solve(rhs);
    b.c = p0 + Q * lam;
    b.r2 = 0;
    for (int i : support) b.r2 = std::max(b.r2, (P.col(i) - b.c).squaredNorm());
    return b;
}

bool inside(const Ball& b, const Vec& p) {
    if (b.r2 < 0) return false;
    return (p - b.c).squaredNorm() <= b.r2 * (1 + 1e-12) + 1e-300;
}

// Move-to-front miniball; recursion depth bounded by d + 1.
void mtf_mb(const Mat& P, std::list<int>& L, std::list<int>::iterator end, std::vector<int>& support,
            Ball& mb, int d) {
    mb = circumball(P, support, d);
    if (int(support.size()) == d + 1) return;
    for (auto it = L.begin(); it != end;) {
        auto cur = it++;
        if (!inside(mb, P.col(*cur))) {
            support.push_back(*cur);
            mtf_mb(P, L, cur, support, mb, d);
            support.pop_back();
            L.splice(L.begin(), L, cur);
        }
    }
}

Ball min_enclosing_ball(const Mat& P, const std::vector<int>& idx) {
    const int d = int(P.rows());
    std::list<int> L(idx.begin(), idx.end());
    std::vector<int> support;
    Ball mb;
    mtf_mb(P, L, L.end(), support, mb, d);
    return mb;
}

std::vector<double> positive_axes(const std::vector<double>& sigma) {
    require(!sigma.empty() && sigma.size() <= 3, "brute-force nets: dimension must be 1..3");
    std::vector<double> s;
    for (double x : sigma) {
        require(x >= 0 && std::isfinite(x), "brute-force nets: semi-axes must be finite and >= 0");
        if (x > 0) s.push_back(x);
    }
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

// Grid cells of width g meeting the ellipsoid; returns their centers.
Mat cover_samples(const std::vector<double>& s, double g) {
    const int d = int(s.size());
    std::vector<int> n(d);
    for (int i = 0; i < d; ++i) n[i] = int(std::ceil(s[i] / g));
    std::vector<std::vector<double>> pts;
    std::vector<int> idx(d, 0);
    for (int i = 0; i < d; ++i) idx[i] = -n[i];
    while (true) {
        double q = 0;
        std::vector<double> c(d);
        for (int i = 0; i < d; ++i) {
            const double a = idx[i] * g, b = a + g;
            const double m = (a <= 0 && b >= 0) ? 0.0 : std::min(a * a, b * b);
            q += m / (s[i] * s[i]);
            c[i] = a + 0.5 * g;
        }
        if (q <= 1.0) pts.push_back(c);
        int i = 0;
        while (i < d && ++idx[i] >= n[i]) {
            idx[i] = -n[i];
            ++i;
        }
        if (i == d) break;
    }
    Mat P(d, pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j)
        for (int i = 0; i < d; ++i) P(i, j) = pts[j][i];
    return P;
}

// Points of the ellipsoid: axis points, lattice nodes and boundary samples.
Mat packing_candidates(const std::vector<double>& s, double g) {
    const int d = int(s.size());
    std::vector<Vec> pts;
    pts.push_back(Vec::Zero(d));
    for (int i = 0; i < d; ++i)
        for (double sg : {1.0, -1.0}) {
            Vec v = Vec::Zero(d);
            v(i) = sg * s[i];
            pts.push_back(v);
        }
    std::vector<int> n(d), idx(d);
    for (int i = 0; i < d; ++i) {
        n[i] = int(std::floor(s[i] / g));
        idx[i] = -n[i];
    }
    while (true) {
        Vec v(d);
        double q = 0;
        for (int i = 0; i < d; ++i) {
            v(i) = idx[i] * g;
            q += v(i) * v(i) / (s[i] * s[i]);
        }
        if (q <= 1.0) pts.push_back(v);
        int i = 0;
        while (i < d && ++idx[i] > n[i]) {
            idx[i] = -n[i];
            ++i;
        }
        if (i == d) break;
    }
    if (d >= 2) {
        const double circ = 2 * M_PI * s[0];
        const int m = std::max(16, int(std::ceil(circ / g)));
        if (d == 2) {
            for (int t = 0; t < m; ++t) {
                const double a = 2 * M_PI * t / m;
                Vec v(2);
                v << s[0] * std::cos(a), s[1] * std::sin(a);
                pts.push_back(v);
            }
        } else {
            const int mt = std::max(8, m / 2);
            for (int u = 1; u < mt; ++u) {
                const double th = M_PI * u / mt;
                const int mp = std::max(4, int(std::ceil(m * std::sin(th))));
                for (int t = 0; t < mp; ++t) {
                    const double ph = 2 * M_PI * t / mp;
                    Vec v(3);
                    v << s[0] * std::sin(th) * std::cos(ph), s[1] * std::sin(th) * std::sin(ph),
                        s[2] * std::cos(th);
                    pts.push_back(v);
                }
            }
        }
    }
    Mat P(d, pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) P.col(j) = pts[j];
    return P;
}

struct Assign {
    std::vector<int> owner;
    double radius = 0;
};

Assign assign(const Mat& P, const Mat& Z) {
    Assign a;
    a.owner.resize(P.cols());
    for (Eigen::Index j = 0; j < P.cols(); ++j) {
        double best = kInf;
        int bi = 0;
        for (Eigen::Index z = 0; z < Z.cols(); ++z) {
            const double d2 = (P.col(j) - Z.col(z)).squaredNorm();
            if (d2 < best) {
                best = d2;
                bi = int(z);
            }
        }
        a.owner[j] = bi;
        a.radius = std::max(a.radius, best);
    }
    a.radius = std::sqrt(a.radius);
    return a;
}

// Lloyd-style k-center: alternate nearest assignment and minimal enclosing balls.
double refine_centers(const Mat& P, Mat& Z, long& evals, long budget) {
    Assign a = assign(P, Z);
    evals += long(P.cols() * Z.cols());
    for (int it = 0; it < 200 && evals < budget; ++it) {
        Mat Znew = Z;
        std::vector<std::vector<int>> cl(Z.cols());
        for (std::size_t j = 0; j < a.owner.size(); ++j) cl[a.owner[j]].push_back(int(j));
        for (Eigen::Index z = 0; z < Z.cols(); ++z)
            if (!cl[z].empty()) Znew.col(z) = min_enclosing_ball(P, cl[z]).c;
        Assign b = assign(P, Znew);
        evals += long(P.cols() * Z.cols());
        if (b.radius >= a.radius * (1 - 1e-13)) break;
        Z = Znew;
        a = std::move(b);
    }
    return a.radius;
}

Mat farthest_first(const Mat& P, int N) {
    const int d = int(P.rows());
    Mat Z(d, N);
    Eigen::Index first = 0;
    double bn = -1;
    for (Eigen::Index j = 0; j < P.cols(); ++j)
        if (P.col(j).norm() > bn) {
            bn = P.col(j).norm();
            first = j;
        }
    Z.col(0) = P.col(first);
    std::vector<double> dist(P.cols());
    for (Eigen::Index j = 0; j < P.cols(); ++j) dist[j] = (P.col(j) - Z.col(0)).norm();
    for (int z = 1; z < N; ++z) {
        const auto far = std::max_element(dist.begin(), dist.end()) - dist.begin();
        Z.col(z) = P.col(far);
        for (Eigen::Index j = 0; j < P.cols(); ++j) dist[j] = std::min(dist[j], (P.col(j) - Z.col(z)).norm());
    }
    return Z;
}

Mat axis_layout(const std::vector<double>& s, int N) {
    Mat Z = Mat::Zero(int(s.size()), N);
    for (int i = 0; i < N; ++i) Z(0, i) = s[0] * (2.0 * i + 1 - N) / N;
    return Z;
}

double min_pairwise(const Mat& X) {
    double m = kInf;
    for (Eigen::Index i = 0; i < X.cols(); ++i)
        for (Eigen::Index j = i + 1; j < X.cols(); ++j) m = std::min(m, (X.col(i) - X.col(j)).norm());
    return m;
}

Mat best_packing(const Mat& C, int P, long& evals, long budget) {
    const int d = int(C.rows());
    Mat X(d, P);
    std::vector<Eigen::Index> chosen;
    Eigen::Index first = 0;
    double bn = -1;
    for (Eigen::Index j = 0; j < C.cols(); ++j)
        if (C.col(j).norm() > bn) {
            bn = C.col(j).norm();
            first = j;
        }
    chosen.push_back(first);
    std::vector<double> dist(C.cols());
    for (Eigen::Index j = 0; j < C.cols(); ++j) dist[j] = (C.col(j) - C.col(first)).norm();
    while (int(chosen.size()) < P) {
        const auto far = std::max_element(dist.begin(), dist.end()) - dist.begin();
        chosen.push_back(far);
        for (Eigen::Index j = 0; j < C.cols(); ++j) dist[j] = std::min(dist[j], (C.col(j) - C.col(far)).norm());
    }
    evals += long(C.cols()) * P;
    // local improvement: move one point at a time to the candidate farthest from the rest
    for (int sweep = 0; sweep < 20 && evals < budget; ++sweep) {
        bool moved = false;
        for (int i = 0; i < P; ++i) {
            auto own = [&](Eigen::Index cand) {
                double m = kInf;
                for (int j = 0; j < P; ++j)
                    if (j != i) m = std::min(m, (C.col(cand) - C.col(chosen[j])).norm());
                return m;
            };
            const double cur = own(chosen[i]);
            double best = cur;
            Eigen::Index bi = chosen[i];
            for (Eigen::Index c = 0; c < C.cols(); ++c) {
                const double v = own(c);
                if (v > best * (1 + 1e-12)) {
                    best = v;
                    bi = c;
                }
            }
            evals += long(C.cols()) * P;
            if (bi != chosen[i]) {
                chosen[i] = bi;
                moved = true;
            }
        }
        if (!moved) break;
    }
    for (int i = 0; i < P; ++i) X.col(i) = C.col(chosen[i]);
    return X;
}

double packing_lower(const std::vector<double>& s, int k, double g, long& evals, long budget) {
    const Mat C = packing_candidates(s, g);
    const int P = (1 << (k - 1)) + 1;
    return 0.5 * min_pairwise(best_packing(C, P, evals, budget));
}

void check_k(int k) { require(k >= 1 && k <= 7, "brute-force nets: need 1 <= k and 2^(k-1) <= 64"); }

}  // namespace

double PointCloud::distance(std::size_t i, std::size_t j) const {
    if (weights.empty()) return (points.col(i) - points.col(j)).norm();
    double s = 0;
    for (int r = 0; r < dim(); ++r) {
        const double t = weights[r] * (points(r, i) - points(r, j));
        s += t * t;
    }
    return std::sqrt(s);
}

double PointCloud::norm(std::size_t i) const {
    if (weights.empty()) return points.col(i).norm();
    double s = 0;
    for (int r = 0; r < dim(); ++r) s += std::pow(weights[r] * points(r, i), 2);
    return std::sqrt(s);
}

std::vector<std::size_t> greedy_discrete(const PointCloud& cloud, double eps) {
    require(cloud.size() > 0, "greedy_discrete: empty cloud");
    require(eps > 0, "greedy_discrete: eps must be > 0");
    require(cloud.weights.empty() || int(cloud.weights.size()) == cloud.dim(),
            "greedy_discrete: weight length must match point dimension");
    std::size_t seed = 0;
    double best = -1;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double n = cloud.norm(i);
        if (n > best) {
            best = n;
            seed = i;
        }
    }
    std::vector<std::size_t> sel{seed};
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (i == seed) continue;
        bool ok = true;
        for (std::size_t s : sel)
            if (cloud.distance(i, s) < eps) {
                ok = false;
                break;
            }
        if (ok) sel.push_back(i);
    }
    return sel;
}

NetCheck check_net(const PointCloud& cloud, const std::vector<std::size_t>& subset) {
    NetCheck r{kInf, 0.0};
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b)
            r.min_pairwise = std::min(r.min_pairwise, cloud.distance(subset[a], subset[b]));
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        double m = kInf;
        for (std::size_t s : subset) m = std::min(m, cloud.distance(i, s));
        r.covering_radius = std::max(r.covering_radius, m);
    }
    return r;
}

double entropy_volume_bound(const std::vector<double>& sigma, int k) {
    const auto s = positive_axes(sigma);
    double best = 0, logprod = 0;
    for (std::size_t p = 1; p <= s.size(); ++p) {
        logprod += std::log(s[p - 1]);
        best = std::max(best, std::exp((logprod - (k - 1) * std::log(2.0)) / double(p)));
    }
    return best;
}

Bracket entropy_bruteforce(const std::vector<double>& sigma, int k, double resolution, long budget) {
    check_k(k);
    require(resolution > 0, "entropy_bruteforce: resolution must be > 0");
    const auto s = positive_axes(sigma);
    Bracket br;
    br.k = k;
    if (s.empty()) {
        br.certified = true;
        return br;
    }
    const int d = int(s.size());
    const int N = 1 << (k - 1);
    long evals = 0;
    double g = s[0] / 4;
    br.hi = kInf;
    br.lo = entropy_volume_bound(s, k);
    Mat Zprev;
    while (true) {
        const Mat P = cover_samples(s, g);
        if (evals > 0 && evals + long(P.cols()) * N * 4 > budget) break;
        std::vector<Mat> inits = {farthest_first(P, N), axis_layout(s, N)};
        if (Zprev.size() > 0) inits.push_back(Zprev);
        double R = kInf;
        for (Mat Z : inits) {
            const double r = refine_centers(P, Z, evals, budget);
            if (r < R) {
                R = r;
                Zprev = Z;
            }
        }
        br.hi = std::min(br.hi, R + 0.5 * g * std::sqrt(double(d)));
        br.lo = std::max(br.lo, packing_lower(s, k, g, evals, budget));
        if (br.hi - br.lo <= resolution * br.hi) {
            br.certified = true;
            break;
        }
        if (evals >= budget || g < s[0] * 1e-6) break;
        g /= 2;
    }
    br.hi = std::max(br.hi, br.lo);
    br.evaluations = evals;
    return br;
}

Eigen::MatrixXd capacity_packing(const std::vector<double>& sigma, int k) {
    check_k(k);
    const auto s = positive_axes(sigma);
    require(!s.empty(), "capacity_packing: zero operator");
    long evals = 0;
    return best_packing(packing_candidates(s, s[0] / 64), (1 << (k - 1)) + 1, evals, 10'000'000);
}

Bracket capacity_bruteforce(const std::vector<double>& sigma, int k, double resolution, long budget) {
    const Bracket e = entropy_bruteforce(sigma, k, resolution, budget);
    const auto s = positive_axes(sigma);
    Bracket br;
    br.k = k;
    br.hi = e.hi;
    if (s.empty()) {
        br.certified = true;
        return br;
    }
    long evals = 0;
    double g = s[0] / 4;
    while (true) {
        br.lo = std::max(br.lo, packing_lower(s, k, g, evals, budget));
        if (br.hi - br.lo <= resolution * br.hi) {
            br.certified = true;
            break;
        }
        if (evals >= budget || g < s[0] / 512) break;
        g /= 2;
    }
    br.evaluations = evals + e.evaluations;
    return br;
}

bool entropy_capacity_sandwich(const Bracket& e, const Bracket& c, double resolution) {
    const bool half = c.lo >= 0.5 * e.hi * (1 - resolution);
    const bool below = c.lo <= e.hi * (1 + resolution);
    const bool spec_form = c.lo >= e.lo / 2 - resolution && c.hi <= e.hi + resolution;
    return half && below && spec_form;
}

}  // namespace illab
