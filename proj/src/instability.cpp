#include "illab/instability.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "illab/error.hpp"

namespace illab {

double WeightedBall::norm(const Eigen::VectorXd& x) const {
    require(std::size_t(x.size()) <= kappa.size(), "weighted ball: vector longer than the kappa sequence");
    double s = 0;
    for (Eigen::Index j = 0; j < x.size(); ++j) s += std::pow(kappa[std::size_t(j)] * x(j), 2);
    return std::sqrt(s);
}

bool WeightedBall::contains(const Eigen::VectorXd& x, double rtol) const { return norm(x) <= radius * (1 + rtol); }

void verify_certificate(const InstabilityCertificate& c, const Evaluator& F, const WeightedBall& K) {
    const double dd = (c.x1 - c.x2).norm();
    const double id = (F(c.x1) - F(c.x2)).norm();
    std::ostringstream os;
    if (!(dd >= c.eps * (1 - 1e-12))) os << "domain distance " << dd << " < eps " << c.eps << "; ";
    if (!(id <= 2 * c.delta * (1 + 1e-9) + 1e-300)) os << "image distance " << id << " > 2 delta " << 2 * c.delta << "; ";
    if (!K.contains(c.x1) || !K.contains(c.x2)) os << "witness outside K; ";
    if (std::abs(dd - c.domain_distance) > 1e-12 * std::max(1.0, dd)) os << "stored domain distance mismatch; ";
    if (std::abs(id - c.image_distance) > 1e-9 * std::max(id, 1e-300) + 1e-300) os << "stored image distance mismatch; ";
    if (!os.str().empty()) throw NumericalError("certificate verification failed: " + os.str());
}

namespace {

std::vector<int> centered_values(int m) {
    std::vector<int> v{0};
    for (int k = 1; k <= m; ++k) {
        v.push_back(k);
        v.push_back(-k);
    }
    return v;
}

struct Greedy {
    std::vector<int> centers;
    std::vector<int> owner;  // per point: nearest center index into `centers` for rejected points, -1 otherwise
};

Greedy greedy_net(const std::vector<Eigen::VectorXd>& pts, double delta) {
    Greedy g;
    g.owner.assign(pts.size(), -1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        int best = -1;
        double bd = INFINITY;
        for (std::size_t c = 0; c < g.centers.size(); ++c) {
            const double d = (pts[i] - pts[std::size_t(g.centers[c])]).norm();
            if (d < bd) {
                bd = d;
                best = int(c);
            }
        }
        if (best >= 0 && bd < delta)
            g.owner[i] = best;
        else
            g.centers.push_back(int(i));
    }
    return g;
}

}  // namespace

WitnessResult pigeonhole_witness(const Evaluator& F, const WeightedBall& K, double eps, const PigeonholeOptions& opt) {
    require(eps > 0, "pigeonhole_witness: eps must be > 0");
    require(K.radius > 0 && K.kappa.size() >= 1, "pigeonhole_witness: empty compact set");
    require(opt.sample_budget >= 2, "pigeonhole_witness: sample budget must be >= 2");
    WitnessResult res;
    const int J = int(K.kappa.size());
    int D = J;
    for (int j = 0; j < J; ++j)
        if (K.kappa[std::size_t(j)] > K.radius / eps) {
            D = j + 1;
            break;
        }
    D = std::min(D, 12);
    res.stats.dimension = D;

    // lattice of spacing eps/2 on the active coordinates, kept inside K
    const double h = eps / 2;
    std::vector<std::vector<int>> vals(static_cast<std::size_t>(D));
    for (int j = 0; j < D; ++j)
        vals[std::size_t(j)] = centered_values(int(std::floor(K.radius / (K.kappa[std::size_t(j)] * h))));
    std::vector<Eigen::VectorXd> cand;
    std::vector<std::size_t> idx(std::size_t(D), 0);
    bool done = false;
    while (!done && int(cand.size()) < opt.sample_budget) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(J);
        for (int j = 0; j < D; ++j) x(j) = h * vals[std::size_t(j)][idx[std::size_t(j)]];
        if (K.contains(x, 0.0)) cand.push_back(std::move(x));
        int j = D - 1;
        while (j >= 0) {
            if (++idx[std::size_t(j)] < vals[std::size_t(j)].size()) break;
            idx[std::size_t(j)] = 0;
            --j;
        }
        done = j < 0;
    }
    res.stats.candidates = int(cand.size());

    // eps-discrete refinement (inclusive separation)
    std::vector<Eigen::VectorXd> X;
    for (auto& x : cand) {
        bool ok = true;
        for (const auto& y : X)
            if ((x - y).norm() < eps) {
                ok = false;
                break;
            }
        if (ok) X.push_back(x);
    }
    res.stats.discrete_size = int(X.size());
    if (X.size() < 2) {
        res.diagnostic = "eps-discrete set has fewer than two points; eps too large for K";
        return res;
    }

    std::vector<Eigen::VectorXd> Y;
    Y.reserve(X.size());
    for (const auto& x : X) Y.push_back(F(x));
    double norm = 0;
    if (opt.op_norm)
        norm = *opt.op_norm;
    else
        for (std::size_t i = 0; i < X.size(); ++i)
            if (X[i].norm() > 0) norm = std::max(norm, Y[i].norm() / X[i].norm());

    std::optional<InstabilityCertificate> best;
    auto try_delta = [&](double delta) {
        const Greedy g = greedy_net(Y, delta);
        res.stats.nets.emplace_back(delta, int(g.centers.size()));
        if (g.centers.size() >= X.size()) return false;
        int bi = -1;
        double bd = INFINITY;
        for (std::size_t i = 0; i < X.size(); ++i) {
            if (g.owner[i] < 0) continue;
            const double d = (Y[i] - Y[std::size_t(g.centers[std::size_t(g.owner[i])])]).norm();
            if (d < bd) {
                bd = d;
                bi = int(i);
            }
        }
        const std::size_t c = std::size_t(g.centers[std::size_t(g.owner[std::size_t(bi)])]);
        InstabilityCertificate cert;
        cert.x1 = X[c];
        cert.x2 = X[std::size_t(bi)];
        cert.domain_distance = (cert.x1 - cert.x2).norm();
        cert.image_distance = (Y[c] - Y[std::size_t(bi)]).norm();
        cert.eps = eps;
        cert.delta = delta;
        cert.modulus_curve = {{cert.image_distance, cert.domain_distance}};
        cert.provenance = "pigeonhole";
        best = cert;
        return true;
    };

    if (norm == 0) {
        try_delta(eps / 4);
    } else {
        for (int i = 1; i <= opt.max_halvings; ++i) {
            const double delta = std::ldexp(norm, -i);
            if (delta >= eps / 2) continue;
            if (!try_delta(delta)) break;
        }
    }
    if (!best) {
        std::ostringstream os;
        os << "no collision at any delta < eps/2: |X_eps| = " << X.size() << ", net sizes";
        for (auto [d, n] : res.stats.nets) os << " (" << d << ", " << n << ")";
        res.diagnostic = os.str();
        return res;
    }
    verify_certificate(*best, F, K);
    res.certificate = best;
    return res;
}

Evaluator weighted_evaluator(const WeightedOperator& op) {
    const Eigen::MatrixXd W = op.weighted();
    return [W](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        require(y.size() == W.cols(), "operator evaluation: dimension mismatch");
        return W * y;
    };
}

int spectral_cutoff(const WeightSequence& kappa, double eps) {
    require(eps > 0, "spectral cutoff: eps must be > 0");
    int N = 0;
    for (std::size_t j = 0; j < kappa.size(); ++j)
        if (kappa[j] <= 1 / eps) N = int(j) + 1;
    return N;
}

InstabilityCertificate spectral_witness(const WeightedOperator& op, const WeightSequence& kappa, double eps) {
    op.validate();
    require(kappa.nondecreasing(), "spectral_witness: kappa must be nondecreasing");
    require(kappa.size() >= std::size_t(op.cols()), "spectral_witness: kappa shorter than the domain");
    const int N = spectral_cutoff(kappa, eps);
    require(N >= 1, "spectral_witness: eps too large, N(eps) = 0");
    require(N <= op.cols(), "spectral_witness: N(eps) exceeds the domain dimension");
    const SpectrumReport rep = weighted_svd(op);
    if (N > rep.resolved) {
        std::ostringstream os;
        os << "spectral_witness: N(eps) = " << N << " exceeds the resolved spectrum (" << rep.resolved << ")";
        throw NumericalError(os.str());
    }
    const Eigen::MatrixXd W = op.weighted();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(W.leftCols(N), Eigen::ComputeFullV);
    const Eigen::VectorXd v = svd.matrixV().col(N - 1);
    const Eigen::VectorXd u = eps * v;
    InstabilityCertificate c;
    c.x1 = Eigen::VectorXd::Zero(op.cols());
    c.x1.head(N) = u;
    c.x2 = -c.x1;
    const double img = (W * c.x1).norm();
    c.eps = eps;
    c.delta = img;
    c.domain_distance = (c.x1 - c.x2).norm();
    c.image_distance = (W * (c.x1 - c.x2)).norm();
    c.modulus_curve = {{c.image_distance, c.domain_distance}};
    c.provenance = "spectral";
    const double bound = rep.sigmas[std::size_t(N - 1)] * eps;
    if (!(img <= bound * (1 + 1e-8) + 1e-15 * rep.sigmas[0] * eps)) {
        std::ostringstream os;
        os << "spectral_witness: ||op u|| = " << img << " exceeds sigma_N eps = " << bound;
        throw NumericalError(os.str());
    }
    verify_certificate(c, weighted_evaluator(op), WeightedBall{kappa, 1.0});
    return c;
}

Eta eta_power(double alpha, double c) {
    require(alpha > 0 && alpha <= 1 && c > 0, "eta_power: need 0 < alpha <= 1 and c > 0");
    std::ostringstream os;
    os << c << "*t^" << alpha;
    return {os.str(), [alpha, c](double t) { return c * std::pow(t, alpha); }};
}

Eta eta_identity() {
    return {"t", [](double t) { return t; }};
}

Eta eta_log(double mu, double c) {
    require(mu > 0 && c > 0, "eta_log: need mu > 0 and c > 0");
    std::ostringstream os;
    os << c << "*|log t|^-" << mu;
    return {os.str(), [mu, c](double t) { return t >= 1 ? c : c * std::pow(-std::log(t), -mu); }};
}

namespace {

void check_eta_shape(const Eta& eta, double tmin, double tmax) {
    if (!(tmin < tmax)) {
        tmin *= 0.5;
        tmax *= 2;
    }
    const int n = 64;
    std::vector<double> t(n), e(n);
    const double l0 = std::log(tmin), l1 = std::log(tmax);
    for (int i = 0; i < n; ++i) {
        t[std::size_t(i)] = std::exp(l0 + (l1 - l0) * i / (n - 1));
        e[std::size_t(i)] = eta.f(t[std::size_t(i)]);
    }
    auto fail = [&](const char* what, int i) {
        std::ostringstream os;
        os << "eta '" << eta.name << "' is not " << what << " near t = " << t[std::size_t(i)];
        throw ConfigError(os.str());
    };
    double prev_slope = INFINITY;
    for (int i = 0; i + 1 < n; ++i) {
        const std::size_t a = std::size_t(i), b = a + 1;
        if (!(e[a] > 0) || !(e[b] > e[a])) fail("positive and increasing", i);
        const double slope = (e[b] - e[a]) / (t[b] - t[a]);
        if (slope > prev_slope * (1 + 1e-9)) fail("concave", i);
        prev_slope = slope;
        if (e[b] / t[b] > e[a] / t[a] * (1 + 1e-9)) fail("such that eta(t)/t is nonincreasing", i);
    }
}

}  // namespace

StabilityCheck holder_stability_check(const std::vector<double>& sigmas, const WeightSequence& kappa, const Eta& eta,
                                      int J) {
    require(J >= 1 && std::size_t(J) <= sigmas.size() && std::size_t(J) <= kappa.size(),
            "holder_stability_check: J out of range");
    std::vector<double> t(static_cast<std::size_t>(J));
    for (int j = 0; j < J; ++j) {
        require(sigmas[std::size_t(j)] > 0 && kappa[std::size_t(j)] > 0, "holder_stability_check: nonpositive entry");
        t[std::size_t(j)] = std::pow(sigmas[std::size_t(j)] / kappa[std::size_t(j)], 2);
    }
    check_eta_shape(eta, *std::min_element(t.begin(), t.end()), *std::max_element(t.begin(), t.end()));
    StabilityCheck out;
    for (int j = 0; j < J; ++j) {
        const double lhs = std::pow(kappa[std::size_t(j)], -2);
        const double rhs = eta.f(t[std::size_t(j)]);
        if (!(lhs <= rhs * (1 + 1e-12))) {
            out.pass = false;
            out.first_violation = j + 1;
            out.lhs = lhs;
            out.rhs = rhs;
            break;
        }
    }
    return out;
}

BruteForceStability holder_stability_bruteforce(const std::vector<double>& sigmas, const WeightSequence& kappa,
                                                const Eta& eta, int J, int samples, std::uint64_t seed) {
    require(J >= 1 && std::size_t(J) <= sigmas.size() && std::size_t(J) <= kappa.size(),
            "holder_stability_bruteforce: J out of range");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif;
    std::uniform_int_distribution<int> pick(0, J - 1);
    BruteForceStability out;
    Eigen::VectorXd f(J);
    for (int s = 0; s < samples; ++s) {
        f.setZero();
        if (s % 2 == 0) {
            for (int j = 0; j < J; ++j) f(j) = normal(rng);
        } else {
            const int m = 1 + s / 2 % 3;
            for (int k = 0; k < m; ++k) f(pick(rng)) = normal(rng);
        }
        double kn = 0;
        for (int j = 0; j < J; ++j) kn += std::pow(kappa[std::size_t(j)] * f(j), 2);
        if (!(kn > 0)) continue;
        f *= std::sqrt(unif(rng)) / std::sqrt(kn);
        double fn = 0, an = 0;
        for (int j = 0; j < J; ++j) {
            fn += f(j) * f(j);
            an += std::pow(sigmas[std::size_t(j)] * f(j), 2);
        }
        const double r = fn / eta.f(an);
        ++out.samples;
        out.worst_ratio = std::max(out.worst_ratio, r);
        if (r > 1 + 1e-9) ++out.violations;
    }
    return out;
}

double CountFamily::log_count(double x) const {
    require(x > 0, "count family: argument must be > 0");
    if (kind == Kind::power) return c * std::pow(x, -p);
    require(x < 1, "count family: logpower needs argument < 1");
    return c * std::pow(-std::log(x), p);
}

std::vector<std::pair<double, double>> modulus_lower_curve(const CountFamily& f, const CountFamily& g,
                                                           const std::vector<double>& t_grid, double diameter) {
    require(f.c > 0 && f.p > 0 && g.c > 0 && g.p > 0, "modulus_lower_curve: family parameters must be > 0");
    std::vector<std::pair<double, double>> out;
    for (double t : t_grid) {
        require(t > 0, "modulus_lower_curve: t must be > 0");
        if (t >= diameter) continue;
        const double x = t / 2;
        if (f.kind == CountFamily::Kind::logpower && x >= 1) continue;
        const double L = f.log_count(x);
        double w;
        if (g.kind == CountFamily::Kind::power)
            w = std::exp((std::log(g.c) - std::log(L)) / g.p);
        else
            w = std::exp(-std::pow(L / g.c, 1 / g.p));
        out.emplace_back(t, w);
    }
    return out;
}

double hs_embedding_bound(const WeightSequence& alpha, const WeightSequence& beta, int M, int N) {
    require(M >= 1 && N >= 1, "hs_embedding_bound: M and N must be >= 1");
    require(std::size_t(M) + 1 <= alpha.size() && std::size_t(N) + 1 <= beta.size(),
            "hs_embedding_bound: index out of range");
    require(alpha.nondecreasing() && beta.nondecreasing() && alpha[0] > 0 && beta[0] > 0,
            "hs_embedding_bound: weights must be positive and nondecreasing");
    return std::max(1 / (alpha.at(1) * beta.at(std::size_t(N) + 1)), 1 / (alpha.at(std::size_t(M) + 1) * beta.at(1)));
}

double InterpolationFamily::g(double t) const {
    if (kind == Kind::power) return std::pow(t, p);
    return std::pow(std::log(t) / beta, s);
}

std::vector<std::pair<double, double>> interpolation_triple_curve(const InterpolationFamily& g, double op_norm_bound,
                                                                  const std::vector<double>& inclusion_sigmas) {
    require(op_norm_bound > 0, "interpolation_triple_curve: operator norm bound must be > 0");
    require(!inclusion_sigmas.empty(), "interpolation_triple_curve: no singular values");
    std::vector<std::pair<double, double>> out;
    for (std::size_t j = 0; j < inclusion_sigmas.size(); ++j) {
        const double s = inclusion_sigmas[j];
        require(s > 0, "interpolation_triple_curve: singular values must be positive");
        require(j == 0 || s < inclusion_sigmas[j - 1], "interpolation_triple_curve: singular values must decrease");
        const double gv = g.g(1 / s);
        require(gv > 0, "interpolation_triple_curve: g(1/sigma) must be positive");
        const double t = op_norm_bound * s / gv;
        if (!out.empty() && !(t < out.back().first))
            throw NumericalError("interpolation_triple_curve: f is not strictly increasing on the inputs");
        out.emplace_back(t, 1 / gv);
    }
    return out;
}

const char* to_string(CountFamily::Kind k) { return k == CountFamily::Kind::power ? "power" : "logpower"; }
const char* to_string(InterpolationFamily::Kind k) {
    return k == InterpolationFamily::Kind::power ? "power" : "logpower";
}

}  // namespace illab
