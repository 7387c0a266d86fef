#include "illab/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>

#include "illab/error.hpp"

namespace illab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void finalize(SpectrumReport& r) {
    r.sigmas.resize(r.log_sigmas.size());
    for (std::size_t i = 0; i < r.sigmas.size(); ++i) r.sigmas[i] = std::exp(r.log_sigmas[i]);
}

}  // namespace

Eigen::MatrixXd WeightedOperator::weighted() const {
    Eigen::MatrixXd w = matrix;
    for (Eigen::Index i = 0; i < w.rows(); ++i) w.row(i) *= codomain.w[i];
    for (Eigen::Index j = 0; j < w.cols(); ++j) w.col(j) /= domain.w[j];
    return w;
}

void WeightedOperator::validate() const {
    require(Eigen::Index(domain.size()) == matrix.cols(), "weighted operator: domain weights do not match columns");
    require(Eigen::Index(codomain.size()) == matrix.rows(), "weighted operator: codomain weights do not match rows");
    if (!matrix.allFinite()) throw NumericalError("weighted operator '" + label + "': non-finite entries");
}

WeightedOperator make_operator(Eigen::MatrixXd m, std::string label) {
    WeightedOperator op;
    op.domain = unit_weights(int(m.cols()));
    op.codomain = unit_weights(int(m.rows()));
    op.matrix = std::move(m);
    op.label = std::move(label);
    return op;
}

std::vector<double> singular_values(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return {};
    Eigen::MatrixXd a = m;
    const lapack_int r = lapack_int(a.rows()), c = lapack_int(a.cols());
    std::vector<double> s(std::min(r, c));
    double dummy = 0;
    const lapack_int info =
        LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', r, c, a.data(), r, s.data(), &dummy, 1, &dummy, 1);
    if (info != 0) throw NumericalError("dgesdd failed with info " + std::to_string(info));
    return s;
}

static SpectrumReport dense_svd(const Eigen::MatrixXd& w, bool vectors) {
    SpectrumReport r;
    r.method = "dense";
    if (!vectors) {
        const auto s = singular_values(w);
        r.log_sigmas.resize(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) r.log_sigmas[i] = s[i] > 0 ? std::log(s[i]) : kNegInf;
        r.sigmas = s;
    } else {
        Eigen::MatrixXd a = w;
        const lapack_int m = lapack_int(a.rows()), n = lapack_int(a.cols()), p = std::min(m, n);
        std::vector<double> s(p);
        r.U.resize(m, p);
        Eigen::MatrixXd vt(p, n);
        const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, a.data(), m, s.data(), r.U.data(), m,
                                               vt.data(), p);
        if (info != 0) throw NumericalError("dgesdd failed with info " + std::to_string(info));
        r.V = vt.transpose();
        r.sigmas = s;
        r.log_sigmas.resize(p);
        for (lapack_int i = 0; i < p; ++i) r.log_sigmas[i] = s[i] > 0 ? std::log(s[i]) : kNegInf;
    }
    const double floor = r.sigmas.empty() ? 0 : r.sigmas[0] * 1e-14;
    r.resolved = 0;
    while (r.resolved < int(r.sigmas.size()) && r.sigmas[r.resolved] > 0 && r.sigmas[r.resolved] >= floor)
        ++r.resolved;
    return r;
}

SpectrumReport graded_product_svd(const std::vector<Eigen::MatrixXd>& factors, bool vectors) {
    using Mat = Eigen::MatrixXd;
    using Vec = Eigen::VectorXd;
    require(!factors.empty(), "graded_product_svd: no factors");
    for (std::size_t i = 1; i < factors.size(); ++i)
        require(factors[i].cols() == factors[i - 1].rows(), "graded_product_svd: factor shapes do not chain");
    for (const auto& f : factors)
        if (!f.allFinite()) throw NumericalError("graded_product_svd: non-finite factor entries");

    // M = U diag(exp(logD)) T, U with orthonormal columns
    Mat U, T;
    Vec logD;
    {
        Eigen::ColPivHouseholderQR<Mat> qr(factors[0]);
        const Eigen::Index p = std::min(factors[0].rows(), factors[0].cols());
        const Mat R = qr.matrixR().topRows(p).triangularView<Eigen::Upper>();
        U = qr.householderQ() * Mat::Identity(factors[0].rows(), p);
        logD.resize(p);
        Mat RP = R * qr.colsPermutation().transpose();
        T.resize(p, factors[0].cols());
        for (Eigen::Index i = 0; i < p; ++i) {
            const double rii = std::abs(R(i, i));
            if (rii > 0) {
                logD(i) = std::log(rii);
                T.row(i) = RP.row(i) / rii;
            } else {
                logD(i) = kNegInf;
                T.row(i).setZero();
            }
        }
    }
    for (std::size_t f = 1; f < factors.size(); ++f) {
        const Mat X = factors[f] * U;
        const Eigen::Index p = X.cols();
        std::vector<double> key(p);
        for (Eigen::Index j = 0; j < p; ++j) {
            const double nrm = X.col(j).norm();
            key[j] = nrm > 0 ? std::log(nrm) + logD(j) : kNegInf;
        }
        std::vector<Eigen::Index> perm(p);
        std::iota(perm.begin(), perm.end(), Eigen::Index{0});
        std::stable_sort(perm.begin(), perm.end(), [&](Eigen::Index a, Eigen::Index b) { return key[a] > key[b]; });
        Mat Xp(X.rows(), p), Tp(p, T.cols());
        Vec lp(p);
        for (Eigen::Index j = 0; j < p; ++j) {
            Xp.col(j) = X.col(perm[j]);
            Tp.row(j) = T.row(perm[j]);
            lp(j) = logD(perm[j]);
        }
        Eigen::HouseholderQR<Mat> qr(Xp);
        const Eigen::Index q = std::min(Xp.rows(), p);
        const Mat R = qr.matrixQR().topRows(q).triangularView<Eigen::Upper>();
        U = qr.householderQ() * Mat::Identity(Xp.rows(), q);
        Mat S = Mat::Zero(q, p);
        Vec nl(q);
        for (Eigen::Index i = 0; i < q; ++i) {
            const double rii = std::abs(R(i, i));
            if (rii == 0 || lp(i) == kNegInf) {
                nl(i) = kNegInf;
                continue;
            }
            nl(i) = std::log(rii) + lp(i);
            for (Eigen::Index j = i; j < p; ++j) {
                if (R(i, j) == 0 || lp(j) == kNegInf) continue;
                S(i, j) = R(i, j) / rii * std::exp(lp(j) - lp(i));
            }
        }
        T = S * Tp;
        logD = nl;
    }

    // One-sided Jacobi on G^T = T^T diag(exp(logD)); column i = exp(sc_i) * v_i.
    const Eigen::Index p = T.rows(), c = T.cols();
    Mat Vc = T.transpose();
    Vec sc(p);
    for (Eigen::Index i = 0; i < p; ++i) {
        const double nrm = Vc.col(i).norm();
        if (nrm > 0 && logD(i) != kNegInf) {
            sc(i) = logD(i) + std::log(nrm);
            Vc.col(i) /= nrm;
        } else {
            sc(i) = kNegInf;
            Vc.col(i).setZero();
        }
    }
    Mat J = Mat::Identity(p, p);
    const double tol = double(std::max<Eigen::Index>(c, 1)) * DBL_EPSILON;
    for (int sweep = 0; sweep < 80; ++sweep) {
        bool rotated = false;
        for (Eigen::Index a = 0; a < p; ++a) {
            for (Eigen::Index b = a + 1; b < p; ++b) {
                if (sc(a) == kNegInf || sc(b) == kNegInf) continue;
                const bool aBig = sc(a) >= sc(b);
                const Eigen::Index big = aBig ? a : b, sml = aBig ? b : a;
                const double x = Vc.col(big).squaredNorm(), y = Vc.col(sml).squaredNorm();
                const double z = Vc.col(big).dot(Vc.col(sml));
                if (std::abs(z) <= tol * std::sqrt(x * y)) continue;
                rotated = true;
                const double r = std::exp(sc(sml) - sc(big));
                const double w = (r * r * y - x) / (2 * z);
                const double tau = (w >= 0 ? 1.0 : -1.0) / (std::abs(w) + std::sqrt(r * r + w * w));
                const double cs = 1.0 / std::sqrt(1 + r * r * tau * tau);
                const double sn = cs * r * tau;
                const Vec vb = Vc.col(big);
                Vc.col(big) = cs * (vb - r * r * tau * Vc.col(sml));
                Vc.col(sml) = cs * (tau * vb + Vc.col(sml));
                if (vectors) {
                    const Vec jb = J.col(big);
                    J.col(big) = cs * jb - sn * J.col(sml);
                    J.col(sml) = sn * jb + cs * J.col(sml);
                }
                for (Eigen::Index e : {big, sml}) {
                    const double nrm = Vc.col(e).norm();
                    if (nrm > 0) {
                        sc(e) += std::log(nrm);
                        Vc.col(e) /= nrm;
                    } else {
                        sc(e) = kNegInf;
                    }
                }
            }
        }
        if (!rotated) break;
        if (sweep == 79) throw NumericalError("graded_product_svd: Jacobi sweeps did not converge");
    }
    std::vector<Eigen::Index> order(p);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return sc(a) > sc(b); });

    SpectrumReport rep;
    rep.method = "graded-product";
    rep.log_sigmas.resize(p);
    for (Eigen::Index i = 0; i < p; ++i) rep.log_sigmas[i] = sc(order[i]);
    finalize(rep);
    const double lmin = std::log(DBL_MIN);
    rep.resolved = 0;
    while (rep.resolved < int(p) && rep.log_sigmas[rep.resolved] >= lmin) ++rep.resolved;
    if (vectors) {
        rep.U.resize(U.rows(), p);
        rep.V.resize(c, p);
        for (Eigen::Index i = 0; i < p; ++i) {
            rep.U.col(i) = U * J.col(order[i]);
            rep.V.col(i) = Vc.col(order[i]);
        }
    }
    return rep;
}

SpectrumReport weighted_svd(const WeightedOperator& op, bool vectors) {
    op.validate();
    if (op.factors.empty()) return dense_svd(op.weighted(), vectors);
    std::vector<Eigen::MatrixXd> f;
    bool unitDom = std::all_of(op.domain.w.begin(), op.domain.w.end(), [](double x) { return x == 1.0; });
    bool unitCod = std::all_of(op.codomain.w.begin(), op.codomain.w.end(), [](double x) { return x == 1.0; });
    if (!unitDom) {
        Eigen::VectorXd inv(op.domain.size());
        for (std::size_t j = 0; j < op.domain.size(); ++j) inv(j) = 1.0 / op.domain.w[j];
        f.push_back(inv.asDiagonal());
    }
    for (const auto& m : op.factors) f.push_back(m);
    if (!unitCod) {
        Eigen::VectorXd cw = Eigen::Map<const Eigen::VectorXd>(op.codomain.w.data(), op.codomain.size());
        f.push_back(cw.asDiagonal());
    }
    return graded_product_svd(f, vectors);
}

CarlBracket carl_sandwich(const std::vector<double>& sigmas, int N, bool real_scalars) {
    require(N >= 1, "carl_sandwich: N must be >= 1");
    for (double s : sigmas) require(s >= 0 && !std::isnan(s), "carl_sandwich: singular values must be >= 0");
    for (std::size_t i = 1; i < sigmas.size(); ++i)
        require(sigmas[i] <= sigmas[i - 1], "carl_sandwich: singular values must be nonincreasing");
    const double expo = (N - 1) * std::log(2.0) / (real_scalars ? 1.0 : 2.0);
    double best = kNegInf, sum = 0;
    for (std::size_t k = 1; k <= sigmas.size(); ++k) {
        if (sigmas[k - 1] <= 0) break;
        sum += std::log(sigmas[k - 1]);
        best = std::max(best, (sum - expo) / double(k));
    }
    CarlBracket b;
    b.N = N;
    b.lo = best == kNegInf ? 0.0 : std::exp(best);
    b.hi = 6 * b.lo;
    return b;
}

namespace {

struct Ls {
    double slope, icpt, rms;
};

Ls least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = double(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Ls r;
    r.slope = sxy / sxx;
    r.icpt = my - r.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (r.icpt + r.slope * x[i]);
        ss += e * e;
    }
    r.rms = std::sqrt(ss / n);
    return r;
}

}  // namespace

Fit fit_log_decay(const std::vector<double>& log_sigmas, int k0, int k1, const std::string& model) {
    require(k0 >= 1 && k1 <= int(log_sigmas.size()) && k1 - k0 + 1 >= 4, "fit_decay: degenerate range (< 4 points)");
    std::vector<double> ks, ys;
    for (int k = k0; k <= k1; ++k) {
        require(std::isfinite(log_sigmas[k - 1]), "fit_decay: zero singular value inside the range");
        ks.push_back(k);
        ys.push_back(log_sigmas[k - 1]);
    }
    Fit f;
    f.model = model;
    f.k0 = k0;
    f.k1 = k1;
    if (model == "poly") {
        std::vector<double> lx(ks.size());
        for (std::size_t i = 0; i < ks.size(); ++i) lx[i] = std::log(ks[i]);
        const Ls r = least_squares(lx, ys);
        f.exponent = -r.slope;
        f.amplitude = std::exp(r.icpt);
        f.coefficient = f.amplitude;
        f.residual = r.rms;
        return f;
    }
    require(model == "stretched", "fit_decay: model must be 'poly' or 'stretched'");
    auto at = [&](double mu) {
        std::vector<double> px(ks.size());
        for (std::size_t i = 0; i < ks.size(); ++i) px[i] = std::pow(ks[i], mu);
        return least_squares(px, ys);
    };
    // coarse scan, then golden section on the bracketing cell
    double bestMu = 0.05, bestR = at(0.05).rms;
    for (double mu = 0.05; mu <= 4.0 + 1e-12; mu += 0.05) {
        const double rr = at(mu).rms;
        if (rr < bestR) {
            bestR = rr;
            bestMu = mu;
        }
    }
    double lo = std::max(1e-3, bestMu - 0.05), hi = bestMu + 0.05;
    const double g = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = at(x1).rms, f2 = at(x2).rms;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = at(x1).rms;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = at(x2).rms;
        }
    }
    const double mu = 0.5 * (lo + hi);
    const Ls r = at(mu);
    f.exponent = mu;
    f.coefficient = -r.slope;
    f.amplitude = std::exp(r.icpt);
    f.residual = r.rms;
    return f;
}

Fit fit_decay(const std::vector<double>& sigmas, int k0, int k1, const std::string& model) {
    require(!sigmas.empty(), "fit_decay: empty spectrum");
    const double floor = 10 * DBL_EPSILON * sigmas[0];
    require(k0 >= 1 && k1 <= int(sigmas.size()), "fit_decay: range outside the spectrum");
    for (int k = k0; k <= k1; ++k)
        require(sigmas[k - 1] > floor, "fit_decay: range reaches unresolved singular values");
    std::vector<double> ls(sigmas.size());
    for (std::size_t i = 0; i < sigmas.size(); ++i) ls[i] = sigmas[i] > 0 ? std::log(sigmas[i]) : kNegInf;
    return fit_log_decay(ls, k0, k1, model);
}

std::vector<WeylViolation> weyl_violations(const std::vector<double>& sa, const std::vector<double>& sb,
                                           const std::vector<double>& s, bool additive, double tol) {
    std::vector<WeylViolation> out;
    const double scale = std::max({1.0, sa.empty() ? 0.0 : sa[0], sb.empty() ? 0.0 : sb[0]});
    const double slack = tol * (additive ? scale : scale * scale);
    for (std::size_t j = 1; j <= sa.size(); ++j)
        for (std::size_t k = 1; k <= sb.size(); ++k) {
            const std::size_t idx = j + k - 1;
            if (idx > s.size()) continue;
            const double lhs = s[idx - 1];
            const double rhs = additive ? sa[j - 1] + sb[k - 1] : sa[j - 1] * sb[k - 1];
            if (lhs > rhs + slack) out.push_back({additive ? "sum" : "product", int(j), int(k), lhs, rhs});
        }
    return out;
}

std::vector<WeylViolation> weyl_checks(const WeightedOperator& A, const WeightedOperator& B, double tol) {
    const Eigen::MatrixXd a = A.weighted(), b = B.weighted();
    const bool sum = a.rows() == b.rows() && a.cols() == b.cols();
    const bool prod = a.cols() == b.rows();
    require(sum || prod, "weyl_checks: shapes are neither equal nor composable");
    std::vector<WeylViolation> out;
    const auto sa = singular_values(a);
    const auto sb = singular_values(b);
    if (sum) out = weyl_violations(sa, sb, singular_values(a + b), true, tol);
    if (prod) {
        auto p = weyl_violations(sa, sb, singular_values(a * b), false, tol);
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

}  // namespace illab
