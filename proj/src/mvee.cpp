#include "okspec/norms/mvee.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "okspec/core/kernels.hpp"

namespace okspec {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

// X = sum_j u_j p_j p_j^*; scores M_j = p_j^* X^{-1} p_j recomputed fresh
VectorXd fresh_scores(const MatrixXcd& pts, const VectorXd& u, MatrixXcd& xinv) {
    const Eigen::Index r = pts.cols();
    MatrixXcd x = MatrixXcd::Zero(r, r);
    for (Eigen::Index j = 0; j < pts.rows(); ++j)
        if (u(j) > 0.0) x += u(j) * pts.row(j).transpose() * pts.row(j).conjugate();
    Eigen::LDLT<MatrixXcd> ldlt(x);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("mvee: singular weight covariance");
    xinv = ldlt.solve(MatrixXcd::Identity(r, r));
    return kernels::ellipsoid_scores(pts, xinv, default_exec());
}

// Wolfe-Atwood multiplicative phase: cheap global progress plus
// Harman-Pronzato elimination of interior points.
struct Phase1State {
    MatrixXcd points;  // active rows
    VectorXd u;
    VectorXd scores;
    MatrixXcd xinv;
};

void frank_wolfe_phase(Phase1State& st, double gap_target, int max_iterations) {
    const double rd = (double)st.points.cols();
    Eigen::Index m = st.points.rows();

    auto prune = [&]() {
        double gap = st.scores.maxCoeff() / rd - 1.0;
        if (gap <= 0.0) return;
        double disc = gap * (4.0 + gap - 4.0 / rd);
        if (disc < 0.0) return;
        double cutoff = rd * (1.0 + gap / 2.0 - std::sqrt(disc) / 2.0);
        Eigen::Index keep = 0;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (st.scores(j) >= cutoff || st.u(j) > 0.0) {
                st.points.row(keep) = st.points.row(j);
                st.u(keep) = st.u(j);
                st.scores(keep) = st.scores(j);
                ++keep;
            }
        }
        if (keep == m || keep < st.points.cols()) return;
        m = keep;
        st.points.conservativeResize(m, st.points.cols());
        st.u.conservativeResize(m);
        st.scores.conservativeResize(m);
    };

    const int refresh = 256;
    for (int it = 0; it < max_iterations; ++it) {
        Eigen::Index jmax = 0, jmin = -1;
        double mmax = -1.0, mmin = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (st.scores(j) > mmax) { mmax = st.scores(j); jmax = j; }
            if (st.u(j) > 0.0 && (jmin < 0 || st.scores(j) < mmin)) {
                mmin = st.scores(j);
                jmin = j;
            }
        }
        double up_gap = mmax / rd - 1.0;
        double down_gap = 1.0 - mmin / rd;
        if (up_gap <= gap_target && down_gap <= gap_target) break;

        Eigen::Index j;
        double tau;
        if (up_gap >= down_gap || 1.0 - st.u(jmin) < 1e-12) {
            j = jmax;
            tau = (mmax / rd - 1.0) / (mmax - 1.0);
        } else {
            j = jmin;
            double cap = -st.u(j) / (1.0 - st.u(j));
            tau = (mmin / rd - 1.0) / (mmin - 1.0);
            if (tau >= 0.0 || tau < cap) tau = cap;
        }

        double mj = st.scores(j);
        while (1.0 - tau * (1.0 - mj) <= 1e-12) tau *= 0.5;  // keep X' invertible
        const double omt = 1.0 - tau;
        VectorXcd w = st.xinv * st.points.row(j).transpose();
        double denom = 1.0 + (tau / omt) * mj;
        VectorXcd pw = st.points.conjugate() * w;
        for (Eigen::Index k = 0; k < m; ++k) {
            double cross = std::norm(pw(k));
            st.scores(k) = st.scores(k) / omt - (tau / (omt * omt)) * cross / denom;
        }
        st.xinv = st.xinv / omt - (tau / (omt * omt)) / denom * (w * w.adjoint());

        st.u *= omt;
        st.u(j) += tau;
        if (st.u(j) < 0.0) st.u(j) = 0.0;

        if ((it + 1) % refresh == 0) {
            st.scores = fresh_scores(st.points, st.u, st.xinv);
            prune();
        }
    }
    st.scores = fresh_scores(st.points, st.u, st.xinv);
    prune();
}

// Support-set Newton endgame: solve M_j(u) = r on the support under
// sum u = 1. The Jacobian is dM_j/du_k = -|p_k^* X^{-1} p_j|^2.
bool newton_phase(Phase1State& st, double tol, int rounds) {
    const Eigen::Index m = st.points.rows();
    const double rd = (double)st.points.cols();

    double gap = st.scores.maxCoeff() / rd - 1.0;
    double level = rd * (1.0 - 2.0 * std::max(gap, 1e-6));
    std::vector<Eigen::Index> support;
    for (Eigen::Index j = 0; j < m; ++j)
        if (st.scores(j) >= level) support.push_back(j);
    if ((Eigen::Index)support.size() > 1500) return false;

    for (int round = 0; round < rounds; ++round) {
        const Eigen::Index s = (Eigen::Index)support.size();
        if (s < st.points.cols()) return false;
        MatrixXcd sub(s, st.points.cols());
        VectorXd usub(s);
        for (Eigen::Index i = 0; i < s; ++i) {
            sub.row(i) = st.points.row(support[(size_t)i]);
            double w = st.u(support[(size_t)i]);
            usub(i) = w < 1e-12 ? 0.0 : w;  // dust weights would pin the step cap
        }
        double total = usub.sum();
        if (total <= 0.0) return false;
        usub /= total;

        // damped Newton ascent on the concave dual f(u) = lndet X(u),
        // whose gradient is the score vector and Hessian is -|K|^2
        auto logdet_of = [&](const VectorXd& w) {
            const Eigen::Index rr = sub.cols();
            MatrixXcd x = MatrixXcd::Zero(rr, rr);
            for (Eigen::Index j = 0; j < s; ++j)
                if (w(j) > 0.0) x += w(j) * sub.row(j).transpose() * sub.row(j).conjugate();
            Eigen::LDLT<MatrixXcd> ldlt(x);
            if (ldlt.info() != Eigen::Success) return -1e300;
            double ld = 0.0;
            for (Eigen::Index i = 0; i < rr; ++i) {
                double d = ldlt.vectorD()(i).real();
                if (d <= 0.0) return -1e300;
                ld += std::log(d);
            }
            return ld;
        };

        bool ok = false;
        for (int it = 0; it < 80; ++it) {
            MatrixXcd xinv;
            VectorXd ms = fresh_scores(sub, usub, xinv);
            double worst = (ms.array() - rd).abs().maxCoeff();
#ifdef OKSPEC_MVEE_TRACE
            fprintf(stderr, "newton round=%d it=%d s=%ld worst=%.3e\n", round, it, (long)s, worst);
#endif
            if (worst <= 0.8 * tol * rd) { ok = true; break; }

            // K(i,j) = p_i^* X^{-1} p_j; the design weights may be
            // non-unique, so ridge-regularize the bordered system
            MatrixXcd k = sub.conjugate() * xinv * sub.transpose();
            MatrixXd jac = -k.cwiseAbs2();
            double ridge = 1e-9 * jac.norm() + 1e-300;
            MatrixXd sys(s + 1, s + 1);
            sys.topLeftCorner(s, s) = jac - ridge * MatrixXd::Identity(s, s);
            sys.topRightCorner(s, 1).setOnes();
            sys.bottomLeftCorner(1, s).setOnes();
            sys(s, s) = 0.0;
            VectorXd rhs(s + 1);
            rhs.head(s) = rd - ms.array();
            rhs(s) = 0.0;
            Eigen::PartialPivLU<MatrixXd> lu(sys);
            VectorXd delta = lu.solve(rhs).head(s);
            if (!delta.allFinite()) break;

            // points pinned at zero may not move negative; feasibility of
            // the step is handled by clipping inside the line search, which
            // lets one step drop many redundant points at once
            for (Eigen::Index i = 0; i < s; ++i)
                if (usub(i) <= 0.0 && delta(i) < 0.0) delta(i) = 0.0;
            double ascent = ms.dot(delta);
#ifdef OKSPEC_MVEE_TRACE
            fprintf(stderr, "  ascent=%.3e dnorm=%.3e\n", ascent, delta.norm());
#endif
            if (ascent <= 0.0) break;

            double f0 = logdet_of(usub);
            double t = 1.0;
            bool stepped = false;
            for (int ls = 0; ls < 40; ++ls) {
                VectorXd trial = usub + t * delta;
                for (Eigen::Index i = 0; i < s; ++i)
                    trial(i) = trial(i) < 1e-15 ? 0.0 : trial(i);
                double tsum = trial.sum();
                if (tsum > 0.0) {
                    trial /= tsum;
                    if (logdet_of(trial) >= f0 + 1e-6 * t * ascent) {
                        usub = trial;
                        stepped = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            if (!stepped) break;
        }
        if (!ok) return false;

        // write back, rescore globally and check for outside violators
        st.u.setZero();
        for (Eigen::Index i = 0; i < s; ++i) st.u(support[(size_t)i]) = usub(i);
        st.scores = fresh_scores(st.points, st.u, st.xinv);
        double cover_gap = st.scores.maxCoeff() / rd - 1.0;
        if (cover_gap <= tol) return true;

        // admit every point above the support level and retry
        std::vector<Eigen::Index> next = support;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (st.scores(j) > rd * (1.0 + 0.1 * tol)) {
                bool present = false;
                for (auto idx : next)
                    if (idx == j) { present = true; break; }
                if (!present) next.push_back(j);
            }
        }
        if (next.size() == support.size()) return false;
        support = std::move(next);
    }
    return false;
}

}  // namespace

MveeResult minimum_enclosing_ellipsoid(const MatrixXcd& raw_points, double tol,
                                       int max_iterations) {
    if (raw_points.rows() < raw_points.cols())
        throw std::invalid_argument("mvee: fewer points than dimensions");

    // precondition: whiten by the covariance factor so clouds with a huge
    // dynamic range stay resolvable; the fit maps back exactly by
    // equivariance
    const Eigen::Index r = raw_points.cols();
    MatrixXcd cov = raw_points.adjoint() * raw_points / (double)raw_points.rows();
    cov += 1e-14 * cov.norm() * MatrixXcd::Identity(r, r);
    Eigen::LLT<MatrixXcd> cov_llt(cov);
    if (cov_llt.info() != Eigen::Success)
        throw std::runtime_error("mvee: degenerate point cloud");
    MatrixXcd white = cov_llt.matrixL().solve(raw_points.transpose()).transpose();

    Phase1State st;
    st.points = white;
    // greedy volumetric start: r independent extreme points carry the whole
    // initial weight, so the multiplicative phase spends its steps on the
    // genuine support instead of shedding thousands of interior points
    st.u = VectorXd::Zero(white.rows());
    {
        MatrixXcd residual = white;
        for (Eigen::Index pick = 0; pick < r; ++pick) {
            Eigen::Index best = 0;
            double best_norm = -1.0;
            for (Eigen::Index j = 0; j < residual.rows(); ++j) {
                double nj = residual.row(j).squaredNorm();
                if (nj > best_norm) { best_norm = nj; best = j; }
            }
            if (best_norm <= 1e-28) break;
            st.u(best) += 1.0 / (double)r;
            Eigen::RowVectorXcd dir = residual.row(best) / residual.row(best).norm();
            residual -= (residual * dir.adjoint()) * dir;
        }
        double s = st.u.sum();
        if (s <= 0.0) throw std::runtime_error("mvee: degenerate point cloud");
        st.u /= s;
    }
    st.scores = fresh_scores(st.points, st.u, st.xinv);

    // cheap global phase, then quadratic endgame on the support
    frank_wolfe_phase(st, std::max(tol, 1e-3), max_iterations);
    bool converged = newton_phase(st, tol, 24);
    if (!converged) {
        frank_wolfe_phase(st, tol, max_iterations);
        double gap = st.scores.maxCoeff() / (double)r - 1.0;
        converged = gap <= tol || newton_phase(st, tol, 24);
    }

    // coverage is certified on the full whitened input set
    VectorXd all_scores = kernels::ellipsoid_scores(white, st.xinv, default_exec());
    double cover = all_scores.maxCoeff();
    MveeResult res;
    MatrixXcd h_white = st.xinv / cover;
    MatrixXcd half = cov_llt.matrixU().solve(h_white);  // L^{-*} H'
    res.h = cov_llt.matrixU().solve(half.adjoint()).adjoint();
    res.h = 0.5 * (res.h + res.h.adjoint().eval());
    res.slack = cover / (double)r;
    res.iterations = 0;
    if (!converged) {
        throw MveeNonConvergence(
            "mvee: no convergence to tolerance " + std::to_string(tol) + " (gap " +
                std::to_string(cover / (double)r - 1.0) + ")",
            res);
    }
    return res;
}

}  // namespace okspec
