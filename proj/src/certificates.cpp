#include "okspec/norms/certificates.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "okspec/core/kernels.hpp"
#include "okspec/norms/mvee.hpp"

namespace okspec {

double SandwichCertificate::log_ratio() const {
    return std::log(upper_factor / lower_factor);
}

double audit_certificate(const NormOracle& oracle, SandwichCertificate& cert, int directions,
                         Rng& rng) {
    MatrixXcd seeds = oracle.flattened_covectors();
    MatrixXcd dirs = probe_directions(oracle.dim(), oracle.scalar_kind(), directions, seeds, rng);
    double worst = -1.0;
    for (Eigen::Index i = 0; i < dirs.rows(); ++i) {
        VectorXcd x = dirs.row(i).transpose();
        double no = oracle.evaluate(x);
        double nf = cert.form.norm(x);
        if (nf <= 0.0 || no <= 0.0) continue;
        worst = std::max(worst, (cert.lower_factor * nf - no) / no);
        worst = std::max(worst, (no - cert.upper_factor * nf) / no);
    }
    cert.checked_directions += (int)dirs.rows();
    return worst;
}

namespace {

// polar of the Hermitian ball {xi : xi^* H xi <= 1} under the bilinear pairing
MatrixXcd polar_gram(const MatrixXcd& h) { return h.inverse().conjugate(); }

SandwichCertificate make_audited(const NormOracle& oracle, HermitianForm form, double lo,
                                 double up) {
    SandwichCertificate cert{std::move(form), lo, up, 0};
    Rng rng(0x5a17u ^ (std::uint64_t)oracle.dim());
    double v = audit_certificate(oracle, cert, 1000, rng);
    if (v > 1e-9)
        throw std::runtime_error("sandwich certificate failed its direction audit (violation " +
                                 std::to_string(v) + ")");
    return cert;
}

SandwichCertificate john_unaudited(const NormOracle& oracle, const SurrogateOptions& opts);

SandwichCertificate john_functional_cloud(const NormOracle& oracle,
                                          const SurrogateOptions& opts) {
    MatrixXcd cloud = oracle.flattened_covectors();
    auto mvee = minimum_enclosing_ellipsoid(cloud, opts.mvee_tol, opts.mvee_max_iterations);
    MatrixXcd g = polar_gram(mvee.h);
    g = 0.5 * (g + g.adjoint().eval());
    double lower = 1.0 / std::sqrt((double)oracle.dim() * mvee.slack);
    return SandwichCertificate{HermitianForm(g, oracle.scalar_kind()), lower, 1.0, 0};
}

SandwichCertificate john_max(const NormOracle& oracle, const SurrogateOptions& opts) {
    SandwichCertificate a = john_unaudited(oracle.left(), opts);
    SandwichCertificate b = john_unaudited(oracle.right(), opts);
    // upper-normalized children: u_c^2 G_c, then Gram sum
    MatrixXcd g = a.upper_factor * a.upper_factor * a.form.gram() +
                  b.upper_factor * b.upper_factor * b.form.gram();
    double worst_ratio = std::max(a.upper_factor / a.lower_factor,
                                  b.upper_factor / b.lower_factor);
    double lower = 1.0 / (std::sqrt(2.0) * worst_ratio);
    return SandwichCertificate{HermitianForm(g, oracle.scalar_kind()), lower, 1.0, 0};
}

SandwichCertificate john_unaudited(const NormOracle& oracle, const SurrogateOptions& opts) {
    switch (oracle.kind()) {
        case NormOracle::Kind::hermitian:
            return SandwichCertificate{oracle.form(), 1.0, 1.0, 0};
        case NormOracle::Kind::scaled: {
            SandwichCertificate c = john_unaudited(oracle.base(), opts);
            double s = std::exp(2.0 * oracle.log_factor());
            return SandwichCertificate{
                HermitianForm(s * c.form.gram(), c.form.scalar_kind()), c.lower_factor,
                c.upper_factor, 0};
        }
        case NormOracle::Kind::functional_family:
            return john_functional_cloud(oracle, opts);
        case NormOracle::Kind::max_of:
            if (oracle.purely_functional()) return john_functional_cloud(oracle, opts);
            return john_max(oracle, opts);
    }
    throw std::logic_error("john_form: bad oracle");
}

}  // namespace

SandwichCertificate john_form(const NormOracle& oracle, SurrogateOptions opts) {
    SandwichCertificate c = john_unaudited(oracle, opts);
    return make_audited(oracle, c.form, c.lower_factor, c.upper_factor);
}

SandwichCertificate lowner_form(const NormOracle& oracle, SurrogateOptions opts) {
    if (oracle.kind() == NormOracle::Kind::hermitian)
        return make_audited(oracle, oracle.form(), 1.0, 1.0);
    SandwichCertificate j = john_unaudited(oracle, opts);
    double l = j.lower_factor;
    HermitianForm low(l * l * j.form.gram(), j.form.scalar_kind());
    return make_audited(oracle, std::move(low), 1.0, j.upper_factor / l);
}

namespace {

HermitianForm scaled_form(const HermitianForm& f, double factor) {
    return HermitianForm(factor * factor * f.gram(), f.scalar_kind());
}

// uniform sample in the unit ball of a Hermitian form (real or complex)
VectorXcd sample_in_ball(const Eigen::LLT<MatrixXcd>& llt, int dim, ScalarKind kind, Rng& rng) {
    VectorXcd g(dim);
    for (int i = 0; i < dim; ++i)
        g(i) = kind == ScalarKind::complex ? rng.cnormal()
                                           : std::complex<double>(rng.normal(), 0.0);
    double real_dim = kind == ScalarKind::complex ? 2.0 * dim : (double)dim;
    double radius = std::pow(rng.uniform(), 1.0 / real_dim);
    VectorXcd u = radius / g.norm() * g;
    return llt.matrixU().solve(u);  // x = L^{-*} u maps |u|<=1 onto x^*Gx<=1
}

}  // namespace

DegreeBand degree_band(const NormOracle& phi, const NormOracle& psi, std::uint64_t mc_seed,
                       std::uint64_t mc_samples, SurrogateOptions opts) {
    if (phi.dim() != psi.dim())
        throw std::invalid_argument("degree_band: dimension mismatch");
    const int r = phi.dim();
    SandwichCertificate jphi = john_form(phi, opts), jpsi = john_form(psi, opts);

    HermitianForm phi_j = scaled_form(jphi.form, jphi.upper_factor);
    HermitianForm phi_l = scaled_form(jphi.form, jphi.lower_factor);
    HermitianForm psi_j = scaled_form(jpsi.form, jpsi.upper_factor);
    HermitianForm psi_l = scaled_form(jpsi.form, jpsi.lower_factor);

    double d_jl = degree(HermitianPair(phi_j, psi_l));
    double d_lj = degree(HermitianPair(phi_l, psi_j));
    double slack = (double)r * std::log((double)std::max(r, 2));

    DegreeBand out;
    out.band = Interval{d_jl - slack, d_lj + slack};
    out.cert_halfwidth = 0.5 * (d_lj - d_jl);
    out.surrogate_degree = 0.5 * (d_jl + d_lj);

    bool complex_scalars = phi.scalar_kind() == ScalarKind::complex;
    int real_dim = complex_scalars ? 2 * r : r;
    if (real_dim <= 4) {
        Eigen::LLT<MatrixXcd> lphi(phi_l.gram()), lpsi(psi_l.gram());
        auto hit_fraction = [&](const NormOracle& oracle, const Eigen::LLT<MatrixXcd>& llt,
                                std::uint64_t stream) {
            auto trial = [&](Rng& rg) {
                VectorXcd x = sample_in_ball(llt, r, oracle.scalar_kind(), rg);
                return oracle.evaluate(x) <= 1.0;
            };
            std::uint64_t hits =
                kernels::mc_count(mc_seed + stream, mc_samples, trial, default_exec());
            return (double)hits / (double)mc_samples;
        };
        double fphi = hit_fraction(phi, lphi, 1);
        double fpsi = hit_fraction(psi, lpsi, 2);
        if (fphi > 0.0 && fpsi > 0.0) {
            double logdet_phi = 0.0, logdet_psi = 0.0;
            MatrixXcd lp = lphi.matrixL(), ls = lpsi.matrixL();
            for (int i = 0; i < r; ++i) {
                logdet_phi += 2.0 * std::log(lp(i, i).real());
                logdet_psi += 2.0 * std::log(ls(i, i).real());
            }
            // real log-volumes of the certificate balls differ by the log-dets
            double vol_power = complex_scalars ? 1.0 : 0.5;
            double est = -vol_power * logdet_phi + std::log(fphi) + vol_power * logdet_psi -
                         std::log(fpsi);
            double se = std::sqrt((1.0 - fphi) / (fphi * (double)mc_samples)) +
                        std::sqrt((1.0 - fpsi) / (fpsi * (double)mc_samples));
            if (complex_scalars) { est *= 0.5; se *= 0.5; }  // degrees per complex dimension
            out.has_monte_carlo = true;
            out.mc_estimate = est;
            out.mc_stderr = se;
        }
    }
    return out;
}

PolygonBand polygon_band(const NormOracle& phi, const NormOracle& psi, SurrogateOptions opts) {
    if (phi.dim() != psi.dim())
        throw std::invalid_argument("polygon_band: dimension mismatch");
    SandwichCertificate jphi = john_form(phi, opts), jpsi = john_form(psi, opts);
    // recenter at the geometric mean of the factors so the distance to the
    // surrogate is half the certificate log-ratio
    HermitianForm mid_phi = scaled_form(jphi.form, std::sqrt(jphi.upper_factor * jphi.lower_factor));
    HermitianForm mid_psi = scaled_form(jpsi.form, std::sqrt(jpsi.upper_factor * jpsi.lower_factor));
    PolygonBand out{polygon_of(HermitianPair(mid_phi, mid_psi)),
                    ErrorBudget{0.5 * jphi.log_ratio() + 0.5 * jpsi.log_ratio(),
                                "john/lowner certificate factors"}};
    return out;
}

Interval distance_estimate(const NormOracle& n1, const NormOracle& n2, int probes,
                           std::uint64_t seed, SurrogateOptions opts) {
    if (n1.dim() != n2.dim())
        throw std::invalid_argument("distance_estimate: dimension mismatch");
    MatrixXcd s1 = n1.flattened_covectors(), s2 = n2.flattened_covectors();
    MatrixXcd seeds(s1.rows() + s2.rows(), n1.dim());
    if (seeds.rows() > 0) {
        seeds.topRows(s1.rows()) = s1;
        seeds.bottomRows(s2.rows()) = s2;
    }
    Rng rng(seed);
    MatrixXcd dirs = probe_directions(n1.dim(), n1.scalar_kind(), probes, seeds, rng);
    double lower = 0.0;
    for (Eigen::Index i = 0; i < dirs.rows(); ++i) {
        VectorXcd x = dirs.row(i).transpose();
        double a = n1.evaluate(x), b = n2.evaluate(x);
        if (a > 0.0 && b > 0.0) lower = std::max(lower, std::abs(std::log(a / b)));
    }

    SandwichCertificate c1 = john_form(n1, opts), c2 = john_form(n2, opts);
    HermitianForm m1 = scaled_form(c1.form, std::sqrt(c1.upper_factor * c1.lower_factor));
    HermitianForm m2 = scaled_form(c2.form, std::sqrt(c2.upper_factor * c2.lower_factor));
    SlopeProfile sp = relative_spectrum(HermitianPair(m1, m2));
    double dmid = 0.0;
    for (double mu : sp.slopes) dmid = std::max(dmid, std::abs(mu));
    double upper = 0.5 * c1.log_ratio() + 0.5 * c2.log_ratio() + dmid;
    return Interval{lower, std::max(lower, upper)};
}

}  // namespace okspec
