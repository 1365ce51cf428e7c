#include "okspec/hermitian/hermitian.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace okspec {

namespace {

// Cholesky factor of the Gram, shared by several operations.
Eigen::LLT<MatrixXcd> cholesky_of(const MatrixXcd& g, const char* what) {
    Eigen::LLT<MatrixXcd> llt(g);
    if (llt.info() != Eigen::Success)
        throw std::domain_error(std::string(what) + ": Gram matrix is not positive definite");
    return llt;
}

double log_det(const MatrixXcd& g, const char* what) {
    auto llt = cholesky_of(g, what);
    MatrixXcd l = llt.matrixL();
    double s = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) s += std::log(l(i, i).real());
    return 2.0 * s;
}

struct WhitenedSystem {
    VectorXd slopes;   // descending
    MatrixXcd vectors; // ambient-coordinate columns, phi-orthonormal
};

// Whiten phi, eigensolve the transition matrix, map vectors back.
WhitenedSystem whitened_eigensystem(const HermitianPair& pair) {
    auto llt = cholesky_of(pair.phi.gram(), "relative_spectrum");
    MatrixXcd l = llt.matrixL();
    MatrixXcd linv = l.triangularView<Eigen::Lower>().solve(
        MatrixXcd::Identity(pair.dim(), pair.dim()));
    MatrixXcd m = linv * pair.psi.gram() * linv.adjoint();
    m = 0.5 * (m + m.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("relative_spectrum: eigensolver failed to converge");

    const int r = pair.dim();
    WhitenedSystem sys;
    sys.slopes.resize(r);
    sys.vectors.resize(r, r);
    // Eigen returns ascending eigenvalues; flip to descending slopes.
    for (int i = 0; i < r; ++i) {
        double lambda = es.eigenvalues()(r - 1 - i);
        if (lambda <= 0.0)
            throw std::runtime_error("relative_spectrum: non-positive pencil eigenvalue");
        sys.slopes(i) = 0.5 * std::log(lambda);
        sys.vectors.col(i) = linv.adjoint() * es.eigenvectors().col(r - 1 - i);
    }
    return sys;
}

}  // namespace

HermitianForm::HermitianForm(MatrixXcd gram, ScalarKind kind)
    : gram_(std::move(gram)), kind_(kind) {
    if (gram_.rows() != gram_.cols() || gram_.rows() == 0)
        throw std::invalid_argument("HermitianForm: Gram matrix must be square and non-empty");
    double scale = gram_.norm();
    double asym = (gram_ - gram_.adjoint()).norm();
    if (asym > 1e-12 * std::max(scale, 1.0))
        throw std::invalid_argument("HermitianForm: Gram matrix is not Hermitian");
    gram_ = 0.5 * (gram_ + gram_.adjoint().eval());
    cholesky_of(gram_, "HermitianForm");  // rejects non-positive-definite input
}

double HermitianForm::norm(const VectorXcd& x) const {
    std::complex<double> q = x.adjoint() * gram_ * x;
    return std::sqrt(std::max(0.0, q.real()));
}

HermitianPair::HermitianPair(HermitianForm p, HermitianForm q)
    : phi(std::move(p)), psi(std::move(q)) {
    if (phi.dim() != psi.dim())
        throw std::invalid_argument("HermitianPair: dimension mismatch");
    if (phi.scalar_kind() != psi.scalar_kind())
        throw std::invalid_argument("HermitianPair: scalar kind mismatch");
}

double SlopeProfile::sum() const {
    return std::accumulate(slopes.begin(), slopes.end(), 0.0);
}

double SlopeProfile::mean() const {
    if (slopes.empty()) throw std::domain_error("SlopeProfile: empty");
    return sum() / (double)slopes.size();
}

Polygon Polygon::from_slopes(const SlopeProfile& s) {
    Polygon p;
    const int r = (int)s.slopes.size();
    p.breakpoints.resize(r + 1);
    p.normalized.resize(r + 1);
    p.breakpoints[0] = 0.0;
    for (int i = 0; i < r; ++i) p.breakpoints[i + 1] = p.breakpoints[i] + s.slopes[i];
    for (int i = 0; i <= r; ++i) p.normalized[i] = p.breakpoints[i] / (double)r;
    return p;
}

double Polygon::at(double t) const {
    const int r = rank();
    if (t <= 0.0) return breakpoints.front();
    if (t >= (double)r) return breakpoints.back();
    int i = (int)std::floor(t);
    double f = t - i;
    return (1.0 - f) * breakpoints[i] + f * breakpoints[i + 1];
}

double Polygon::uniform_distance_normalized(const Polygon& other) const {
    // both normalized polygons live on [0,1]; compare on the union of nodes
    double d = 0.0;
    auto probe = [&](double t) {
        double a = at(t * rank()) / rank();
        double b = other.at(t * other.rank()) / other.rank();
        d = std::max(d, std::abs(a - b));
    };
    for (int i = 0; i <= rank(); ++i) probe((double)i / rank());
    for (int i = 0; i <= other.rank(); ++i) probe((double)i / other.rank());
    return d;
}

SpectralMeasure SpectralMeasure::from_slopes(const SlopeProfile& s) {
    SpectralMeasure m;
    const double mass = 1.0 / (double)s.slopes.size();
    for (double v : s.slopes) m.atoms.push_back({v, mass});
    return m;
}

void SpectralMeasure::validate() const {
    double total = 0.0;
    for (auto& [v, w] : atoms) {
        if (w <= 0.0) throw std::invalid_argument("SpectralMeasure: non-positive mass");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("SpectralMeasure: masses do not sum to 1");
}

double SpectralMeasure::mean() const {
    double s = 0.0;
    for (auto& [v, w] : atoms) s += v * w;
    return s;
}

double SpectralMeasure::cdf(double t) const {
    double s = 0.0;
    for (auto& [v, w] : atoms)
        if (v <= t) s += w;
    return s;
}

std::vector<double> SpectralMeasure::sorted_values() const {
    std::vector<double> v;
    v.reserve(atoms.size());
    for (auto& a : atoms) v.push_back(a.first);
    std::sort(v.begin(), v.end());
    return v;
}

SlopeProfile relative_spectrum(const HermitianPair& pair) {
    auto sys = whitened_eigensystem(pair);
    SlopeProfile s;
    s.slopes.assign(sys.slopes.data(), sys.slopes.data() + sys.slopes.size());
    return s;
}

double degree(const HermitianPair& pair) {
    return 0.5 * (log_det(pair.psi.gram(), "degree") - log_det(pair.phi.gram(), "degree"));
}

Flag hn_filtration(const HermitianPair& pair) {
    auto sys = whitened_eigensystem(pair);
    const int r = pair.dim();
    // group slopes by relative gap
    const double gap = 1e-8;
    double scale = std::max(1.0, std::abs(sys.slopes(0)));
    std::vector<int> group_end;  // exclusive end index of each group
    for (int i = 1; i < r; ++i) {
        if (sys.slopes(i - 1) - sys.slopes(i) > gap * scale) group_end.push_back(i);
    }
    group_end.push_back(r);

    Flag flag;
    int start = 0;
    for (int end : group_end) {
        flag.steps.push_back(sys.vectors.leftCols(end));
        double mu = 0.0;
        for (int i = start; i < end; ++i) mu += sys.slopes(i);
        flag.step_slopes.push_back(mu / (end - start));
        start = end;
    }
    return flag;
}

Polygon polygon_of(const HermitianPair& pair) {
    return Polygon::from_slopes(relative_spectrum(pair));
}

namespace {

void require_full_column_rank(const MatrixXcd& w, const char* what) {
    if (w.cols() == 0 || w.cols() > w.rows())
        throw std::invalid_argument(std::string(what) + ": bad subspace shape");
    Eigen::ColPivHouseholderQR<MatrixXcd> qr(w);
    if (qr.rank() != w.cols())
        throw std::invalid_argument(std::string(what) + ": subspace matrix is rank-deficient");
}

}  // namespace

HermitianPair restrict_pair(const HermitianPair& pair, const MatrixXcd& w) {
    require_full_column_rank(w, "restrict_pair");
    auto kind = pair.phi.scalar_kind();
    return HermitianPair(HermitianForm(w.adjoint() * pair.phi.gram() * w, kind),
                         HermitianForm(w.adjoint() * pair.psi.gram() * w, kind));
}

HermitianPair quotient_pair(const HermitianPair& pair, const MatrixXcd& w) {
    require_full_column_rank(w, "quotient_pair");
    const int r = pair.dim(), m = (int)w.cols();
    if (m >= r) throw std::invalid_argument("quotient_pair: subspace must be proper");

    // unitary completion of the column span
    Eigen::HouseholderQR<MatrixXcd> qr(w);
    MatrixXcd q = qr.householderQ();
    MatrixXcd t(r, r);
    t.leftCols(m) = w;
    t.rightCols(r - m) = q.rightCols(r - m);

    auto quotient_gram = [&](const MatrixXcd& g) {
        MatrixXcd adapted = t.adjoint() * g * t;
        MatrixXcd inv = adapted.inverse();
        MatrixXcd block = inv.bottomRightCorner(r - m, r - m);
        return MatrixXcd(block.inverse());
    };
    auto kind = pair.phi.scalar_kind();
    return HermitianPair(HermitianForm(quotient_gram(pair.phi.gram()), kind),
                         HermitianForm(quotient_gram(pair.psi.gram()), kind));
}

TruncationResult truncated_degree(const HermitianPair& pair, double a) {
    auto sys = whitened_eigensystem(pair);
    const int r = pair.dim();
    double value = 0.0;
    VectorXd capped(r);
    for (int i = 0; i < r; ++i) {
        value += std::max(sys.slopes(i), a);
        capped(i) = std::exp(2.0 * std::max(sys.slopes(i), a));
    }
    // surrogate Gram back in ambient coordinates: B^{-*} diag B^{-1} with
    // B the simultaneous basis; B^{-*} = L V by construction
    auto llt = cholesky_of(pair.phi.gram(), "truncated_degree");
    MatrixXcd l = llt.matrixL();
    MatrixXcd b = sys.vectors;  // = L^{-*} V
    MatrixXcd binv = b.inverse();
    MatrixXcd surrogate = binv.adjoint() * capped.asDiagonal() * binv;
    surrogate = 0.5 * (surrogate + surrogate.adjoint().eval());
    return TruncationResult{value, HermitianForm(surrogate, pair.phi.scalar_kind())};
}

double truncation_sandwich_violation(const HermitianPair& pair, double a,
                                     const HermitianForm& surrogate, int samples, Rng& rng) {
    const int r = pair.dim();
    double worst = 0.0;
    const double scale = std::exp(a);
    for (int s = 0; s < samples; ++s) {
        VectorXcd x(r);
        for (int i = 0; i < r; ++i) x(i) = rng.cnormal();
        double vee = std::max(pair.psi.norm(x), scale * pair.phi.norm(x));
        double sur = surrogate.norm(x);
        worst = std::max(worst, (vee - sur) / vee);                  // need vee <= sur
        worst = std::max(worst, (sur - std::sqrt(2.0) * vee) / sur); // need sur <= sqrt2 vee
    }
    return worst;
}

HermitianPair random_pair(int dim, Rng& rng, ScalarKind kind, double spread) {
    auto random_gram = [&]() {
        MatrixXcd m(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                m(i, j) = kind == ScalarKind::complex ? rng.cnormal()
                                                      : std::complex<double>(rng.normal(), 0.0);
        MatrixXcd g = m.adjoint() * m + 1e-3 * (double)dim * MatrixXcd::Identity(dim, dim);
        return MatrixXcd(spread * g);
    };
    return HermitianPair(HermitianForm(random_gram(), kind), HermitianForm(random_gram(), kind));
}

}  // namespace okspec
