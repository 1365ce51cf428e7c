#include "okspec/norms/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace okspec {

NormOracle NormOracle::functional_family(MatrixXcd covectors, ScalarKind kind) {
    if (covectors.rows() == 0 || covectors.cols() == 0)
        throw std::invalid_argument("NormOracle: empty functional family");
    Eigen::ColPivHouseholderQR<MatrixXcd> qr(covectors);
    if (qr.rank() != covectors.cols())
        throw std::invalid_argument(
            "NormOracle: functional family does not span the dual space; the induced "
            "max-of-functionals norm would be degenerate");
    auto n = std::make_shared<Node>();
    n->kind = Kind::functional_family;
    n->dim = (int)covectors.cols();
    n->scalar_kind = kind;
    n->covectors = std::move(covectors);
    return NormOracle(n);
}

NormOracle NormOracle::hermitian(HermitianForm form) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::hermitian;
    n->dim = form.dim();
    n->scalar_kind = form.scalar_kind();
    n->her = std::make_shared<HermitianForm>(std::move(form));
    return NormOracle(n);
}

NormOracle NormOracle::scaled(NormOracle base, double log_factor) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::scaled;
    n->dim = base.dim();
    n->scalar_kind = base.scalar_kind();
    n->log_factor = log_factor;
    n->a = base.node_;
    return NormOracle(n);
}

NormOracle NormOracle::max_combine(NormOracle left, NormOracle right) {
    if (left.dim() != right.dim())
        throw std::invalid_argument("NormOracle: max of norms on different dimensions");
    auto n = std::make_shared<Node>();
    n->kind = Kind::max_of;
    n->dim = left.dim();
    n->scalar_kind = left.scalar_kind();
    n->a = left.node_;
    n->b = right.node_;
    return NormOracle(n);
}

double NormOracle::eval_node(const Node& n, const VectorXcd& x) {
    switch (n.kind) {
        case Kind::functional_family: {
            double best = 0.0;
            for (Eigen::Index j = 0; j < n.covectors.rows(); ++j) {
                std::complex<double> lx = n.covectors.row(j) * x;
                double v = std::abs(lx);
                if (v > best) best = v;
            }
            return best;
        }
        case Kind::hermitian:
            return n.her->norm(x);
        case Kind::scaled:
            return std::exp(n.log_factor) * eval_node(*n.a, x);
        case Kind::max_of:
            return std::max(eval_node(*n.a, x), eval_node(*n.b, x));
    }
    throw std::logic_error("NormOracle: bad node");
}

double NormOracle::evaluate(const VectorXcd& x) const {
    if (x.size() != dim()) throw std::invalid_argument("NormOracle: dimension mismatch");
    return eval_node(*node_, x);
}

const MatrixXcd& NormOracle::covectors() const {
    if (node_->kind != Kind::functional_family)
        throw std::logic_error("NormOracle: not a functional family");
    return node_->covectors;
}

const HermitianForm& NormOracle::form() const {
    if (node_->kind != Kind::hermitian) throw std::logic_error("NormOracle: not hermitian");
    return *node_->her;
}

double NormOracle::log_factor() const {
    if (node_->kind != Kind::scaled) throw std::logic_error("NormOracle: not scaled");
    return node_->log_factor;
}

NormOracle NormOracle::left() const {
    if (node_->kind != Kind::max_of) throw std::logic_error("NormOracle: not a max");
    return NormOracle(node_->a);
}

NormOracle NormOracle::right() const {
    if (node_->kind != Kind::max_of) throw std::logic_error("NormOracle: not a max");
    return NormOracle(node_->b);
}

NormOracle NormOracle::base() const {
    if (node_->kind != Kind::scaled) throw std::logic_error("NormOracle: not scaled");
    return NormOracle(node_->a);
}

void NormOracle::flatten(const Node& n, double log_scale, std::vector<Eigen::RowVectorXcd>& out,
                         bool& pure) {
    switch (n.kind) {
        case Kind::functional_family:
            for (Eigen::Index j = 0; j < n.covectors.rows(); ++j)
                out.push_back(std::exp(log_scale) * n.covectors.row(j));
            return;
        case Kind::hermitian:
            pure = false;
            return;
        case Kind::scaled:
            flatten(*n.a, log_scale + n.log_factor, out, pure);
            return;
        case Kind::max_of:
            flatten(*n.a, log_scale, out, pure);
            flatten(*n.b, log_scale, out, pure);
            return;
    }
}

MatrixXcd NormOracle::flattened_covectors() const {
    std::vector<Eigen::RowVectorXcd> rows;
    bool pure = true;
    flatten(*node_, 0.0, rows, pure);
    if (!pure) return MatrixXcd(0, dim());
    MatrixXcd m((Eigen::Index)rows.size(), dim());
    for (Eigen::Index i = 0; i < m.rows(); ++i) m.row(i) = rows[(size_t)i];
    return m;
}

bool NormOracle::purely_functional() const {
    std::vector<Eigen::RowVectorXcd> rows;
    bool pure = true;
    flatten(*node_, 0.0, rows, pure);
    return pure;
}

MatrixXcd probe_directions(int dim, ScalarKind kind, int random_count, const MatrixXcd& seeds,
                           Rng& rng) {
    std::vector<Eigen::RowVectorXcd> rows;
    for (Eigen::Index i = 0; i < seeds.rows(); ++i) rows.push_back(seeds.row(i).conjugate());
    // pairwise combinations of the first seeds catch polytope corners
    const Eigen::Index cap = std::min<Eigen::Index>(seeds.rows(), 24);
    for (Eigen::Index i = 0; i < cap; ++i)
        for (Eigen::Index j = i + 1; j < cap; ++j) {
            rows.push_back((seeds.row(i) + seeds.row(j)).conjugate());
            rows.push_back((seeds.row(i) - seeds.row(j)).conjugate());
        }
    for (int i = 0; i < random_count; ++i) {
        Eigen::RowVectorXcd v(dim);
        for (int k = 0; k < dim; ++k)
            v(k) = kind == ScalarKind::complex ? rng.cnormal()
                                               : std::complex<double>(rng.normal(), 0.0);
        rows.push_back(v);
    }
    MatrixXcd out((Eigen::Index)rows.size(), dim);
    Eigen::Index at = 0;
    for (auto& r : rows)
        if (r.norm() > 1e-12) out.row(at++) = r;
    return out.topRows(at);
}

}  // namespace okspec
