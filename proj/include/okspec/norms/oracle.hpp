#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "okspec/core/rng.hpp"
#include "okspec/hermitian/hermitian.hpp"

namespace okspec {

// A norm presented as an evaluation oracle. The base representation is a
// finite family of covectors l_j with ||x|| = max_j |l_j(x)| (the shape of a
// sup norm sampled at finitely many points); scaling, pointwise max and
// Hermitian forms are combinators on top of it.
class NormOracle {
public:
    enum class Kind { functional_family, scaled, max_of, hermitian };

    static NormOracle functional_family(MatrixXcd covectors, ScalarKind kind);
    static NormOracle hermitian(HermitianForm form);
    static NormOracle scaled(NormOracle base, double log_factor);
    static NormOracle max_combine(NormOracle left, NormOracle right);

    Kind kind() const { return node_->kind; }
    int dim() const { return node_->dim; }
    ScalarKind scalar_kind() const { return node_->scalar_kind; }

    double evaluate(const VectorXcd& x) const;

    // covectors of a functional_family node (valid only for that kind)
    const MatrixXcd& covectors() const;
    const HermitianForm& form() const;
    double log_factor() const;
    NormOracle left() const;
    NormOracle right() const;
    NormOracle base() const;

    // flattened functional cloud, scale factors applied; empty when any
    // leaf under this node is Hermitian
    MatrixXcd flattened_covectors() const;
    bool purely_functional() const;

    // real dimension after realification (2 * dim for complex scalars)
    int real_dim() const {
        return scalar_kind() == ScalarKind::complex ? 2 * dim() : dim();
    }

private:
    struct Node {
        Kind kind;
        int dim = 0;
        ScalarKind scalar_kind = ScalarKind::real;
        MatrixXcd covectors;                       // functional_family
        std::shared_ptr<const HermitianForm> her;  // hermitian
        double log_factor = 0.0;                   // scaled
        std::shared_ptr<const Node> a, b;          // scaled child / max children
    };

    explicit NormOracle(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static double eval_node(const Node& n, const VectorXcd& x);
    static void flatten(const Node& n, double log_scale, std::vector<Eigen::RowVectorXcd>& out,
                        bool& pure);

    std::shared_ptr<const Node> node_;
};

// deterministic probe directions: Gaussian plus the given seed rows and
// their pairwise sums and differences (capped)
MatrixXcd probe_directions(int dim, ScalarKind kind, int random_count, const MatrixXcd& seeds,
                           Rng& rng);

}  // namespace okspec
