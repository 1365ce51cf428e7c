#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "okspec/okounkov/order.hpp"
#include "okspec/series/weight.hpp"

namespace okspec {

// reproducible experiment description; the JSON schema rejects unknown keys
// and requires an explicit seed
struct ExperimentConfig {
    struct WeightSpec {
        std::string base = "fubini-study";  // fubini-study | max-log | flat
        double shift = 0.0;
        bool has_bump = false;
        double bump_re = 0.3, bump_im = 0.0, bump_height = 0.1, bump_radius = 0.5;
    };

    Variety variety = Variety::P1;
    WeightSpec phi, psi;
    std::string norm = "sup";  // sup | l2 | both
    OrderKind order = OrderKind::grlex;
    std::vector<int> n_schedule{5, 10, 20, 40};
    int a_grid_count = 64;
    double a_halfwidth = 0.0;  // 0: distortion bound + 1
    std::uint64_t seed = 0;
    int grid_radial = 32, grid_angular = 64;
    int quad_radial = 24, quad_angular = 48;
    std::string out_dir = "okspec-out";

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    std::string canonical() const;
    std::string hash_hex() const;

    MetricWeight build_weight(const WeightSpec& spec) const;
};

// fixed-width float formatting shared by every CSV/JSON writer so reruns are
// byte-identical
std::string format_double(double v);

}  // namespace okspec
