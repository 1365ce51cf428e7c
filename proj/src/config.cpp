#include "okspec/cli/config.hpp"

#include <cstdio>
#include <set>
#include <stdexcept>

namespace okspec {

using nlohmann::json;

namespace {

ExperimentConfig::WeightSpec weight_from_json(const json& j) {
    ExperimentConfig::WeightSpec w;
    std::set<std::string> known{"base", "shift", "bump"};
    for (auto& [k, v] : j.items())
        if (!known.count(k))
            throw std::invalid_argument("config: unknown weight key '" + k + "'");
    if (j.contains("base")) w.base = j.at("base").get<std::string>();
    if (w.base != "fubini-study" && w.base != "max-log" && w.base != "flat")
        throw std::invalid_argument("config: unknown weight base '" + w.base + "'");
    if (j.contains("shift")) w.shift = j.at("shift").get<double>();
    if (j.contains("bump")) {
        const json& b = j.at("bump");
        w.has_bump = true;
        w.bump_re = b.value("center_re", 0.3);
        w.bump_im = b.value("center_im", 0.0);
        w.bump_height = b.value("height", 0.1);
        w.bump_radius = b.value("radius", 0.5);
        if (w.bump_radius <= 0.0) throw std::invalid_argument("config: bump radius <= 0");
    }
    return w;
}

json weight_to_json(const ExperimentConfig::WeightSpec& w) {
    json j;
    j["base"] = w.base;
    j["shift"] = w.shift;
    if (w.has_bump) {
        j["bump"] = {{"center_re", w.bump_re},
                     {"center_im", w.bump_im},
                     {"height", w.bump_height},
                     {"radius", w.bump_radius}};
    }
    return j;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    std::set<std::string> known{"variety", "phi",    "psi",   "norm", "order",
                                "n_schedule", "a_grid", "seed", "grid", "quadrature",
                                "out"};
    for (auto& [k, v] : j.items())
        if (!known.count(k)) throw std::invalid_argument("config: unknown key '" + k + "'");

    if (!j.contains("seed"))
        throw std::invalid_argument("config: a seed is mandatory for reproducible runs");
    c.seed = j.at("seed").get<std::uint64_t>();

    std::string var = j.value("variety", "P1");
    if (var == "P1") c.variety = Variety::P1;
    else if (var == "P2") c.variety = Variety::P2;
    else throw std::invalid_argument("config: variety must be P1 or P2");

    if (j.contains("phi")) c.phi = weight_from_json(j.at("phi"));
    if (j.contains("psi")) c.psi = weight_from_json(j.at("psi"));
    c.norm = j.value("norm", "sup");
    if (c.norm != "sup" && c.norm != "l2" && c.norm != "both")
        throw std::invalid_argument("config: norm must be sup, l2 or both");
    c.order = order_kind_from_string(j.value("order", "grlex"));
    if (j.contains("n_schedule")) {
        c.n_schedule = j.at("n_schedule").get<std::vector<int>>();
        if (c.n_schedule.empty()) throw std::invalid_argument("config: empty n_schedule");
        for (size_t i = 0; i < c.n_schedule.size(); ++i) {
            if (c.n_schedule[i] < 1 ||
                (i > 0 && c.n_schedule[i] <= c.n_schedule[i - 1]))
                throw std::invalid_argument("config: n_schedule must be increasing and positive");
        }
    }
    if (j.contains("a_grid")) {
        c.a_grid_count = j.at("a_grid").value("count", 64);
        c.a_halfwidth = j.at("a_grid").value("halfwidth", 0.0);
        if (c.a_grid_count < 2) throw std::invalid_argument("config: a_grid.count < 2");
    }
    if (j.contains("grid")) {
        c.grid_radial = j.at("grid").value("radial", 32);
        c.grid_angular = j.at("grid").value("angular", 64);
    }
    if (j.contains("quadrature")) {
        c.quad_radial = j.at("quadrature").value("radial", 24);
        c.quad_angular = j.at("quadrature").value("angular", 48);
    }
    c.out_dir = j.value("out", c.out_dir);
    return c;
}

json ExperimentConfig::to_json() const {
    json j;
    j["variety"] = variety == Variety::P1 ? "P1" : "P2";
    j["phi"] = weight_to_json(phi);
    j["psi"] = weight_to_json(psi);
    j["norm"] = norm;
    j["order"] = to_string(order);
    j["n_schedule"] = n_schedule;
    j["a_grid"] = {{"count", a_grid_count}, {"halfwidth", a_halfwidth}};
    j["seed"] = seed;
    j["grid"] = {{"radial", grid_radial}, {"angular", grid_angular}};
    j["quadrature"] = {{"radial", quad_radial}, {"angular", quad_angular}};
    j["out"] = out_dir;
    return j;
}

std::string ExperimentConfig::canonical() const { return to_json().dump(); }

std::string ExperimentConfig::hash_hex() const {
    std::string s = canonical();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

MetricWeight ExperimentConfig::build_weight(const WeightSpec& spec) const {
    MetricWeight w;
    if (spec.base == "fubini-study") w = MetricWeight::fubini_study(variety);
    else if (spec.base == "max-log") w = MetricWeight::max_log(variety);
    else
        w = MetricWeight(variety, "flat", [](const ChartPoint&) { return 0.0; }, true, true);
    if (spec.has_bump)
        w = MetricWeight::bump(w, {spec.bump_re, spec.bump_im}, spec.bump_height,
                               spec.bump_radius);
    if (spec.shift != 0.0) w = MetricWeight::shifted(w, spec.shift);
    return w;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace okspec
