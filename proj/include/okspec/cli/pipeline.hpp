#pragma once

#include <istream>
#include <map>
#include <optional>

#include "okspec/cli/config.hpp"
#include "okspec/laws/report.hpp"
#include "okspec/norms/certificates.hpp"
#include "okspec/series/norms.hpp"

namespace okspec {

// everything one run produces; `files` holds the rendered bundle so tests
// and the manifest can hash contents without touching the filesystem
struct ExperimentResult {
    ExperimentConfig config;
    double distortion_per_n = 0.0;  // max |u_phi - u_psi| over the grid
    std::vector<double> a_grid;

    std::vector<LevelLaw> sup_laws, l2_laws;
    std::optional<ConvergenceReport> sup_report, l2_report;

    // Okounkov side (sup norms): per-level means of (Phi - Psi)/n and the
    // extrapolated energy
    std::vector<double> okounkov_means;
    double energy_okounkov = 0.0;
    double table_budget = 0.0;
    ConditionsReport conditions;

    std::map<std::string, std::string> files;  // name -> contents
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);
void write_bundle(const ExperimentResult& result, const std::string& dir);

// -- subcommand building blocks ---------------------------------------------

// Gram-pair JSON: {"scalar": "real"|"complex", "phi": rows, "psi": rows},
// complex entries as [re, im]
HermitianPair pair_from_json(const nlohmann::json& j);
std::string spectrum_csv(const SlopeProfile& s);
std::string polygon_csv(const Polygon& p);

// functional-family JSON: {"scalar": ..., "functionals": rows}
NormOracle oracle_from_json(const nlohmann::json& j);
nlohmann::json certificate_to_json(const SandwichCertificate& cert);

// ultrametric tree pair: {"field": {...}, "phi": tree, "psi": tree,
// "truncations": [rationals]} -> exact report
nlohmann::json ultra_report_from_json(const nlohmann::json& j);

// value-table CSV (header: n,a1[,a2],value) -> sample + table
struct TableInput {
    std::shared_ptr<SemigroupSample> sample;
    std::shared_ptr<ValueTable> table;
    int d = 1;
};
TableInput table_from_csv(std::istream& in);
std::string cdf_csv(const std::vector<std::pair<double, double>>& cdf);

// spectra CSV (header: n,index,value; one law per n) for `converge`
std::vector<LevelLaw> laws_from_spectra_csv(std::istream& in);
nlohmann::json report_to_json(const ConvergenceReport& rep);

}  // namespace okspec
