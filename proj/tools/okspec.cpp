// okspec: experiments on finite-dimensional spaces carrying two norms.
//
// Subcommands expose one module each; `run` wires the full pipeline from a
// JSON config into a reproducible artifact bundle.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "okspec/cli/pipeline.hpp"
#include "okspec/okounkov/semigroup.hpp"

using namespace okspec;
using nlohmann::json;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slope spectra, Okounkov limits and convergence diagnostics"};
    app.require_subcommand(1);

    // run
    std::string cfg_path, out_dir_override;
    std::uint64_t seed_override = 0;
    bool seed_given = false;
    int n_max_override = 0;
    std::string order_override, norm_override;
    auto* run = app.add_subcommand("run", "run a configured experiment bundle");
    run->add_option("--config", cfg_path, "JSON config path")->required();
    run->add_option("--out", out_dir_override, "output directory (overrides config)");
    run->add_option("--seed", seed_override, "seed override")->each([&](const std::string&) {
        seed_given = true;
    });
    run->add_option("--n-max", n_max_override, "truncate the n schedule at this level");
    run->add_option("--order", order_override, "monomial order: grlex, grevlex or lex");
    run->add_option("--norm", norm_override, "norm kind: sup, l2 or both");

    // spectrum / polygon
    std::string pair_path, out_path;
    auto* spectrum = app.add_subcommand("spectrum", "slopes of a JSON Gram pair");
    spectrum->add_option("--pair", pair_path, "JSON Gram pair path")->required();
    spectrum->add_option("--out", out_path, "output CSV (default stdout)");
    auto* polygon = app.add_subcommand("polygon", "polygon of a JSON Gram pair");
    polygon->add_option("--pair", pair_path, "JSON Gram pair path")->required();
    polygon->add_option("--out", out_path, "output CSV (default stdout)");

    // okounkov
    std::string table_path;
    double t_lo = 0.0, t_hi = 0.0;
    int t_count = 65;
    int n_min = 1;
    auto* okk = app.add_subcommand("okounkov", "filtered-body CDF of a value table");
    okk->add_option("--table", table_path, "CSV table n,a1[,a2],value")->required();
    okk->add_option("--t-lo", t_lo, "lower end of the t grid");
    okk->add_option("--t-hi", t_hi, "upper end of the t grid");
    okk->add_option("--t-count", t_count, "t grid size");
    okk->add_option("--n-min", n_min, "first level entering the hulls");
    okk->add_option("--out", out_path, "output CSV (default stdout)");

    // ultra
    std::string tree_path;
    auto* ultra_cmd = app.add_subcommand("ultra", "exact report for a JSON norm-tree pair");
    ultra_cmd->add_option("--tree", tree_path, "JSON norm tree pair")->required();
    ultra_cmd->add_option("--out", out_path, "output JSON (default stdout)");

    // converge
    std::string spectra_path;
    int a_count = 64;
    double a_halfwidth = 2.0;
    auto* conv = app.add_subcommand("converge", "convergence report from a spectra CSV");
    conv->add_option("--spectra", spectra_path, "CSV n,index,value")->required();
    conv->add_option("--a-count", a_count, "truncation grid size");
    conv->add_option("--a-halfwidth", a_halfwidth, "truncation grid half-width");
    conv->add_option("--out", out_path, "output JSON (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::from_json(load_json(cfg_path));
            if (seed_given) cfg.seed = seed_override;
            if (!out_dir_override.empty()) cfg.out_dir = out_dir_override;
            if (!order_override.empty()) cfg.order = order_kind_from_string(order_override);
            if (!norm_override.empty()) {
                if (norm_override != "sup" && norm_override != "l2" && norm_override != "both")
                    throw std::invalid_argument("norm must be sup, l2 or both");
                cfg.norm = norm_override;
            }
            if (n_max_override > 0) {
                std::vector<int> cut;
                for (int n : cfg.n_schedule)
                    if (n <= n_max_override) cut.push_back(n);
                if (cut.empty()) throw std::invalid_argument("--n-max removes every level");
                cfg.n_schedule = cut;
            }
            ExperimentResult res = run_experiment(cfg);
            write_bundle(res, cfg.out_dir);
            std::cout << "bundle written to " << cfg.out_dir << " (config "
                      << cfg.hash_hex() << ")\n";
            return 0;
        }
        if (spectrum->parsed()) {
            HermitianPair pair = pair_from_json(load_json(pair_path));
            emit(spectrum_csv(relative_spectrum(pair)), out_path);
            return 0;
        }
        if (polygon->parsed()) {
            HermitianPair pair = pair_from_json(load_json(pair_path));
            emit(polygon_csv(polygon_of(pair)), out_path);
            return 0;
        }
        if (okk->parsed()) {
            std::ifstream in(table_path);
            if (!in) throw std::invalid_argument("cannot open " + table_path);
            TableInput t = table_from_csv(in);
            auto super = t.table->audit_superadditive();
            if (!super.pass)
                throw std::invalid_argument("table is not superadditive: " + super.witness);
            double theta = t.table->theta_estimate();
            if (t_lo == 0.0 && t_hi == 0.0) {
                t_hi = theta;
                t_lo = theta - 2.0;
            }
            std::vector<double> grid;
            for (int i = 0; i < t_count; ++i)
                grid.push_back(t_lo + (t_hi - t_lo) * (double)i / (double)(t_count - 1));
            auto cdf = filtered_cdf(*t.sample, *t.table, grid, n_min);
            emit(cdf_csv(cdf), out_path);
            return 0;
        }
        if (ultra_cmd->parsed()) {
            json rep = ultra_report_from_json(load_json(tree_path));
            emit(rep.dump(2) + "\n", out_path);
            return 0;
        }
        if (conv->parsed()) {
            std::ifstream in(spectra_path);
            if (!in) throw std::invalid_argument("cannot open " + spectra_path);
            auto laws = laws_from_spectra_csv(in);
            std::vector<double> a_grid;
            for (int i = 0; i < a_count; ++i)
                a_grid.push_back(-a_halfwidth +
                                 2.0 * a_halfwidth * (double)i / (double)(a_count - 1));
            auto rep = convergence_report(laws, a_grid);
            emit(report_to_json(rep).dump(2) + "\n", out_path);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
