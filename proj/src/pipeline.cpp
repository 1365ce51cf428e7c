#include "okspec/cli/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "okspec/ultra/norms.hpp"

namespace okspec {

using nlohmann::json;

namespace {

HermitianForm recentered(const SandwichCertificate& cert, ScalarKind kind) {
    double s = std::sqrt(cert.upper_factor * cert.lower_factor);
    return HermitianForm(s * s * cert.form.gram(), kind);
}

SpectralMeasure normalized_law(const HermitianPair& pair, int n) {
    SlopeProfile s = relative_spectrum(pair);
    for (auto& mu : s.slopes) mu /= (double)n;
    return SpectralMeasure::from_slopes(s);
}

std::string csv_of_laws(const std::vector<LevelLaw>& laws) {
    std::ostringstream os;
    os << "n,index,value\n";
    for (const auto& l : laws) {
        int idx = 0;
        for (auto& [v, w] : l.law.atoms) {
            // atoms merge equal values; emit one row per unit of mass
            int copies = std::max(1, (int)std::lround(w * l.dim));
            for (int c = 0; c < copies; ++c)
                os << l.n << "," << idx++ << "," << format_double(v) << "\n";
        }
    }
    return os.str();
}

std::string csv_of_polygons(const std::vector<int>& ns, const std::vector<Polygon>& polys) {
    std::ostringstream os;
    os << "n,i,t,value\n";
    for (size_t k = 0; k < polys.size(); ++k) {
        const Polygon& p = polys[k];
        for (size_t i = 0; i < p.normalized.size(); ++i) {
            double t = (double)i / (double)(p.normalized.size() - 1);
            os << ns[k] << "," << i << "," << format_double(t) << ","
               << format_double(p.normalized[i]) << "\n";
        }
    }
    return os.str();
}

json laws_to_json(const std::vector<LevelLaw>& laws) {
    json out = json::array();
    for (const auto& l : laws) {
        json atoms = json::array();
        for (auto& [v, w] : l.law.atoms) atoms.push_back({v, w});
        out.push_back({{"n", l.n}, {"dim", l.dim}, {"atoms", atoms}});
    }
    return out;
}

}  // namespace

json report_to_json(const ConvergenceReport& rep) {
    json j;
    j["ns"] = rep.ns;
    j["mean_slopes"] = rep.mean_slopes;
    j["a_grid"] = rep.a_grid;
    j["truncated_means"] = rep.truncated_means;
    j["budgets"] = rep.budgets;
    j["kolmogorov_steps"] = rep.kolmogorov_steps;
    j["polygon_steps"] = rep.polygon_steps;
    j["energy_estimate"] = rep.energy_estimate;
    j["converged"] = rep.converged;
    if (!rep.note.empty()) j["note"] = rep.note;
    json cdf = json::array();
    for (auto& [t, f] : rep.extrapolated_cdf.points) cdf.push_back({t, f});
    j["extrapolated_cdf"] = cdf;
    return j;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.config = cfg;

    MetricWeight wphi = cfg.build_weight(cfg.phi);
    MetricWeight wpsi = cfg.build_weight(cfg.psi);
    Grid grid = Grid::polar(cfg.variety, cfg.grid_radial, cfg.grid_angular);
    MonomialOrder order{cfg.order, cfg.variety == Variety::P1 ? 1 : 2};

    res.distortion_per_n = distortion_bound(wphi, wpsi, 1, grid);
    double halfwidth = cfg.a_halfwidth > 0.0 ? cfg.a_halfwidth : res.distortion_per_n + 1.0;
    for (int i = 0; i < cfg.a_grid_count; ++i)
        res.a_grid.push_back(-halfwidth +
                             2.0 * halfwidth * (double)i / (double)(cfg.a_grid_count - 1));

    const bool want_sup = cfg.norm == "sup" || cfg.norm == "both";
    const bool want_l2 = cfg.norm == "l2" || cfg.norm == "both";
    const SurrogateOptions grid_opts{1e-7, 1000000};

    std::optional<QuadratureMeasure> measure;
    if (want_l2)
        measure = QuadratureMeasure::fubini_study(cfg.variety, cfg.quad_radial,
                                                  cfg.quad_angular);

    // Per level: laws from the surrogate (or L2) pair, and Okounkov value
    // tables from the projection residuals of the same Grams. Sharing the
    // forms makes the spectral and graded estimates two independent
    // computations of one quantity, linked by exact flag additivity.
    for (int n : cfg.n_schedule) {
        Backend backend = Backend::make(cfg.variety, n, order);
        if (want_sup) {
            NormOracle ophi = sup_norm_oracle(backend, wphi, grid);
            NormOracle opsi = sup_norm_oracle(backend, wpsi, grid);
            SandwichCertificate cphi = john_form(ophi, grid_opts);
            SandwichCertificate cpsi = john_form(opsi, grid_opts);
            HermitianPair surrogate(recentered(cphi, ScalarKind::complex),
                                    recentered(cpsi, ScalarKind::complex));
            res.sup_laws.push_back({n, backend.dim(), normalized_law(surrogate, n)});
            res.table_budget = std::max(
                res.table_budget, 0.5 * std::max(cphi.log_ratio(), cpsi.log_ratio()));

            MatrixXcd rows = MatrixXcd::Identity(backend.dim(), backend.dim());
            std::vector<double> phi_vals = quotient_log_norms(rows, surrogate.phi.gram());
            std::vector<double> psi_vals = quotient_log_norms(rows, surrogate.psi.gram());
            double acc = 0.0;
            for (int j = 0; j < backend.dim(); ++j)
                acc += (phi_vals[(size_t)j] - psi_vals[(size_t)j]) / n;
            res.okounkov_means.push_back(acc / (double)backend.dim());
        }
        if (want_l2) {
            HermitianPair pair(l2_gram(backend, wphi, *measure),
                               l2_gram(backend, wpsi, *measure));
            res.l2_laws.push_back({n, backend.dim(), normalized_law(pair, n)});
            if (!want_sup) {
                MatrixXcd rows = MatrixXcd::Identity(backend.dim(), backend.dim());
                std::vector<double> phi_vals = quotient_log_norms(rows, pair.phi.gram());
                std::vector<double> psi_vals = quotient_log_norms(rows, pair.psi.gram());
                double acc = 0.0;
                for (int j = 0; j < backend.dim(); ++j)
                    acc += (phi_vals[(size_t)j] - psi_vals[(size_t)j]) / n;
                res.okounkov_means.push_back(acc / (double)backend.dim());
            }
        }
    }

    double bound = halfwidth + 1.0;
    if (want_sup) res.sup_report = convergence_report(res.sup_laws, res.a_grid, bound);
    if (want_l2) res.l2_report = convergence_report(res.l2_laws, res.a_grid, bound);

    {
        // the sampled semigroup of the complete series, for the conditions
        // report; every level is the full lattice simplex
        int n_max = cfg.n_schedule.back();
        SemigroupSample sample(cfg.variety == Variety::P1 ? 1 : 2, n_max);
        for (int n = 1; n <= n_max; ++n)
            sample.set_level(n, order.graded_box(n));
        res.conditions = conditions_check(sample);
    }
    if (res.okounkov_means.size() >= 2) {
        double n2 = (double)cfg.n_schedule.back();
        double n1 = (double)cfg.n_schedule[cfg.n_schedule.size() - 2];
        double w = n2 / (n2 - n1);
        res.energy_okounkov = w * res.okounkov_means.back() +
                              (1.0 - w) * res.okounkov_means[res.okounkov_means.size() - 2];
    } else if (!res.okounkov_means.empty()) {
        res.energy_okounkov = res.okounkov_means.back();
    }

    // rendered bundle
    const auto& primary_laws = want_sup ? res.sup_laws : res.l2_laws;
    const auto& primary_report = want_sup ? *res.sup_report : *res.l2_report;
    res.files["spectra.csv"] = csv_of_laws(primary_laws);
    res.files["polygons.csv"] = csv_of_polygons(primary_report.ns, primary_report.polygons);
    {
        std::ostringstream os;
        os << "t,F\n";
        for (auto& [t, f] : primary_report.extrapolated_cdf.points)
            os << format_double(t) << "," << format_double(f) << "\n";
        res.files["cdf.csv"] = os.str();
    }
    {
        json rj;
        rj["config"] = cfg.to_json();
        rj["distortion_per_n"] = res.distortion_per_n;
        if (res.sup_report) rj["sup"] = report_to_json(*res.sup_report);
        if (res.l2_report) rj["l2"] = report_to_json(*res.l2_report);
        if (want_sup) {
            rj["okounkov"] = {{"means", res.okounkov_means},
                              {"energy", res.energy_okounkov},
                              {"table_budget", res.table_budget},
                              {"conditions", res.conditions.detail}};
            rj["sup_laws"] = laws_to_json(res.sup_laws);
        }
        if (want_l2) rj["l2_laws"] = laws_to_json(res.l2_laws);
        res.files["report.json"] = rj.dump(2) + "\n";
    }
    {
        json mf;
        mf["config_hash"] = cfg.hash_hex();
        mf["config"] = cfg.to_json();
        mf["tool"] = "okspec";
        mf["format_version"] = 1;
        json outputs = json::object();
        for (auto& [name, content] : res.files) {
            if (name == "manifest.json") continue;
            std::uint64_t h = 0xcbf29ce484222325ULL;
            for (unsigned char ch : content) {
                h ^= ch;
                h *= 0x100000001b3ULL;
            }
            char buf[20];
            std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
            outputs[name] = buf;
        }
        mf["outputs"] = outputs;
        res.files["manifest.json"] = mf.dump(2) + "\n";
    }
    return res;
}

void write_bundle(const ExperimentResult& result, const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (auto& [name, content] : result.files) {
        std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
        if (!out) throw std::runtime_error("write_bundle: cannot open " + name);
        out << content;
    }
}

HermitianPair pair_from_json(const json& j) {
    auto parse_matrix = [&](const json& rows, ScalarKind kind) {
        if (!rows.is_array() || rows.empty())
            throw std::invalid_argument("matrix JSON: expected a non-empty array of rows");
        int r = (int)rows.size();
        MatrixXcd g(r, r);
        for (int i = 0; i < r; ++i) {
            const json& row = rows[(size_t)i];
            if ((int)row.size() != r)
                throw std::invalid_argument("matrix JSON: rows must have length " +
                                            std::to_string(r));
            for (int k = 0; k < r; ++k) {
                const json& e = row[(size_t)k];
                if (e.is_array()) {
                    if (e.size() != 2)
                        throw std::invalid_argument("matrix JSON: complex entries are [re, im]");
                    g(i, k) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
                } else {
                    g(i, k) = std::complex<double>(e.get<double>(), 0.0);
                }
            }
        }
        return HermitianForm(g, kind);
    };
    ScalarKind kind = j.value("scalar", "real") == std::string("complex") ? ScalarKind::complex
                                                                          : ScalarKind::real;
    return HermitianPair(parse_matrix(j.at("phi"), kind), parse_matrix(j.at("psi"), kind));
}

std::string spectrum_csv(const SlopeProfile& s) {
    std::ostringstream os;
    os << "index,value\n";
    for (size_t i = 0; i < s.slopes.size(); ++i)
        os << i << "," << format_double(s.slopes[i]) << "\n";
    return os.str();
}

std::string polygon_csv(const Polygon& p) {
    std::ostringstream os;
    os << "index,value\n";
    for (size_t i = 0; i < p.breakpoints.size(); ++i)
        os << i << "," << format_double(p.breakpoints[i]) << "\n";
    return os.str();
}

NormOracle oracle_from_json(const json& j) {
    ScalarKind kind = j.value("scalar", "real") == std::string("complex") ? ScalarKind::complex
                                                                          : ScalarKind::real;
    const json& rows = j.at("functionals");
    if (!rows.is_array() || rows.empty())
        throw std::invalid_argument("oracle JSON: expected covector rows");
    int m = (int)rows.size(), dim = (int)rows[0].size();
    MatrixXcd f(m, dim);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < dim; ++k) {
            const json& e = rows[(size_t)i][(size_t)k];
            if (e.is_array())
                f(i, k) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
            else
                f(i, k) = std::complex<double>(e.get<double>(), 0.0);
        }
    return NormOracle::functional_family(f, kind);
}

json certificate_to_json(const SandwichCertificate& cert) {
    json j;
    json rows = json::array();
    const MatrixXcd& g = cert.form.gram();
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < g.cols(); ++k)
            row.push_back({g(i, k).real(), g(i, k).imag()});
        rows.push_back(row);
    }
    j["form"] = rows;
    j["lower_factor"] = cert.lower_factor;
    j["upper_factor"] = cert.upper_factor;
    j["checked_directions"] = cert.checked_directions;
    return j;
}

namespace {

Rational rational_from_json(const json& e) {
    if (e.is_number_integer()) return Rational(e.get<long long>());
    if (e.is_string()) {
        std::string s = e.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }
    if (e.is_array() && e.size() == 2)
        return Rational(e[0].get<long long>(), e[1].get<long long>());
    throw std::invalid_argument("rational JSON: expected int, \"a/b\" or [num, den]");
}

json rational_to_json(const Rational& r) { return json::array({r.num(), r.den()}); }

ultra::Fmat fmat_from_json(const ultra::Field& f, const json& rows) {
    if (!rows.is_array() || rows.empty())
        throw std::invalid_argument("ultra JSON: expected a matrix");
    size_t r = rows.size();
    // rows in JSON, columns internally
    ultra::Fmat m(rows[0].size(), ultra::Fvec(r, f.zero()));
    for (size_t i = 0; i < r; ++i)
        for (size_t k = 0; k < rows[i].size(); ++k)
            m[k][i] = f.from_rational(rational_from_json(rows[i][k]));
    return m;
}

ultra::UltraNorm norm_from_json(const ultra::Field& f, const json& t) {
    std::string kind = t.at("kind").get<std::string>();
    if (kind == "diagonal") {
        ultra::Fmat basis = fmat_from_json(f, t.at("basis"));
        std::vector<Rational> exps;
        for (auto& e : t.at("exponents")) exps.push_back(rational_from_json(e));
        return ultra::UltraNorm::diagonal(f, std::move(basis), std::move(exps));
    }
    if (kind == "scale")
        return ultra::UltraNorm::scale(norm_from_json(f, t.at("child")),
                                       rational_from_json(t.at("a")));
    if (kind == "max")
        return ultra::UltraNorm::max_combine(norm_from_json(f, t.at("left")),
                                             norm_from_json(f, t.at("right")));
    if (kind == "restrict")
        return ultra::UltraNorm::restriction(norm_from_json(f, t.at("child")),
                                             fmat_from_json(f, t.at("subspace")));
    if (kind == "quotient")
        return ultra::UltraNorm::quotient(norm_from_json(f, t.at("child")),
                                          fmat_from_json(f, t.at("subspace")));
    if (kind == "dual") return ultra::UltraNorm::dual(norm_from_json(f, t.at("child")));
    if (kind == "tensor")
        return ultra::UltraNorm::tensor(norm_from_json(f, t.at("left")),
                                        norm_from_json(f, t.at("right")));
    throw std::invalid_argument("ultra JSON: unknown node kind '" + kind + "'");
}

// smallest ramification that realizes every exponent in the tree
long long exponent_denominator_lcm(const json& t) {
    long long l = 1;
    auto fold = [&](const Rational& r) { l = std::lcm(l, r.den()); };
    if (t.contains("exponents"))
        for (auto& e : t.at("exponents")) fold(rational_from_json(e));
    if (t.contains("a")) fold(rational_from_json(t.at("a")));
    for (const char* key : {"child", "left", "right"})
        if (t.contains(key)) l = std::lcm(l, exponent_denominator_lcm(t.at(key)));
    return l;
}

}  // namespace

json ultra_report_from_json(const json& j) {
    const json& fj = j.at("field");
    std::string kind = fj.value("kind", "padic");
    long long ram = fj.value("ram", 0);
    if (ram == 0) {
        ram = std::lcm(exponent_denominator_lcm(j.at("phi")),
                       exponent_denominator_lcm(j.at("psi")));
        if (j.contains("truncations"))
            for (auto& a : j.at("truncations"))
                ram = std::lcm(ram, rational_from_json(a).den());
    }
    ultra::Field field = kind == "padic"
                             ? ultra::Field::padic(fj.at("p").get<long long>(), (int)ram)
                             : ultra::Field::function_field((int)ram);

    ultra::UltraNorm phi = norm_from_json(field, j.at("phi"));
    ultra::UltraNorm psi = norm_from_json(field, j.at("psi"));

    json out;
    out["field"] = field.name();
    auto deg = ultra::degree_ultra(phi, psi);
    out["degree"] = {{"exponent", rational_to_json(deg.exponent)}, {"nats", deg.nats}};

    auto slopes = ultra::slopes_ultra(phi, psi, Rational(1, 2));
    json sj = json::array();
    for (auto& e : slopes.exponents) sj.push_back(rational_to_json(e));
    out["slopes"] = {{"exponents", sj}, {"nats", slopes.nats()},
                     {"error_budget", slopes.error_budget}};

    auto cert_phi = ultra::certified_alpha(phi, slopes.simultaneous_basis);
    auto cert_psi = ultra::certified_alpha(psi, slopes.simultaneous_basis);
    out["simultaneous_basis_alpha"] = {
        {"phi", rational_to_json(cert_phi.alpha_exponent)},
        {"psi", rational_to_json(cert_psi.alpha_exponent)}};

    json truncs = json::array();
    std::vector<Rational> as{Rational(0)};
    if (j.contains("truncations")) {
        as.clear();
        for (auto& a : j.at("truncations")) as.push_back(rational_from_json(a));
    }
    for (const Rational& a : as) {
        auto t = ultra::truncate_ultra(phi, psi, a);
        truncs.push_back({{"a", rational_to_json(a)},
                          {"degree_exponent", rational_to_json(t.degree_exponent)},
                          {"slope_sum", rational_to_json(t.slope_sum)},
                          {"equal", t.equal},
                          {"nats", t.nats}});
    }
    out["truncations"] = truncs;
    return out;
}

TableInput table_from_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("table CSV: empty input");
    int d;
    if (header == "n,a1,value") d = 1;
    else if (header == "n,a1,a2,value") d = 2;
    else if (header == "n,a1,a2,a3,value") d = 3;
    else throw std::invalid_argument("table CSV: header must be n,a1[,a2[,a3]],value");

    struct Row {
        int n;
        Exponent a;
        double v;
    };
    std::vector<Row> rows;
    int n_max = 1;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Row r;
        char comma;
        ls >> r.n;
        r.a.resize((size_t)d);
        for (int i = 0; i < d; ++i) ls >> comma >> r.a[(size_t)i];
        ls >> comma >> r.v;
        if (!ls) throw std::invalid_argument("table CSV: bad line '" + line + "'");
        n_max = std::max(n_max, r.n);
        rows.push_back(std::move(r));
    }
    TableInput t;
    t.d = d;
    t.sample = std::make_shared<SemigroupSample>(d, n_max);
    std::map<int, std::vector<Exponent>> levels;
    for (auto& r : rows) levels[r.n].push_back(r.a);
    for (auto& [n, level] : levels)
        if (n >= 1) t.sample->set_level(n, level);
    t.table = std::make_shared<ValueTable>(*t.sample);
    for (auto& r : rows)
        if (r.n >= 1) t.table->set(r.n, r.a, r.v);
    return t;
}

std::string cdf_csv(const std::vector<std::pair<double, double>>& cdf) {
    std::ostringstream os;
    os << "t,F\n";
    for (auto& [t, f] : cdf) os << format_double(t) << "," << format_double(f) << "\n";
    return os.str();
}

std::vector<LevelLaw> laws_from_spectra_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header != "n,index,value")
        throw std::invalid_argument("spectra CSV: header must be n,index,value");
    std::map<int, std::vector<double>> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int n, idx;
        double v;
        char comma;
        ls >> n >> comma >> idx >> comma >> v;
        if (!ls) throw std::invalid_argument("spectra CSV: bad line '" + line + "'");
        values[n].push_back(v);
    }
    std::vector<LevelLaw> laws;
    for (auto& [n, vs] : values) {
        SlopeProfile s;
        s.slopes = vs;
        std::sort(s.slopes.begin(), s.slopes.end(), std::greater<>());
        laws.push_back({n, (int)vs.size(), SpectralMeasure::from_slopes(s)});
    }
    return laws;
}

}  // namespace okspec
