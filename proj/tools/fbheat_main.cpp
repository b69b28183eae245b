// Command-line front end: every subcommand runs one pipeline and writes one
// CSV or JSON report.  Exit codes: 0 success, 1 usage, 2 precondition
// violation, 3 numerical failure.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "fbheat/report.hpp"
#include "fbheat/verify.hpp"

namespace {

using nlohmann::json;
using namespace fbheat;

struct CommonOpts {
    double epsilon = 0.5;
    int truncation = 64;
    int grid_size = 0; // 0: derive from truncation
    std::string precision = "standard";
    std::string format = "json";
    std::string output = "-";
    std::string config_path;
};

/// Fill option values that were not given on the command line from the JSON
/// config file (flag > config > default).
void apply_config(CLI::App* cmd, const std::string& config_path) {
    if (config_path.empty()) return;
    const json cfg = json::parse(read_text_file(config_path));
    for (CLI::Option* opt : cmd->get_options()) {
        if (opt->count() > 0) continue;
        std::string name = opt->get_single_name();
        if (name.empty()) continue;
        const auto it = cfg.find(name);
        if (it == cfg.end()) continue;
        std::string value;
        if (it->is_string())
            value = it->get<std::string>();
        else
            value = it->dump();
        opt->add_result(value);
        opt->run_callback();
    }
}

Precision parse_precision(const std::string& s) {
    if (s == "standard") return Precision::standard;
    if (s == "extended") return Precision::extended;
    throw DomainError("precision must be 'standard' or 'extended', got '" + s + "'");
}

ReportMeta make_meta(const CommonOpts& c) {
    ReportMeta m;
    m.epsilon = c.epsilon;
    m.truncation = c.truncation;
    m.precision = c.precision;
    return m;
}

template <class Report>
void emit(const CommonOpts& c, const Report& rep) {
    const ReportMeta meta = make_meta(c);
    const std::string text =
        c.format == "csv" ? to_csv(meta, rep) : to_json(meta, rep).dump(2) + "\n";
    write_report_file(c.output, text);
}

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--epsilon", c.epsilon, "parameter in (0,2)")->required();
    cmd->add_option("--truncation", c.truncation, "positive-mode section size");
    cmd->add_option("--grid-size", c.grid_size, "output grid size (>= 4*truncation)");
    const char* env = std::getenv("FBHEAT_PRECISION");
    if (env != nullptr) c.precision = env;
    cmd->add_option("--precision", c.precision, "standard | extended");
    cmd->add_option("--output-format", c.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", c.output, "report path ('-' = stdout)");
    cmd->add_option("--config", c.config_path, "JSON config file; flags override");
}

void validate_common(const CommonOpts& c) {
    EpsilonParam probe(c.epsilon); // throws DomainError when outside (0,2)
    (void)probe;
    if (c.truncation < 1) throw PreconditionError("truncation must be >= 1");
    if (c.grid_size != 0 && c.grid_size < 4 * c.truncation)
        throw PreconditionError("grid size must be at least 4*truncation");
}

PeriodicGridFunction load_function(const std::string& path, int grid_size) {
    PeriodicGridFunction g = function_from_csv(read_text_file(path));
    if (grid_size != 0 && grid_size != g.size()) g = resample(g, grid_size);
    return g;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral toolbox for the periodic indefinite convection-diffusion operator "
                 "eps*(sin(theta) h')' + h'"};
    app.require_subcommand(1);

    CommonOpts copt;

    // spectrum
    auto* cmd_spectrum = app.add_subcommand("spectrum", "stabilized eigenvalues of the section");
    add_common(cmd_spectrum, copt);

    // solve / galerkin
    std::string input_path;
    auto* cmd_solve = app.add_subcommand("solve", "invert on mean-free data (closed form)");
    add_common(cmd_solve, copt);
    cmd_solve->add_option("--input", input_path, "CSV with header theta,re,im")->required();

    auto* cmd_galerkin = app.add_subcommand("galerkin", "invert on mean-free data (Galerkin)");
    add_common(cmd_galerkin, copt);
    cmd_galerkin->add_option("--input", input_path, "CSV with header theta,re,im")->required();

    // riesz
    int count = 25;
    auto* cmd_riesz = app.add_subcommand("riesz", "eigenvector angle/conditioning diagnostics");
    add_common(cmd_riesz, copt);
    cmd_riesz->add_option("--count", count, "number of eigenvectors");

    // schatten
    std::vector<double> p_list{0.7, 1.0, 2.0};
    auto* cmd_schatten = app.add_subcommand("schatten", "singular values and partial p-sums");
    add_common(cmd_schatten, copt);
    cmd_schatten->add_option("--p", p_list, "Schatten exponents");

    // slcheck
    int mesh_size = 2048;
    int k_pairs = 5;
    auto* cmd_slcheck =
        app.add_subcommand("slcheck", "Sturm-Liouville cross-validation of the spectrum");
    add_common(cmd_slcheck, copt);
    cmd_slcheck->add_option("--mesh-size", mesh_size, "finite elements");
    cmd_slcheck->add_option("--k", k_pairs, "eigenvalue pairs to compare");

    // evolve
    double t_final = 1.0;
    std::vector<int> truncations{16, 32, 64, 128};
    auto* cmd_evolve = app.add_subcommand("evolve", "propagator norms across sections");
    add_common(cmd_evolve, copt);
    cmd_evolve->add_option("--t", t_final, "evolution time");
    cmd_evolve->add_option("--truncations", truncations, "increasing section sizes");

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run the module invariant suite");
    add_common(cmd_verify, copt);
    int verify_mesh = 1024;
    cmd_verify->add_option("--mesh-size", verify_mesh, "finite elements for the SL checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e); // prints help/usage; nonzero on bad flags
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        apply_config(active, copt.config_path);
        validate_common(copt);
        const EpsilonParam eps(copt.epsilon);
        const Precision prec = parse_precision(copt.precision);

        if (active == cmd_spectrum) {
            emit(copt, stabilized_spectrum(eps, copt.truncation, prec));
        } else if (active == cmd_solve) {
            const PeriodicGridFunction f = load_function(input_path, copt.grid_size);
            const ExplicitSolveResult r = solve_explicit(f, eps);
            emit(copt, SolveReport{r.h, r.k1.value, r.residual_l2, r.quadrature_error_estimate});
        } else if (active == cmd_galerkin) {
            const int M = copt.grid_size != 0 ? copt.grid_size
                                              : std::max(4 * copt.truncation, 8);
            const PeriodicGridFunction f = load_function(input_path, M);
            const FourierCoeffsFull fc = dft(f);
            const FourierCoeffsFull h = solve_galerkin(fc, eps, copt.truncation);
            const FourierCoeffsFull lh = apply_ell(h, eps);
            double res = 0.0;
            Cplx at0(0.0);
            for (int m = -h.band(); m <= h.band(); ++m) {
                const Cplx fm = std::abs(m) <= fc.band() ? fc.at(m) : Cplx(0.0);
                if (std::abs(m) <= copt.truncation) res += std::norm(lh.at(m) - fm);
                at0 += h.at(m);
            }
            emit(copt, SolveReport{idft(h, M), at0, std::sqrt(res), 0.0});
        } else if (active == cmd_riesz) {
            emit(copt, riesz_diagnostics(eps, count, copt.truncation, prec));
        } else if (active == cmd_schatten) {
            emit(copt, schatten_partial(eps, copt.truncation, p_list));
        } else if (active == cmd_slcheck) {
            emit(copt, cross_check(eps, copt.truncation, k_pairs, mesh_size, prec));
        } else if (active == cmd_evolve) {
            emit(copt, propagator_norm_growth(eps, t_final, truncations));
        } else if (active == cmd_verify) {
            VerifyConfig cfg;
            cfg.epsilon = copt.epsilon;
            cfg.truncation = copt.truncation;
            cfg.mesh_elements = verify_mesh;
            cfg.precision = prec;
            const VerifyReport rep = run_verification(cfg);
            for (const auto& c : rep.checks)
                std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail
                          << "\n";
            emit(copt, rep);
            if (!rep.all_pass()) return 3;
        }
    } catch (const PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return 2;
    } catch (const AccuracyError& e) {
        std::cerr << "accuracy error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
