// Command-line front end: simulate / estimate / cv / ingest.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "wcca/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string join_command(int argc, char** argv) {
    std::ostringstream out;
    for (int i = 0; i < argc; ++i) {
        if (i) out << ' ';
        out << argv[i];
    }
    return out.str();
}

struct CommonFit {
    std::string method = "fpca";
    bool use_cv = false;
    int k = 2;
    double eps = 1e-6;
    int folds = 5;
    int top_r = 5;
    std::uint64_t seed = 0;

    wcca::CcaMethod cca_method() const {
        return method == "fpca" ? wcca::CcaMethod::Fpca : wcca::CcaMethod::Tikhonov;
    }
    wcca::CcaTuning tuning() const {
        return cca_method() == wcca::CcaMethod::Fpca ? wcca::CcaTuning::truncation(k)
                                                     : wcca::CcaTuning::ridge(eps);
    }
};

void add_fit_options(CLI::App* cmd, CommonFit& fit) {
    cmd->add_option("--method", fit.method, "Estimator")
        ->check(CLI::IsMember({"fpca", "tikhonov"}))
        ->capture_default_str();
    cmd->add_flag("--cv", fit.use_cv, "Select tuning by k-fold cross-validation");
    cmd->add_option("--k", fit.k, "Truncation level (fpca)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--eps", fit.eps, "Ridge parameter (tikhonov)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--folds", fit.folds, "Cross-validation folds")
        ->check(CLI::Range(2, 1000))
        ->capture_default_str();
    cmd->add_option("--seed", fit.seed, "Master seed")->capture_default_str();
}

struct FitOutput {
    wcca::CcaEstimate est;
    wcca::CcaTuning tuning;
    wcca::EigenSystem eig_x, eig_y;  // leading spectrum, for inspection output
};

FitOutput fit_datasets(const wcca::Dataset& dx, const wcca::Dataset& dy, const CommonFit& fit) {
    if (dx.subject_ids != dy.subject_ids)
        throw wcca::SampleMismatch("estimate: X and Y files carry different subjects");
    const wcca::Sample sx = dx.to_sample();
    const wcca::Sample sy = dy.to_sample();

    wcca::CcaTuning tuning = fit.tuning();
    if (fit.use_cv) {
        const auto grid = fit.cca_method() == wcca::CcaMethod::Fpca
                              ? wcca::default_fpca_grid()
                              : wcca::default_tikhonov_grid();
        tuning = wcca::cv_select(sx, sy, fit.cca_method(), grid, fit.folds, fit.seed).chosen;
    }

    const auto mean_x =
        std::make_shared<const wcca::DistributionCurve>(wcca::frechet_mean_curve(sx));
    const auto mean_y =
        std::make_shared<const wcca::DistributionCurve>(wcca::frechet_mean_curve(sy));
    const wcca::LogFieldMatrix logs_x = wcca::log_fields(sx, mean_x);
    const wcca::LogFieldMatrix logs_y = wcca::log_fields(sy, mean_y);
    const int keep = std::min(sx.size(), std::max(20, std::max(tuning.k_x, tuning.k_y)));
    auto [ex, scx] = wcca::covariance_eigen(logs_x, keep);
    auto [ey, scy] = wcca::covariance_eigen(logs_y, keep);

    wcca::CcaEstimate est =
        fit.cca_method() == wcca::CcaMethod::Fpca
            ? wcca::fpca_cca(ex, scx, ey, scy, tuning.k_x, tuning.k_y, fit.top_r)
            : wcca::tikhonov_cca(logs_x, logs_y, tuning.eps_x, tuning.eps_y, fit.top_r);
    return FitOutput{std::move(est), tuning, std::move(ex), std::move(ey)};
}

json fit_config_json(const CommonFit& fit, const wcca::CcaTuning& tuning) {
    json cfg;
    cfg["method"] = fit.method;
    cfg["cv"] = fit.use_cv;
    cfg["folds"] = fit.folds;
    cfg["top_r"] = fit.top_r;
    if (fit.cca_method() == wcca::CcaMethod::Fpca) {
        cfg["k_x"] = tuning.k_x;
        cfg["k_y"] = tuning.k_y;
    } else {
        cfg["eps_x"] = tuning.eps_x;
        cfg["eps_y"] = tuning.eps_y;
    }
    return cfg;
}

int run_simulate(const std::string& command, const wcca::SimConfig& config,
                 const CommonFit& fit, const std::string& out_dir) {
    wcca::MethodSpec spec;
    spec.method = fit.cca_method();
    spec.cross_validate = fit.use_cv;
    spec.tuning = fit.tuning();
    spec.cv_folds = fit.folds;
    const wcca::ReplicateReport report = wcca::run_replicates(config, spec);

    fs::create_directories(out_dir);
    wcca::write_report_csv((fs::path(out_dir) / "report.csv").string(), report);
    wcca::write_text_file((fs::path(out_dir) / "summary.json").string(),
                          wcca::report_summary_json(report));

    json cfg;
    cfg["simulate"] = json::parse(wcca::report_summary_json(report))["config"];
    cfg["fit"] = fit_config_json(fit, spec.tuning);
    wcca::write_text_file((fs::path(out_dir) / "manifest.json").string(),
                          wcca::manifest_json(command, cfg.dump(), config.seed, {}));
    std::cout << "mean |rho_err| = " << wcca::format_double(report.mean_abs_rho_err)
              << "  imse_u = " << wcca::format_double(report.imse_u)
              << "  imse_v = " << wcca::format_double(report.imse_v) << "\n";
    return 0;
}

int run_estimate(const std::string& command, const std::string& x_path,
                 const std::string& y_path, const CommonFit& fit, const std::string& out_dir) {
    const wcca::Dataset dx = wcca::read_quantile_table(x_path);
    const wcca::Dataset dy = wcca::read_quantile_table(y_path);
    const FitOutput out = fit_datasets(dx, dy, fit);
    const wcca::CcaEstimate& est = out.est;

    fs::create_directories(out_dir);
    wcca::write_field_csv((fs::path(out_dir) / "u_field.csv").string(), est.u_field);
    wcca::write_field_csv((fs::path(out_dir) / "v_field.csv").string(), est.v_field);
    wcca::write_eigenvalues_csv((fs::path(out_dir) / "eigenvalues_x.csv").string(), out.eig_x);
    wcca::write_eigenvalues_csv((fs::path(out_dir) / "eigenvalues_y.csv").string(), out.eig_y);

    std::ostringstream top;
    top << "rank,rho\n" << 1 << ',' << wcca::format_double(est.rho) << "\n";
    for (std::size_t i = 0; i < est.higher.size(); ++i)
        top << (i + 2) << ',' << wcca::format_double(est.higher[i].rho) << "\n";
    wcca::write_text_file((fs::path(out_dir) / "top_correlations.csv").string(), top.str());

    wcca::write_text_file((fs::path(out_dir) / "estimate.json").string(),
                          wcca::estimate_to_json(est, "u_field.csv", "v_field.csv"));
    wcca::write_text_file(
        (fs::path(out_dir) / "manifest.json").string(),
        wcca::manifest_json(command, fit_config_json(fit, out.tuning).dump(), fit.seed,
                            {{"x", x_path}, {"y", y_path}}));
    std::cout << "rho = " << wcca::format_double(est.rho) << "\n";
    return 0;
}

int run_cv(const std::string& command, const std::string& x_path, const std::string& y_path,
           const CommonFit& fit, const std::string& out_dir) {
    const wcca::Dataset dx = wcca::read_quantile_table(x_path);
    const wcca::Dataset dy = wcca::read_quantile_table(y_path);
    if (dx.subject_ids != dy.subject_ids)
        throw wcca::SampleMismatch("cv: X and Y files carry different subjects");
    const auto grid = fit.cca_method() == wcca::CcaMethod::Fpca ? wcca::default_fpca_grid()
                                                                : wcca::default_tikhonov_grid();
    const wcca::CvResult result = wcca::cv_select(dx.to_sample(), dy.to_sample(),
                                                  fit.cca_method(), grid, fit.folds, fit.seed);

    json obj;
    obj["method"] = fit.method;
    obj["chosen"] = wcca::tuning_label(result.chosen, fit.cca_method());
    if (fit.cca_method() == wcca::CcaMethod::Fpca)
        obj["chosen_k"] = result.chosen.k_x;
    else
        obj["chosen_eps"] = result.chosen.eps_x;
    json scores = json::array();
    for (std::size_t c = 0; c < grid.size(); ++c) {
        json rec;
        rec["candidate"] = wcca::tuning_label(grid[c], fit.cca_method());
        rec["cv_score"] = result.scores[c];
        scores.push_back(std::move(rec));
    }
    obj["scores"] = std::move(scores);

    fs::create_directories(out_dir);
    wcca::write_text_file((fs::path(out_dir) / "cv.json").string(), obj.dump(2) + "\n");
    wcca::write_text_file(
        (fs::path(out_dir) / "manifest.json").string(),
        wcca::manifest_json(command, fit_config_json(fit, result.chosen).dump(), fit.seed,
                            {{"x", x_path}, {"y", y_path}}));
    std::cout << "chosen: " << wcca::tuning_label(result.chosen, fit.cca_method()) << "\n";
    return 0;
}

int run_ingest(const std::string& command, const std::string& input, const std::string& output,
               int grid_m, bool support_given, double lo, double hi) {
    const auto entries = wcca::read_sample_lists(input);
    auto [dataset, report] = wcca::ingest_sample_lists(entries, grid_m, support_given, lo, hi);
    wcca::write_quantile_table(output, dataset);

    json cfg;
    cfg["grid_m"] = grid_m;
    cfg["support"] = {dataset.grid.support_lo, dataset.grid.support_hi};
    wcca::write_text_file(output + ".manifest.json",
                          wcca::manifest_json(command, cfg.dump(), 0, {{"input", input}}));
    std::cout << "subjects: " << dataset.subject_ids.size() << "  frames: " << report.frames
              << "  samples/frame: [" << report.min_samples << ", " << report.max_samples
              << "]  clipped: " << report.clipped_values << "  support: ["
              << wcca::format_double(dataset.grid.support_lo) << ", "
              << wcca::format_double(dataset.grid.support_hi) << "]\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intrinsic correlation analysis for distribution-valued functional data"};
    app.require_subcommand(1);
    app.set_config("--config");

    const std::string command = join_command(argc, argv);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run seeded replicates of the data generator");
    wcca::SimConfig config;
    CommonFit sim_fit;
    std::string sim_out = "out";
    int grid_m = 64, grid_t = 50;
    sim->add_option("--case", config.score_case, "Score distribution (1 or 2)")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    sim->add_option("--sigma", config.sigma, "Coupling noise level")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sim->add_option("--n", config.n, "Subjects per replicate")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    sim->add_option("--replicates", config.replicates, "Replicate count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--basis-size", config.basis_size, "Number of basis fields")
        ->check(CLI::Range(2, 10000))
        ->capture_default_str();
    sim->add_option("--grid-m", grid_m, "Quantile levels")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    sim->add_option("--grid-t", grid_t, "Time points")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    sim->add_option("--out-dir", sim_out, "Output directory")->capture_default_str();
    add_fit_options(sim, sim_fit);

    // estimate
    auto* est = app.add_subcommand("estimate", "Fit the correlation on two quantile tables");
    std::string x_path, y_path, est_out = "out";
    CommonFit est_fit;
    est->add_option("--x", x_path, "X dataset (quantile-table CSV)")->required();
    est->add_option("--y", y_path, "Y dataset (quantile-table CSV)")->required();
    est->add_option("--out-dir", est_out, "Output directory")->capture_default_str();
    est->add_option("--top-r", est_fit.top_r, "Number of correlations to report")
        ->check(CLI::Range(1, 1000))
        ->capture_default_str();
    add_fit_options(est, est_fit);

    // cv
    auto* cv = app.add_subcommand("cv", "Cross-validated tuning selection only");
    std::string cv_x, cv_y, cv_out = "out";
    CommonFit cv_fit;
    cv->add_option("--x", cv_x, "X dataset (quantile-table CSV)")->required();
    cv->add_option("--y", cv_y, "Y dataset (quantile-table CSV)")->required();
    cv->add_option("--out-dir", cv_out, "Output directory")->capture_default_str();
    add_fit_options(cv, cv_fit);

    // ingest
    auto* ing = app.add_subcommand("ingest", "Convert raw sample lists to a quantile table");
    std::string in_path, out_path;
    int ing_m = 64;
    double sup_lo = 0.0, sup_hi = 1.0;
    ing->add_option("--input", in_path, "Sample-lists file (JSON lines)")->required();
    ing->add_option("--output", out_path, "Quantile-table CSV to write")->required();
    ing->add_option("--grid-m", ing_m, "Quantile levels")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    auto* lo_opt = ing->add_option("--support-lo", sup_lo, "Support lower end");
    auto* hi_opt = ing->add_option("--support-hi", sup_hi, "Support upper end");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) {
            config.grid = wcca::GridConfig(grid_m, grid_t, 0.0, 1.0);
            config.seed = sim_fit.seed;
            return run_simulate(command, config, sim_fit, sim_out);
        }
        if (est->parsed()) return run_estimate(command, x_path, y_path, est_fit, est_out);
        if (cv->parsed()) return run_cv(command, cv_x, cv_y, cv_fit, cv_out);
        if (ing->parsed()) {
            const bool given = lo_opt->count() > 0 || hi_opt->count() > 0;
            return run_ingest(command, in_path, out_path, ing_m, given, sup_lo, sup_hi);
        }
    } catch (const wcca::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
