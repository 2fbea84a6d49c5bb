// Command-line laboratory driver: identity checks, decay sweeps, solves,
// Gromov-Hausdorff experiments, report generation, and the nodal bound.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "keglue/config.hpp"
#include "keglue/experiments.hpp"

using namespace keglue;

namespace {

std::string output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("KEGLUE_OUTPUT_DIR")) return env;
    return "out";
}

std::vector<double> sweep_from_config(const Config& cfg) {
    const std::string raw = cfg.get("sweep.deltas", "");
    if (raw.empty()) return default_sweep();
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = Config::trim(tok);
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw ConfigParseError("sweep.deltas: no values");
    for (double d : out)
        if (d <= 0.0 || d > kDeltaMax)
            throw ConfigParseError("sweep.deltas: value out of range");
    return out;
}

int cmd_verify(const Config& cfg, const std::string& out_dir) {
    GluingParams gp = cfg.gluing();
    const int n = cfg.get_int("identities.points", 200);
    const unsigned seed = unsigned(cfg.get_int("seed", 7));
    auto checks = verify_identities(gp, n, seed);
    CsvWriter csv({"check_index", "value", "tolerance", "pass"});
    bool all = true;
    for (size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  value=" << c.value
                  << " tol=" << c.tol << '\n';
        csv.add_row({double(i), c.value, c.tol, c.pass ? 1.0 : 0.0});
        all = all && c.pass;
    }
    csv.write(out_dir + "/identities.csv");
    return all ? 0 : 1;
}

int cmd_sweep(const Config& cfg, const std::string& out_dir, const std::string& region,
              int k) {
    const auto deltas = sweep_from_config(cfg);
    const double c2 = cfg.get_double("gluing.c2", 0.05);
    const int n_samples = cfg.get_int("sweep.samples", 80);
    SweepResult r = sweep_decay(region, k, deltas, c2, n_samples);
    CsvWriter csv({"delta", "value"});
    std::vector<double> xs, ys;
    for (const auto& row : r.rows) {
        csv.add_row({row.delta, row.value});
        xs.push_back(row.delta);
        ys.push_back(row.value);
    }
    const std::string stem = "decay_" + region + "_k" + std::to_string(k);
    csv.write(out_dir + "/" + stem + ".csv");
    SvgPlot plot;
    plot.title = "sup norm vs delta: " + region + ", k=" + std::to_string(k);
    plot.xlabel = "delta";
    plot.ylabel = "sup norm";
    plot.add_series("measured", "#1f77b4", xs, ys);
    {   // fitted-slope guide line through the last point
        std::vector<double> gx = {xs.front(), xs.back()};
        std::vector<double> gy;
        for (double x : gx)
            gy.push_back(std::exp(r.fit.intercept + r.fit.slope * std::log(x)));
        plot.add_series("fit slope " + CsvWriter::format(r.fit.slope), "#d62728", gx, gy);
    }
    plot.write(out_dir + "/" + stem + ".svg");
    std::cout << "region=" << region << " k=" << k << " slope=" << r.fit.slope
              << " r2=" << r.fit.r2 << '\n';
    return 0;
}

int cmd_solve(const Config& cfg, const std::string& out_dir, double delta, double beta) {
    GluingParams gp = cfg.gluing();
    if (delta > 0.0) gp.delta = delta;
    if (beta != 0.0) gp.beta = beta;
    gp.validate();
    GluedModel M(gp);
    const int nodes = cfg.get_int("solver.grid_nodes", 256);
    SolveReport rep = newton_solve(M, gp.beta, nodes);
    write_text_atomic(out_dir + "/solve_delta" + CsvWriter::format(gp.delta) + ".json",
                      rep.to_json().dump(2) + "\n");
    std::cout << "delta=" << gp.delta << " beta=" << gp.beta
              << " converged=" << (rep.converged ? "yes" : "no")
              << " iterations=" << rep.iterations
              << " residual=" << rep.final_residual
              << " ift_accepted=" << (rep.gate.accepted ? "yes" : "no") << '\n';
    return rep.converged ? 0 : 1;
}

int cmd_gh(const Config& cfg, const std::string& out_dir) {
    const auto deltas = sweep_from_config(cfg);
    const double c2 = cfg.get_double("gluing.c2", 0.05);
    GhOptions opt;
    opt.n_shells = cfg.get_int("gh.shells", opt.n_shells);
    opt.n_dirs = cfg.get_int("gh.dirs", opt.n_dirs);
    opt.knn = cfg.get_int("gh.knn", opt.knn);
    auto rows = gh_sweep(deltas, c2, opt);
    CsvWriter csv(
        {"delta", "gh_bound", "cycle_diameter", "distortion", "collapse_defect", "mesh"});
    std::vector<double> xs, ys, cyc;
    for (const auto& r : rows) {
        csv.add_row({r.delta, r.gh_bound, r.cycle_diameter, r.distortion, r.collapse_defect,
                     r.mesh});
        xs.push_back(r.delta);
        ys.push_back(r.gh_bound);
        cyc.push_back(r.cycle_diameter);
        std::cout << "delta=" << r.delta << " gh_bound=" << r.gh_bound
                  << " cycle_diameter=" << r.cycle_diameter << '\n';
    }
    csv.write(out_dir + "/gh.csv");
    SvgPlot plot;
    plot.title = "Gromov-Hausdorff bound and cycle diameter";
    plot.xlabel = "delta";
    plot.ylabel = "length";
    plot.add_series("gh bound", "#1f77b4", xs, ys);
    plot.add_series("cycle diameter", "#2ca02c", xs, cyc);
    plot.write(out_dir + "/gh.svg");
    return 0;
}

int cmd_report(const Config& cfg, const std::string& out_dir) {
    bool all = true;
    all = (cmd_verify(cfg, out_dir) == 0) && all;
    for (const auto& [region, k] : std::vector<std::pair<std::string, int>>{
             {"model-mismatch", 0}, {"model-mismatch", 2}, {"core53", 0}, {"core2", 0},
             {"glue", 0}, {"neck12", 0}, {"neck1", 0}, {"outer", 0}})
        cmd_sweep(cfg, out_dir, region, k);

    const auto deltas = sweep_from_config(cfg);
    const double beta = cfg.get_double("gluing.beta", -1.0);
    const double c2 = cfg.get_double("gluing.c2", 0.05);
    const int nodes = cfg.get_int("solver.grid_nodes", 256);
    auto srows = solve_sweep(deltas, beta, nodes, c2);
    CsvWriter scsv({"delta", "initial_error_norm", "solution_norm", "hess_bound",
                    "hess_sup_measured", "inverse_norm", "ift_accepted", "converged",
                    "final_residual"});
    nlohmann::json sj = nlohmann::json::array();
    for (const auto& row : srows) {
        const auto& r = row.rep;
        scsv.add_row({row.delta, r.initial_error_norm, r.solution_norm, r.hess_bound,
                      r.hess_sup_measured, r.inverse_norm, r.gate.accepted ? 1.0 : 0.0,
                      r.converged ? 1.0 : 0.0, r.final_residual});
        sj.push_back(r.to_json());
        all = all && r.converged && r.gate.accepted;
    }
    scsv.write(out_dir + "/solve_sweep.csv");
    write_text_atomic(out_dir + "/solve_sweep.json", sj.dump(2) + "\n");

    cmd_gh(cfg, out_dir);

    // combined convergence table: delta, preglued error, solved displacement,
    // gh bound
    {
        GhOptions opt;
        opt.n_shells = cfg.get_int("gh.shells", opt.n_shells);
        opt.n_dirs = cfg.get_int("gh.dirs", opt.n_dirs);
        opt.knn = cfg.get_int("gh.knn", opt.knn);
        auto grows = gh_sweep(deltas, c2, opt);
        CsvWriter ccsv({"delta", "eps_preglued", "eps_solved", "gh_bound"});
        std::vector<double> xs, e1, e2, e3;
        const double ref_diam = 4.0;  // outer radius 2 ball, diameter budget
        for (size_t i = 0; i < deltas.size(); ++i) {
            const double ep = srows[i].rep.initial_error_norm;
            const double es = solved_displacement_bound(ref_diam, srows[i].rep.hess_bound);
            ccsv.add_row({deltas[i], ep, es, grows[i].gh_bound});
            xs.push_back(deltas[i]);
            e1.push_back(ep);
            e2.push_back(es);
            e3.push_back(grows[i].gh_bound);
        }
        ccsv.write(out_dir + "/convergence.csv");
        SvgPlot plot;
        plot.title = "convergence of the glued family";
        plot.xlabel = "delta";
        plot.ylabel = "error";
        plot.add_series("preglued error", "#1f77b4", xs, e1);
        plot.add_series("solved displacement", "#d62728", xs, e2);
        plot.add_series("gh bound", "#2ca02c", xs, e3);
        plot.write(out_dir + "/convergence.svg");
    }
    std::cout << (all ? "REPORT PASS" : "REPORT FAIL") << '\n';
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical gluing laboratory for nodal surface smoothings"};
    app.require_subcommand(1);
    app.fallthrough();  // accept --config/--out after the subcommand too

    std::string config_path, out_flag;
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--out", out_flag, "output directory (or KEGLUE_OUTPUT_DIR)");

    auto* sc_verify = app.add_subcommand("verify-identities", "run structural identity checks");
    std::string region = "glue";
    int k = 0;
    auto* sc_sweep = app.add_subcommand("sweep-decay", "delta-sweep of a region sup norm");
    sc_sweep->add_option("--region", region,
                         "one of: model-mismatch, core53, core2, glue, neck12, neck1, outer")
        ->required();
    sc_sweep->add_option("--k", k, "derivative order (0, 1 or 2)");
    double delta = 0.0, beta = 0.0;
    auto* sc_solve = app.add_subcommand("solve", "Newton solve at one delta");
    sc_solve->add_option("--delta", delta, "gluing parameter");
    sc_solve->add_option("--beta", beta, "weight exponent in (-2, 0)");
    auto* sc_gh = app.add_subcommand("gh", "Gromov-Hausdorff comparison sweep");
    auto* sc_report = app.add_subcommand("report", "full default experiment suite");
    int degree = 3;
    auto* sc_node = app.add_subcommand("node-bound", "max node count for a given degree");
    sc_node->add_option("--degree", degree, "anticanonical degree, 1..9")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        Config cfg = config_path.empty() ? Config{} : Config::parse_file(config_path);
        const std::string out_dir = output_dir(out_flag);
        if (sc_verify->parsed()) return cmd_verify(cfg, out_dir);
        if (sc_sweep->parsed()) return cmd_sweep(cfg, out_dir, region, k);
        if (sc_solve->parsed()) return cmd_solve(cfg, out_dir, delta, beta);
        if (sc_gh->parsed()) return cmd_gh(cfg, out_dir);
        if (sc_report->parsed()) return cmd_report(cfg, out_dir);
        if (sc_node->parsed()) {
            std::cout << node_bound(degree) << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
