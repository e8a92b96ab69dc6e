#include "chroma/analytics.hpp"
#include "chroma/errors.hpp"
#include "chroma/harness.hpp"
#include "chroma/io.hpp"
#include "chroma/persistence.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace chroma;

namespace {

struct CommonArgs {
    int n = 500;
    uint64_t seed = 1;
    std::string topology = "square";
    std::string sampler = "uniform";
    std::string lunar_mode = "pruned";
    double color_p = 0.5;
    std::string out = "out";
};

Topology parse_topology(const std::string& s) {
    if (s == "square") return Topology::UnitSquare;
    if (s == "torus") return Topology::Torus;
    throw UsageError("unknown topology: " + s + " (expected square|torus)");
}

Sampler parse_sampler(const std::string& s) {
    if (s == "uniform") return Sampler::Uniform;
    if (s == "poisson") return Sampler::Poisson;
    throw UsageError("unknown sampler: " + s + " (expected uniform|poisson)");
}

LunarMode parse_lunar(const std::string& s) {
    if (s == "exact") return LunarMode::Exact;
    if (s == "pruned") return LunarMode::Pruned;
    throw UsageError("unknown lunar mode: " + s + " (expected exact|pruned)");
}

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--n", a.n, "number of points (or intensity for poisson)");
    cmd->add_option("--seed", a.seed, "root seed");
    cmd->add_option("--topology", a.topology, "square|torus");
    cmd->add_option("--sampler", a.sampler, "uniform|poisson");
    cmd->add_option("--p", a.color_p, "color-0 probability");
    cmd->add_option("--out", a.out, "output directory");
}

std::vector<Point2> make_sample(const CommonArgs& a) {
    return parse_sampler(a.sampler) == Sampler::Uniform
               ? sample_uniform(static_cast<std::size_t>(a.n), a.seed)
               : sample_poisson(static_cast<double>(a.n), a.seed);
}

void emit(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    write_file(path, content);
    std::cout << "wrote " << path << "\n";
}

nlohmann::json record_json(const InstanceRecord& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["topology"] = topology_name(r.topology);
    j["emst_length"] = r.emst_length;
    j["lunar_cost"] = r.lunar_cost;
    const auto names = record_quantity_names();
    for (std::size_t q = 2; q < names.size(); ++q) j["norms"][names[q]] = record_quantity(r, q);
    j["critical_edge_fraction"] = r.crit_edge_fraction;
    j["critical_triangle_fraction"] = r.crit_tri_fraction;
    return j;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw UsageError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig c;
    if (j.contains("sampler")) c.sampler = parse_sampler(j["sampler"]);
    if (j.contains("topology")) {
        const std::string t = j["topology"];
        if (t == "both")
            c.topologies = {Topology::UnitSquare, Topology::Torus};
        else
            c.topologies = {parse_topology(t)};
    }
    if (j.contains("n_values")) c.n_values = j["n_values"].get<std::vector<int>>();
    if (j.contains("trials")) c.trials = j["trials"];
    if (j.contains("color_probability")) c.color_probability = j["color_probability"];
    if (j.contains("seed")) c.seed = j["seed"];
    if (j.contains("lunar_mode")) c.lunar_mode = parse_lunar(j["lunar_mode"]);
    if (j.contains("out_dir")) c.out_dir = j["out_dir"];
    if (j.contains("threads")) c.threads = j["threads"];
    if (j.contains("plots")) c.plots = j["plots"];
    if (j.contains("timing")) c.timing = j["timing"];
    return c;
}

int run(int argc, char** argv) {
    CLI::App app{"chromatic persistence norms, spanning trees and constants"};
    app.require_subcommand(1);

    CommonArgs a;

    auto* sample_cmd = app.add_subcommand("sample", "draw a point sample and write it as CSV");
    add_common(sample_cmd, a);

    auto* persist_cmd =
        app.add_subcommand("persist", "diagrams of the radius filtration of a sample");
    add_common(persist_cmd, a);
    bool dump_cells = false, dump_mosaic = false;
    persist_cmd->add_flag("--dump-cells", dump_cells, "also write per-cell values");
    persist_cmd->add_flag("--dump-mosaic", dump_mosaic, "also write the mosaic");

    auto* lunar_cmd = app.add_subcommand("lunar", "lunar tree of a colored sample");
    add_common(lunar_cmd, a);
    lunar_cmd->add_option("--lunar-mode", a.lunar_mode, "exact|pruned");
    bool audit = false;
    lunar_cmd->add_flag("--audit", audit, "verify merge minimality across cuts");

    auto* sixpack_cmd = app.add_subcommand("sixpack", "all eleven 1-norms of one instance");
    add_common(sixpack_cmd, a);
    sixpack_cmd->add_option("--lunar-mode", a.lunar_mode, "exact|pruned");

    auto* estimate_cmd = app.add_subcommand("estimate", "Monte Carlo sweep and sqrt(n) fits");
    std::vector<int> ns;
    int trials = 0;
    uint64_t est_seed = 1;
    std::string est_topology = "both", est_sampler = "uniform", est_lunar = "pruned";
    std::string est_out = "out", config_path;
    int threads = 0;
    bool fast = false, plots = false, timing = false;
    estimate_cmd->add_option("--n", ns, "n values (repeatable)");
    estimate_cmd->add_option("--trials", trials, "trials per n");
    estimate_cmd->add_option("--seed", est_seed, "root seed");
    estimate_cmd->add_option("--topology", est_topology, "square|torus|both");
    estimate_cmd->add_option("--sampler", est_sampler, "uniform|poisson");
    estimate_cmd->add_option("--lunar-mode", est_lunar, "exact|pruned");
    estimate_cmd->add_option("--out", est_out, "output directory");
    estimate_cmd->add_option("--config", config_path, "JSON config file");
    estimate_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    estimate_cmd->add_flag("--fast", fast, "CI preset: n in {200,500,1000}, 20 trials");
    estimate_cmd->add_flag("--plots", plots, "write SVG plots");
    estimate_cmd->add_flag("--timing", timing, "record wall-clock times in the CSV");

    auto* analytic_cmd = app.add_subcommand("analytic", "closed-form constants and bounds");
    double an_c = 0.647, an_cl = 0.351, an_n = 1.0;
    analytic_cmd->add_option("--c", an_c, "spanning tree constant for the table");
    analytic_cmd->add_option("--cl", an_cl, "lunar constant for the table");
    analytic_cmd->add_option("--n", an_n, "intensity for the moment table");

    app.parse(argc, argv);

    if (sample_cmd->parsed()) {
        emit(a.out, "points.csv", points_csv(make_sample(a)));
        return 0;
    }

    if (persist_cmd->parsed()) {
        const auto pts = make_sample(a);
        const FilteredMosaic fm = radius_values(triangulate(pts, parse_topology(a.topology)));
        const AlphaPersistence ap = alpha_persistence(fm);
        const Diagram ds[2] = {ap.h0, ap.h1};
        emit(a.out, "diagrams.csv", diagrams_csv(ds));
        if (dump_cells) emit(a.out, "cells.csv", cells_csv(fm));
        if (dump_mosaic) emit(a.out, "mosaic.txt", mosaic_dump(fm.mosaic));
        std::cout << "emst_length " << format_double(ap.tree.total_length) << "\n";
        return 0;
    }

    if (lunar_cmd->parsed()) {
        const auto pts = make_sample(a);
        const Coloring col = random_coloring(pts, a.color_p, derive_seed(a.seed, 0x10c0u));
        const Topology topo = parse_topology(a.topology);
        const LunarTree t =
            lunar_emst(col.points0, col.points1, topo, parse_lunar(a.lunar_mode), audit);
        emit(a.out, "lunar_events.csv", lunar_events_csv(t));
        nlohmann::json j;
        j["cost"] = t.cost;
        j["relative1_norm"] = relative1_norm(t);
        j["births"] = t.births.size();
        j["merges"] = t.merges.size();
        j["essential_birth"] = t.essential_birth;
        emit(a.out, "lunar.json", j.dump(2) + "\n");
        return 0;
    }

    if (sixpack_cmd->parsed()) {
        const auto pts = make_sample(a);
        const Coloring col = random_coloring(pts, a.color_p, derive_seed(a.seed, 0x10c0u));
        InstanceRecord rec = analyze_instance(pts, col, parse_topology(a.topology),
                                              parse_lunar(a.lunar_mode));
        rec.seed = a.seed;
        const nlohmann::json j = record_json(rec);
        emit(a.out, "instance.json", j.dump(2) + "\n");
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    if (estimate_cmd->parsed()) {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = load_config_file(config_path);
        if (fast) cfg = ExperimentConfig::fast_preset(est_seed);
        if (!ns.empty()) cfg.n_values = ns;
        if (trials > 0) cfg.trials = trials;
        if (estimate_cmd->count("--seed")) cfg.seed = est_seed;
        if (estimate_cmd->count("--topology")) {
            if (est_topology == "both")
                cfg.topologies = {Topology::UnitSquare, Topology::Torus};
            else
                cfg.topologies = {parse_topology(est_topology)};
        }
        if (estimate_cmd->count("--sampler")) cfg.sampler = parse_sampler(est_sampler);
        if (estimate_cmd->count("--lunar-mode")) cfg.lunar_mode = parse_lunar(est_lunar);
        if (estimate_cmd->count("--out")) cfg.out_dir = est_out;
        if (estimate_cmd->count("--threads")) cfg.threads = threads;
        if (plots) cfg.plots = true;
        if (timing) cfg.timing = true;

        const SweepResult sweep = run_sweep(cfg);
        for (const auto& [topo, fits] : sweep.fits) {
            std::cout << topo << ": c_estimate (emst a1) = "
                      << format_double(fits.at("emst_length").a1)
                      << ", cl_estimate (2 * rel1 a1) = "
                      << format_double(2.0 * fits.at("rel1").a1) << "\n";
        }
        std::cout << "wrote " << cfg.out_dir << "/results.csv and summary.json\n";
        return 0;
    }

    // analytic
    nlohmann::json j;
    const LowerBoundPipeline p = theorem31_pipeline();
    j["lower_bound_pipeline"] = {{"x_envelope", p.x_envelope},
                                 {"envelope_count_coeff", p.envelope_count_coeff},
                                 {"envelope_length_coeff", p.envelope_length_coeff},
                                 {"x", p.x},
                                 {"surplus_count_coeff", p.surplus_count_coeff},
                                 {"surplus_length_coeff", p.surplus_length_coeff},
                                 {"lower_bound", p.lower_bound}};
    const ClBounds cb = cl_bounds(p.lower_bound, std::sqrt(2.0) / 2.0);
    j["lunar_constant_bounds"] = {{"lower", cb.lower}, {"upper", cb.upper}};
    const double inf = std::numeric_limits<double>::infinity();
    for (int lk = 1; lk <= 2; ++lk) {
        const std::string key = lk == 1 ? "critical_edges" : "critical_triangles";
        j["moments_at_infinity"][key] = {
            {"count", expected_moment(MomentFormula{lk, lk, 0, an_n}, inf)},
            {"radius_sum", expected_moment(MomentFormula{lk, lk, 1, an_n}, inf)},
            {"square_sum", expected_moment(MomentFormula{lk, lk, 2, an_n}, inf)}};
        j["moments_at_infinity_eta_half"][key] = {
            {"count", eta_moment(MomentFormula{lk, lk, 0, an_n}, 0.5, inf)},
            {"radius_sum", eta_moment(MomentFormula{lk, lk, 1, an_n}, 0.5, inf)},
            {"square_sum", eta_moment(MomentFormula{lk, lk, 2, an_n}, 0.5, inf)}};
    }
    const BoundaryBounds bb = boundary_bounds(an_n);
    j["boundary_bounds"] = {{"n1", bb.n1},           {"f1", bb.f1},
                            {"n2", bb.n2},           {"f2", bb.f2},
                            {"n1_half", bb.n1_half}, {"f1_half", bb.f1_half},
                            {"n2_half", bb.n2_half}, {"f2_half", bb.f2_half}};
    const ConstantTable t = table1_constants(an_c, an_cl);
    j["norm_constants"] = {{"c", an_c},       {"cl", an_cl},   {"ker0", t.ker0},
                           {"rel1", t.rel1},  {"cok1", t.cok1}, {"ker1", t.ker1},
                           {"rel2", t.rel2},  {"dom0", t.dom0}, {"im0", t.im0},
                           {"cod0", t.cod0},  {"dom1", t.dom1}, {"im1", t.im1},
                           {"cod1", t.cod1}};
    j["ordering_holds"] = ordering_check(std::clamp(an_c, 0.6289, 0.7072));
    std::cout << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0; // --help
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
