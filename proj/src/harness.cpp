#include "chroma/harness.hpp"
#include "chroma/errors.hpp"
#include "chroma/io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

namespace chroma {

uint64_t derive_seed(uint64_t root, uint64_t stream) {
    Rng r(root ^ (stream * 0xD1342543DE82EF95ull + 0x63652362B9176285ull));
    r.next();
    return r.next();
}

std::vector<Point2> sample_uniform(std::size_t n, uint64_t seed) {
    Rng rng(seed);
    std::vector<Point2> pts(n);
    for (Point2& p : pts) {
        p.x = rng.uniform01();
        p.y = rng.uniform01();
    }
    return pts;
}

std::vector<Point2> sample_poisson(double intensity, uint64_t seed) {
    if (!(intensity > 0.0)) throw UsageError("sample_poisson: intensity must be positive");
    Rng rng(seed);
    // Count via the waiting-times representation, in log space.
    std::size_t count = 0;
    double acc = 0.0;
    for (;;) {
        acc += -std::log1p(-rng.uniform01());
        if (acc > intensity) break;
        ++count;
    }
    std::vector<Point2> pts(count);
    for (Point2& p : pts) {
        p.x = rng.uniform01();
        p.y = rng.uniform01();
    }
    return pts;
}

Coloring random_coloring(std::span<const Point2> points, double p, uint64_t seed) {
    if (!(p > 0.0 && p < 1.0)) throw UsageError("random_coloring: p must lie strictly in (0,1)");
    Rng rng(seed);
    Coloring c;
    c.labels.reserve(points.size());
    for (const Point2& pt : points) {
        const int label = rng.uniform01() < p ? 0 : 1;
        c.labels.push_back(label);
        (label == 0 ? c.points0 : c.points1).push_back(pt);
    }
    return c;
}

PointSummary analyze_points(std::span<const Point2> points, Topology topology) {
    PointSummary s;
    if (points.empty()) throw UsageError("analyze_points: empty point set");
    if (points.size() == 1) return s;
    if (points.size() == 2) {
        const double d = (topology == Topology::Torus) ? torus_dist(points[0], points[1])
                                                       : dist(points[0], points[1]);
        s.h0_norm = d / 2.0;
        s.emst_length = d;
        return s;
    }
    const FilteredMosaic fm = radius_values(triangulate(points, topology));
    const AlphaPersistence ap = alpha_persistence(fm);
    s.h0_norm = one_norm(ap.h0);
    s.h1_norm = one_norm(ap.h1);
    s.emst_length = ap.tree.total_length;
    return s;
}

InstanceRecord analyze_instance(std::span<const Point2> points, const Coloring& coloring,
                                Topology topology, LunarMode mode) {
    if (coloring.points0.empty() || coloring.points1.empty())
        throw UsageError("analyze_instance: a color class is empty");

    InstanceRecord rec;
    rec.n = static_cast<int>(points.size());
    rec.topology = topology;

    const FilteredMosaic fm = radius_values(triangulate(points, topology));
    const AlphaPersistence ap = alpha_persistence(fm);
    rec.emst_length = ap.tree.total_length;

    const PointSummary s0 = analyze_points(coloring.points0, topology);
    const PointSummary s1 = analyze_points(coloring.points1, topology);

    const LunarTree lt = lunar_emst(coloring.points0, coloring.points1, topology, mode);
    rec.lunar_cost = lt.cost;

    NormInputs in;
    in.dom0 = s0.h0_norm + s1.h0_norm;
    in.dom1 = s0.h1_norm + s1.h1_norm;
    in.cod0 = one_norm(ap.h0);
    in.cod1 = one_norm(ap.h1);
    in.rel1 = relative1_norm(lt);
    rec.norms = derive_norms(in);

    rec.counters =
        moment_counters(fm, std::numeric_limits<double>::infinity(), Box::unit_square());
    double crit_e = 0, crit_t = 0;
    for (const char c : fm.edge_critical) crit_e += c;
    for (const char c : fm.tri_critical) crit_t += c;
    rec.crit_edge_fraction = fm.mosaic.edges.empty() ? 0.0 : crit_e / fm.mosaic.edges.size();
    rec.crit_tri_fraction = fm.mosaic.triangles.empty() ? 0.0 : crit_t / fm.mosaic.triangles.size();
    return rec;
}

ExperimentConfig ExperimentConfig::fast_preset(uint64_t seed) {
    ExperimentConfig c;
    c.n_values = {200, 500, 1000};
    c.trials = 20;
    c.seed = seed;
    c.lunar_mode = LunarMode::Pruned;
    return c;
}

InstanceRecord run_trial(const ExperimentConfig& config, Topology topology, int n, int trial) {
    const auto t0 = std::chrono::steady_clock::now();
    // The sample seed does not depend on the topology, so square and torus
    // runs of one trial see the same points (paired comparisons).
    const uint64_t sample_seed =
        derive_seed(config.seed, (static_cast<uint64_t>(n) << 20) ^ static_cast<uint64_t>(trial));
    std::vector<Point2> pts = config.sampler == Sampler::Uniform
                                  ? sample_uniform(static_cast<std::size_t>(n), sample_seed)
                                  : sample_poisson(static_cast<double>(n), sample_seed);
    const Coloring coloring =
        random_coloring(pts, config.color_probability, derive_seed(sample_seed, 0x10c0u));

    InstanceRecord rec = analyze_instance(pts, coloring, topology, config.lunar_mode);
    rec.n = n;
    rec.trial = trial;
    rec.seed = sample_seed;
    const auto t1 = std::chrono::steady_clock::now();
    rec.wall_ms =
        config.timing ? std::chrono::duration<double, std::milli>(t1 - t0).count() : 0.0;
    return rec;
}

FitResult fit_sqrt(std::span<const int> n_values, std::span<const double> means) {
    if (n_values.size() != means.size() || n_values.size() < 2)
        throw UsageError("fit_sqrt: need means for at least two n values");
    long double sxx = 0, sx = 0, sxy = 0, sy = 0;
    const long double m = static_cast<long double>(n_values.size());
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        const long double x = std::sqrt(static_cast<long double>(n_values[i]));
        sxx += x * x;
        sx += x;
        sxy += x * means[i];
        sy += means[i];
    }
    const long double det = m * sxx - sx * sx;
    if (det == 0.0L) throw UsageError("fit_sqrt: singular design (all n equal)");
    FitResult f;
    f.a1 = static_cast<double>((m * sxy - sx * sy) / det);
    f.a0 = static_cast<double>((sxx * sy - sx * sxy) / det);
    long double rss = 0;
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        const long double x = std::sqrt(static_cast<long double>(n_values[i]));
        const long double r = means[i] - (f.a1 * x + f.a0);
        rss += r * r;
    }
    f.residual = static_cast<double>(std::sqrt(static_cast<double>(rss)));
    return f;
}

const char* topology_name(Topology t) {
    return t == Topology::UnitSquare ? "square" : "torus";
}

std::vector<std::string> record_quantity_names() {
    return {"emst_length", "lunar_cost", "dom0", "dom1", "cod0", "cod1", "rel1",
            "rel2",        "ker0",       "ker1", "im0",  "im1",  "cok1"};
}

double record_quantity(const InstanceRecord& r, std::size_t index) {
    switch (index) {
    case 0: return r.emst_length;
    case 1: return r.lunar_cost;
    case 2: return r.norms.dom0;
    case 3: return r.norms.dom1;
    case 4: return r.norms.cod0;
    case 5: return r.norms.cod1;
    case 6: return r.norms.rel1;
    case 7: return r.norms.rel2;
    case 8: return r.norms.ker0;
    case 9: return r.norms.ker1;
    case 10: return r.norms.im0;
    case 11: return r.norms.im1;
    default: return r.norms.cok1;
    }
}

SweepResult run_sweep(const ExperimentConfig& config) {
    if (config.trials < 1 || config.n_values.empty())
        throw UsageError("run_sweep: need at least one n value and one trial");

    struct Task {
        Topology topo;
        int n;
        int trial;
    };
    std::vector<Task> tasks;
    for (const Topology topo : config.topologies)
        for (const int n : config.n_values)
            for (int t = 0; t < config.trials; ++t) tasks.push_back(Task{topo, n, t});

    SweepResult sweep;
    sweep.records.resize(tasks.size());
    std::atomic<std::size_t> cursor{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned nthreads =
        config.threads > 0 ? static_cast<unsigned>(config.threads) : hw;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                sweep.records[i] =
                    run_trial(config, tasks[i].topo, tasks[i].n, tasks[i].trial);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    const std::vector<std::string> quantities = record_quantity_names();
    for (const Topology topo : config.topologies) {
        std::map<std::string, FitResult> per_quantity;
        for (std::size_t q = 0; q < quantities.size(); ++q) {
            std::vector<double> means;
            FitResult fit;
            for (const int n : config.n_values) {
                double sum = 0, sum2 = 0;
                int count = 0;
                for (const InstanceRecord& r : sweep.records) {
                    if (r.topology != topo || r.n != n) continue;
                    const double v = record_quantity(r, q);
                    sum += v;
                    sum2 += v * v;
                    ++count;
                }
                const double mean = sum / count;
                const double var =
                    count > 1 ? std::max(0.0, (sum2 - count * mean * mean) / (count - 1)) : 0.0;
                means.push_back(mean);
                fit.per_n.push_back(FitResult::PerN{n, mean, std::sqrt(var)});
            }
            const FitResult ls = fit_sqrt(config.n_values, means);
            fit.a1 = ls.a1;
            fit.a0 = ls.a0;
            fit.residual = ls.residual;
            per_quantity[quantities[q]] = std::move(fit);
        }
        sweep.fits[topology_name(topo)] = std::move(per_quantity);
    }

    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        write_file(config.out_dir + "/results.csv", records_csv(sweep.records));
        write_file(config.out_dir + "/summary.json", sweep_summary_json(sweep, config));
        if (config.plots) {
            for (const std::string& q : quantities) {
                std::map<std::string, FitResult> by_topo;
                for (const auto& [topo, fits] : sweep.fits) by_topo[topo] = fits.at(q);
                write_file(config.out_dir + "/plot_" + q + ".svg", fit_plot_svg(q, by_topo));
            }
        }
    }
    return sweep;
}

} // namespace chroma
