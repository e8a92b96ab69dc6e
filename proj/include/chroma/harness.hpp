#pragma once

#include "chroma/filtration.hpp"
#include "chroma/lunar.hpp"
#include "chroma/persistence.hpp"
#include "chroma/sixpack.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace chroma {

// Counter-based deterministic generator (splitmix64); identical seeds give
// identical streams on every platform.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Splits a root seed into independent per-stream seeds.
uint64_t derive_seed(uint64_t root, uint64_t stream);

std::vector<Point2> sample_uniform(std::size_t n, uint64_t seed);
std::vector<Point2> sample_poisson(double intensity, uint64_t seed);

struct Coloring {
    std::vector<Point2> points0, points1;
    std::vector<int> labels;
};
Coloring random_coloring(std::span<const Point2> points, double p, uint64_t seed);

// Diagram norms and tree length of one point set; handles n <= 2 without a
// triangulation.
struct PointSummary {
    double h0_norm = 0;
    double h1_norm = 0;
    double emst_length = 0;
};
PointSummary analyze_points(std::span<const Point2> points, Topology topology);

struct InstanceRecord {
    int n = 0;
    int trial = 0;
    uint64_t seed = 0;
    Topology topology = Topology::UnitSquare;
    double emst_length = 0;
    double lunar_cost = 0;
    SixPackNorms norms;
    MomentCounters counters; // r0 = infinity over the unit square
    double crit_edge_fraction = 0;
    double crit_tri_fraction = 0;
    double wall_ms = 0;
};

// The full pipeline on explicit data: triangulate the bi- and mono-chromatic
// sets, compute diagram norms, run the lunar sweep, derive the six-pack.
InstanceRecord analyze_instance(std::span<const Point2> points, const Coloring& coloring,
                                Topology topology, LunarMode mode);

enum class Sampler { Uniform, Poisson };

struct ExperimentConfig {
    Sampler sampler = Sampler::Uniform;
    std::vector<Topology> topologies = {Topology::UnitSquare, Topology::Torus};
    std::vector<int> n_values = {2000, 3000, 4000, 5000, 6000, 7000};
    int trials = 100;
    double color_probability = 0.5;
    uint64_t seed = 1;
    LunarMode lunar_mode = LunarMode::Pruned;
    std::string out_dir = "out";
    int threads = 0; // 0 = hardware concurrency
    bool plots = false;
    bool timing = false; // when false, wall_ms is reported as 0 so outputs are byte-stable

    static ExperimentConfig fast_preset(uint64_t seed);
};

InstanceRecord run_trial(const ExperimentConfig& config, Topology topology, int n, int trial);

struct FitResult {
    double a1 = 0;
    double a0 = 0;
    double residual = 0;
    struct PerN {
        int n;
        double mean;
        double stddev;
    };
    std::vector<PerN> per_n;
};

// Ordinary least squares of means against a1 sqrt(n) + a0.
FitResult fit_sqrt(std::span<const int> n_values, std::span<const double> means);

struct SweepResult {
    std::vector<InstanceRecord> records; // deterministic order
    // fits[topology names "square"/"torus"][quantity name]
    std::map<std::string, std::map<std::string, FitResult>> fits;
};

// Runs all trials (parallel across trials, deterministic aggregation) and
// writes results.csv + summary.json (+ plots) under config.out_dir.
SweepResult run_sweep(const ExperimentConfig& config);

const char* topology_name(Topology t);
std::vector<std::string> record_quantity_names();
double record_quantity(const InstanceRecord& r, std::size_t index);

} // namespace chroma
