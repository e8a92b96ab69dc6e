#include "chroma/errors.hpp"
#include "chroma/harness.hpp"
#include "chroma/io.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace chroma;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_CASE("uniform sampling is deterministic and well spread") {
    CHECK(sample_uniform(0, 7).empty());
    const auto a = sample_uniform(1000, 12345);
    const auto b = sample_uniform(1000, 12345);
    CHECK(a == b);
    CHECK(sample_uniform(1000, 12346) != a);

    const auto big = sample_uniform(1000000, 1);
    double mx = 0, my = 0;
    for (const Point2& p : big) {
        CHECK(p.x >= 0.0);
        CHECK(p.x < 1.0);
        mx += p.x;
        my += p.y;
    }
    mx /= big.size();
    my /= big.size();
    CHECK(std::abs(mx - 0.5) < 0.002);
    CHECK(std::abs(my - 0.5) < 0.002);
}

TEST_CASE("poisson sampling statistics") {
    const double lambda = 20.0;
    const int draws = 10000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < draws; ++i) {
        const auto pts = sample_poisson(lambda, derive_seed(99, i));
        sum += pts.size();
        sum2 += static_cast<double>(pts.size()) * pts.size();
    }
    const double mean = sum / draws;
    const double var = (sum2 - draws * mean * mean) / (draws - 1);
    CHECK(std::abs(mean - lambda) < 3 * std::sqrt(lambda / draws));
    CHECK(std::abs(var - lambda) < 0.9); // 3 sigma for the variance estimator
    CHECK(sample_poisson(lambda, 5) == sample_poisson(lambda, 5));
    CHECK_THROWS_AS(sample_poisson(0.0, 1), UsageError);
}

TEST_CASE("random coloring") {
    const auto pts = sample_uniform(10000, 8);
    const Coloring c = random_coloring(pts, 0.5, 9);
    const double n0 = static_cast<double>(c.points0.size());
    CHECK(std::abs(n0 - 5000.0) <= 3 * std::sqrt(10000.0 / 4));
    CHECK(c.points0.size() + c.points1.size() == pts.size());
    const Coloring c2 = random_coloring(pts, 0.5, 9);
    CHECK(c.labels == c2.labels);
    CHECK_THROWS_AS(random_coloring(pts, 0.0, 1), UsageError);
    CHECK_THROWS_AS(random_coloring(pts, 1.0, 1), UsageError);

    // A fair split of a Poisson sample behaves like two half-intensity ones.
    double count0 = 0;
    const int reps = 400;
    for (int i = 0; i < reps; ++i) {
        const auto sample = sample_poisson(60.0, derive_seed(17, i));
        count0 += random_coloring(sample, 0.5, derive_seed(18, i)).points0.size();
    }
    CHECK(std::abs(count0 / reps - 30.0) < 3 * std::sqrt(30.0 / reps));
}

TEST_CASE("derived seeds differ across trials") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(1, 7) == derive_seed(1, 7));
}

TEST_CASE("analyze_points small cases") {
    CHECK_THROWS_AS(analyze_points(std::vector<Point2>{}, Topology::UnitSquare), UsageError);
    const PointSummary one = analyze_points(std::vector<Point2>{{0.4, 0.6}}, Topology::UnitSquare);
    CHECK(one.h0_norm == 0.0);
    CHECK(one.emst_length == 0.0);
    const PointSummary two =
        analyze_points(std::vector<Point2>{{0.1, 0.1}, {0.9, 0.1}}, Topology::Torus);
    CHECK(two.emst_length == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(two.h0_norm == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("instance pipeline identities") {
    const auto pts = sample_uniform(300, 2718);
    const Coloring col = random_coloring(pts, 0.5, 281828);
    for (const Topology topo : {Topology::UnitSquare, Topology::Torus}) {
        const InstanceRecord rec = analyze_instance(pts, col, topo, LunarMode::Pruned);
        CHECK(rec.norms.cod0 == doctest::Approx(0.5 * rec.emst_length).epsilon(1e-9));
        CHECK(rec.norms.rel1 == rec.lunar_cost / 2);
        CHECK(rec.norms.ker0 + rec.norms.im0 == doctest::Approx(rec.norms.dom0).epsilon(1e-9));
        CHECK(rec.crit_edge_fraction > 0.5);
        CHECK(rec.crit_edge_fraction < 0.8);
        CHECK(rec.crit_tri_fraction > 0.3);
        CHECK(rec.crit_tri_fraction < 0.7);
    }
}

TEST_CASE("duplicated colors satisfy the degenerate identities") {
    const auto pts = sample_uniform(120, 999);
    Coloring col;
    col.points0 = pts;
    col.points1 = pts;
    const InstanceRecord rec = analyze_instance(pts, col, Topology::UnitSquare, LunarMode::Pruned);
    CHECK(rec.norms.dom0 == doctest::Approx(2 * rec.norms.cod0).epsilon(1e-9));
    CHECK(rec.norms.rel1 == doctest::Approx(rec.norms.cod0).epsilon(1e-9));
    CHECK(rec.norms.ker0 == doctest::Approx(rec.norms.cod0).epsilon(1e-9));
    CHECK(rec.norms.cok1 == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rec.norms.im1 == doctest::Approx(rec.norms.cod1).epsilon(1e-9));
    CHECK(rec.norms.ker1 == doctest::Approx(rec.norms.cod1).epsilon(1e-9));
    CHECK(rec.norms.rel2 == doctest::Approx(rec.norms.cod1).epsilon(1e-9));
}

TEST_CASE("empty color class is a clean error") {
    const std::vector<Point2> pts{{0.1, 0.1}, {0.5, 0.5}, {0.2, 0.8}};
    Coloring col;
    col.points0 = pts;
    CHECK_THROWS_AS(analyze_instance(pts, col, Topology::UnitSquare, LunarMode::Pruned),
                    UsageError);
}

TEST_CASE("least squares against sqrt(n)") {
    const std::vector<int> ns{100, 400, 900, 1600};
    std::vector<double> exact;
    for (const int n : ns) exact.push_back(0.75 * std::sqrt(n) + 1.5);
    const FitResult f = fit_sqrt(ns, exact);
    CHECK(f.a1 == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(f.a0 == doctest::Approx(1.5).epsilon(1e-11));
    CHECK(f.residual < 1e-10);

    const std::vector<int> two{100, 400};
    const std::vector<double> sq{10.0, 20.0};
    const FitResult g = fit_sqrt(two, sq);
    CHECK(g.a1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.a0 == doctest::Approx(0.0).epsilon(1e-10));

    const std::vector<int> bad{300, 300};
    CHECK_THROWS_AS(fit_sqrt(bad, sq), UsageError);

    // Noisy synthetic recovery.
    Rng rng(4);
    const std::vector<int> six{500, 1000, 2000, 3000, 4000, 5000};
    std::vector<double> noisy;
    for (const int n : six) {
        const double noise = (rng.uniform01() - 0.5) * 2 * 0.01 * std::sqrt(n);
        noisy.push_back(0.65 * std::sqrt(n) + noise);
    }
    CHECK(std::abs(fit_sqrt(six, noisy).a1 - 0.65) < 0.02);
}

TEST_CASE("sweep outputs are deterministic and paired across topologies") {
    ExperimentConfig cfg;
    cfg.n_values = {50, 90};
    cfg.trials = 4;
    cfg.seed = 77;
    cfg.out_dir = "test_sweep_out_a";
    cfg.threads = 2;
    const SweepResult a = run_sweep(cfg);
    cfg.out_dir = "test_sweep_out_b";
    cfg.threads = 1;
    const SweepResult b = run_sweep(cfg);

    CHECK(slurp("test_sweep_out_a/results.csv") == slurp("test_sweep_out_b/results.csv"));
    CHECK(slurp("test_sweep_out_a/summary.json") == slurp("test_sweep_out_b/summary.json"));

    // Same points on the torus never yield a longer tree.
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        const InstanceRecord& r = a.records[i];
        if (r.topology != Topology::UnitSquare) continue;
        for (const InstanceRecord& s : a.records) {
            if (s.topology == Topology::Torus && s.n == r.n && s.trial == r.trial) {
                CHECK(s.seed == r.seed);
                CHECK(s.emst_length <= r.emst_length + 1e-12);
            }
        }
    }
    std::filesystem::remove_all("test_sweep_out_a");
    std::filesystem::remove_all("test_sweep_out_b");
}
