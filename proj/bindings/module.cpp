#include "chroma/analytics.hpp"
#include "chroma/errors.hpp"
#include "chroma/harness.hpp"
#include "chroma/io.hpp"
#include "chroma/persistence.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

namespace py = pybind11;
using namespace chroma;

namespace {

std::vector<Point2> to_points(const std::vector<std::pair<double, double>>& xy) {
    std::vector<Point2> pts;
    pts.reserve(xy.size());
    for (const auto& [x, y] : xy) pts.push_back(Point2{x, y});
    return pts;
}

std::vector<std::pair<double, double>> from_points(const std::vector<Point2>& pts) {
    std::vector<std::pair<double, double>> xy;
    xy.reserve(pts.size());
    for (const Point2& p : pts) xy.emplace_back(p.x, p.y);
    return xy;
}

Topology to_topology(const std::string& s) {
    if (s == "square") return Topology::UnitSquare;
    if (s == "torus") return Topology::Torus;
    throw UsageError("topology must be 'square' or 'torus'");
}

LunarMode to_mode(const std::string& s) {
    if (s == "exact") return LunarMode::Exact;
    if (s == "pruned") return LunarMode::Pruned;
    throw UsageError("lunar mode must be 'exact' or 'pruned'");
}

py::dict diagram_dict(const Diagram& d) {
    py::dict out;
    out["degree"] = d.degree;
    out["pairs"] = d.pairs;
    out["essential_births"] = d.essential_births;
    return out;
}

py::dict record_dict(const InstanceRecord& r) {
    py::dict out;
    out["n"] = r.n;
    out["seed"] = r.seed;
    out["topology"] = std::string(topology_name(r.topology));
    out["emst_length"] = r.emst_length;
    out["lunar_cost"] = r.lunar_cost;
    py::dict norms;
    const auto names = record_quantity_names();
    for (std::size_t q = 2; q < names.size(); ++q)
        norms[py::str(names[q])] = record_quantity(r, q);
    out["norms"] = norms;
    out["critical_edge_fraction"] = r.crit_edge_fraction;
    out["critical_triangle_fraction"] = r.crit_tri_fraction;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Chromatic persistence 1-norms, spanning trees and lunar trees of planar point "
              "sets, with the analytic moment formulas for the asymptotic constants.";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<DegenerateInputError>(m, "DegenerateInputError", PyExc_ValueError);
    py::register_exception<InconsistencyError>(m, "InconsistencyError", PyExc_RuntimeError);
    py::register_exception<TorusRangeError>(m, "TorusRangeError", PyExc_RuntimeError);

    m.def("sample_uniform",
          [](std::size_t n, uint64_t seed) { return from_points(sample_uniform(n, seed)); },
          py::arg("n"), py::arg("seed"), "n i.i.d. uniform points in the unit square");
    m.def("sample_poisson",
          [](double intensity, uint64_t seed) {
              return from_points(sample_poisson(intensity, seed));
          },
          py::arg("intensity"), py::arg("seed"));
    m.def("random_coloring",
          [](const std::vector<std::pair<double, double>>& pts, double p, uint64_t seed) {
              return random_coloring(to_points(pts), p, seed).labels;
          },
          py::arg("points"), py::arg("p"), py::arg("seed"),
          "independent Bernoulli(p) labels, 0 or 1 per point");

    m.def("triangulation_stats",
          [](const std::vector<std::pair<double, double>>& pts, const std::string& topology) {
              const Mosaic mo = triangulate(to_points(pts), to_topology(topology));
              py::dict out;
              out["vertices"] = mo.points.size();
              out["edges"] = mo.edges.size();
              out["triangles"] = mo.triangles.size();
              out["valid"] = validate(mo);
              return out;
          },
          py::arg("points"), py::arg("topology") = "square");

    m.def("diagrams",
          [](const std::vector<std::pair<double, double>>& pts, const std::string& topology) {
              const FilteredMosaic fm =
                  radius_values(triangulate(to_points(pts), to_topology(topology)));
              const AlphaPersistence ap = alpha_persistence(fm);
              py::dict out;
              out["h0"] = diagram_dict(ap.h0);
              out["h1"] = diagram_dict(ap.h1);
              out["emst_length"] = ap.tree.total_length;
              out["h0_norm"] = one_norm(ap.h0);
              out["h1_norm"] = one_norm(ap.h1);
              return out;
          },
          py::arg("points"), py::arg("topology") = "square",
          "degree-0/1 persistence of the radius filtration plus the tree length");

    m.def("emst_length",
          [](const std::vector<std::pair<double, double>>& pts, const std::string& topology) {
              return analyze_points(to_points(pts), to_topology(topology)).emst_length;
          },
          py::arg("points"), py::arg("topology") = "square");

    m.def("lunar_tree",
          [](const std::vector<std::pair<double, double>>& pts0,
             const std::vector<std::pair<double, double>>& pts1, const std::string& topology,
             const std::string& mode, bool audit) {
              const LunarTree t = lunar_emst(to_points(pts0), to_points(pts1),
                                             to_topology(topology), to_mode(mode), audit);
              py::dict out;
              out["cost"] = t.cost;
              out["relative1_norm"] = relative1_norm(t);
              out["pairs"] = t.pairs;
              out["essential_birth"] = t.essential_birth;
              out["births"] = t.births.size();
              out["merges"] = t.merges.size();
              return out;
          },
          py::arg("points0"), py::arg("points1"), py::arg("topology") = "square",
          py::arg("mode") = "pruned", py::arg("audit") = false);

    m.def("analyze",
          [](const std::vector<std::pair<double, double>>& pts, const std::vector<int>& labels,
             const std::string& topology, const std::string& mode) {
              const std::vector<Point2> points = to_points(pts);
              if (labels.size() != points.size())
                  throw UsageError("labels must match points");
              Coloring col;
              col.labels = labels;
              for (std::size_t i = 0; i < points.size(); ++i)
                  (labels[i] == 0 ? col.points0 : col.points1).push_back(points[i]);
              return record_dict(
                  analyze_instance(points, col, to_topology(topology), to_mode(mode)));
          },
          py::arg("points"), py::arg("labels"), py::arg("topology") = "square",
          py::arg("mode") = "pruned",
          "the full pipeline of one instance: tree length, lunar cost, all eleven norms");

    m.def("lower_incomplete_gamma", &lower_incomplete_gamma, py::arg("k"), py::arg("x"));
    m.def("expected_moment",
          [](int k, int power, double intensity, double r0) {
              return expected_moment(MomentFormula{k, k, power, intensity}, r0);
          },
          py::arg("k"), py::arg("power"), py::arg("intensity"),
          py::arg("r0") = std::numeric_limits<double>::infinity(),
          "expected critical-cell moments: k = 1 edges, k = 2 triangles");
    m.def("lower_bound_pipeline", []() {
        const LowerBoundPipeline p = theorem31_pipeline();
        py::dict out;
        out["x_envelope"] = p.x_envelope;
        out["envelope_count_coeff"] = p.envelope_count_coeff;
        out["envelope_length_coeff"] = p.envelope_length_coeff;
        out["x"] = p.x;
        out["surplus_count_coeff"] = p.surplus_count_coeff;
        out["surplus_length_coeff"] = p.surplus_length_coeff;
        out["lower_bound"] = p.lower_bound;
        return out;
    });
    m.def("cl_bounds",
          [](double c_lower, double c_upper) {
              const ClBounds b = cl_bounds(c_lower, c_upper);
              return std::pair<double, double>(b.lower, b.upper);
          },
          py::arg("c_lower"), py::arg("c_upper"));
    m.def("norm_constants",
          [](double c, double cl) {
              const ConstantTable t = table1_constants(c, cl);
              py::dict out;
              out["ker0"] = t.ker0;
              out["rel1"] = t.rel1;
              out["cok1"] = t.cok1;
              out["ker1"] = t.ker1;
              out["rel2"] = t.rel2;
              out["dom0"] = t.dom0;
              out["im0"] = t.im0;
              out["cod0"] = t.cod0;
              out["dom1"] = t.dom1;
              out["im1"] = t.im1;
              out["cod1"] = t.cod1;
              return out;
          },
          py::arg("c"), py::arg("cl"));
    m.def("fit_sqrt",
          [](const std::vector<int>& ns, const std::vector<double>& means) {
              const FitResult f = fit_sqrt(ns, means);
              py::dict out;
              out["a1"] = f.a1;
              out["a0"] = f.a0;
              out["residual"] = f.residual;
              return out;
          },
          py::arg("n_values"), py::arg("means"));
}
