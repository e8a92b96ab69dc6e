#include "chroma/io.hpp"
#include "chroma/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace chroma {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

std::string points_csv(std::span<const Point2> points) {
    std::string s = "x,y\n";
    for (const Point2& p : points) {
        s += format_double(p.x);
        s += ',';
        s += format_double(p.y);
        s += '\n';
    }
    return s;
}

std::string mosaic_dump(const Mosaic& m) {
    std::string s = "mosaic ";
    s += std::to_string(m.points.size());
    s += ' ';
    s += (m.topology == Topology::Torus ? "torus" : "square");
    s += '\n';
    for (const Point2& p : m.points) {
        s += "v ";
        s += format_double(p.x);
        s += ' ';
        s += format_double(p.y);
        s += '\n';
    }
    for (std::size_t v = 0; v < m.points.size(); ++v) {
        s += "0 ";
        s += std::to_string(v);
        s += '\n';
    }
    for (const Mosaic::Edge& e : m.edges) {
        s += "1 " + std::to_string(e.v[0]) + ' ' + std::to_string(e.v[1]);
        for (int k = 0; k < 2; ++k)
            s += ' ' + std::to_string(e.off[k][0]) + ' ' + std::to_string(e.off[k][1]);
        s += '\n';
    }
    for (const Mosaic::Triangle& t : m.triangles) {
        s += "2 " + std::to_string(t.v[0]) + ' ' + std::to_string(t.v[1]) + ' ' +
             std::to_string(t.v[2]);
        for (int k = 0; k < 3; ++k)
            s += ' ' + std::to_string(t.off[k][0]) + ' ' + std::to_string(t.off[k][1]);
        s += '\n';
    }
    return s;
}

std::string cells_csv(const FilteredMosaic& fm) {
    std::string s = "dimension,value,critical\n";
    for (const CellRef& c : fm.order) {
        double value = 0.0;
        bool critical = true;
        if (c.dim == 1) {
            value = fm.edge_value[c.idx];
            critical = fm.edge_critical[c.idx];
        } else if (c.dim == 2) {
            value = fm.tri_value[c.idx];
            critical = fm.tri_critical[c.idx];
        }
        s += std::to_string(static_cast<int>(c.dim));
        s += ',';
        s += format_double(value);
        s += ',';
        s += critical ? '1' : '0';
        s += '\n';
    }
    return s;
}

std::string diagrams_csv(std::span<const Diagram> diagrams) {
    std::string s = "degree,birth,death\n";
    for (const Diagram& d : diagrams) {
        for (const auto& [b, dth] : d.pairs) {
            s += std::to_string(d.degree);
            s += ',';
            s += format_double(b);
            s += ',';
            s += format_double(dth);
            s += '\n';
        }
        for (const double b : d.essential_births) {
            s += std::to_string(d.degree);
            s += ',';
            s += format_double(b);
            s += ",inf\n";
        }
    }
    return s;
}

std::string lunar_events_csv(const LunarTree& tree) {
    struct Line {
        double r;
        int kind;
        std::string text;
    };
    std::vector<Line> lines;
    for (const LunarTree::Birth& b : tree.births)
        lines.push_back({b.radius, 0,
                         format_double(b.radius) + ",wake," + std::to_string(b.a) + ',' +
                             std::to_string(b.b)});
    for (const LunarTree::Merge& m : tree.merges)
        lines.push_back({m.radius, 1,
                         format_double(m.radius) + ",merge," + std::to_string(m.a1) + ',' +
                             std::to_string(m.b1) + ',' + std::to_string(m.a2) + ',' +
                             std::to_string(m.b2)});
    std::stable_sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
        return x.r != y.r ? x.r < y.r : x.kind < y.kind;
    });
    std::string s = "radius,kind,indices\n";
    for (const Line& l : lines) {
        s += l.text;
        s += '\n';
    }
    return s;
}

std::string records_csv(std::span<const InstanceRecord> records) {
    std::string s =
        "n,trial,seed,topology,emst_length,lunar_cost,dom0,dom1,cod0,cod1,rel1,rel2,ker0,ker1,"
        "im0,im1,cok1,wall_ms\n";
    const std::size_t nq = record_quantity_names().size();
    for (const InstanceRecord& r : records) {
        s += std::to_string(r.n);
        s += ',';
        s += std::to_string(r.trial);
        s += ',';
        s += std::to_string(r.seed);
        s += ',';
        s += topology_name(r.topology);
        for (std::size_t q = 0; q < nq; ++q) {
            s += ',';
            s += format_double(record_quantity(r, q));
        }
        s += ',';
        s += format_double(r.wall_ms);
        s += '\n';
    }
    return s;
}

std::string sweep_summary_json(const SweepResult& sweep, const ExperimentConfig& config) {
    nlohmann::json j;
    j["config"]["sampler"] = config.sampler == Sampler::Uniform ? "uniform" : "poisson";
    j["config"]["n_values"] = config.n_values;
    j["config"]["trials"] = config.trials;
    j["config"]["color_probability"] = config.color_probability;
    j["config"]["seed"] = config.seed;
    j["config"]["lunar_mode"] = config.lunar_mode == LunarMode::Exact ? "exact" : "pruned";
    std::vector<std::string> topo_names;
    for (const Topology t : config.topologies) topo_names.push_back(topology_name(t));
    j["config"]["topologies"] = topo_names;

    for (const auto& [topo, fits] : sweep.fits) {
        for (const auto& [quantity, fit] : fits) {
            nlohmann::json f;
            f["a1"] = fit.a1;
            f["a0"] = fit.a0;
            f["residual"] = fit.residual;
            for (const auto& pn : fit.per_n)
                f["per_n"].push_back({{"n", pn.n}, {"mean", pn.mean}, {"std", pn.stddev}});
            j["fits"][topo][quantity] = std::move(f);
        }
    }
    return j.dump(2) + "\n";
}

std::string fit_plot_svg(const std::string& quantity,
                         const std::map<std::string, FitResult>& by_topology) {
    const double width = 640, height = 420, ml = 60, mr = 20, mt = 30, mb = 40;
    double nmin = 1e300, nmax = -1e300, vmin = 1e300, vmax = -1e300;
    for (const auto& [topo, fit] : by_topology) {
        for (const auto& pn : fit.per_n) {
            nmin = std::min(nmin, static_cast<double>(pn.n));
            nmax = std::max(nmax, static_cast<double>(pn.n));
            vmin = std::min(vmin, pn.mean - 2 * pn.stddev);
            vmax = std::max(vmax, pn.mean + 2 * pn.stddev);
        }
    }
    if (vmax <= vmin) vmax = vmin + 1;
    if (nmax <= nmin) nmax = nmin + 1;
    auto X = [&](double n) { return ml + (n - nmin) / (nmax - nmin) * (width - ml - mr); };
    auto Y = [&](double v) { return height - mb - (v - vmin) / (vmax - vmin) * (height - mt - mb); };

    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_double(width) +
                    "\" height=\"" + format_double(height) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + format_double(width / 2) + "\" y=\"18\" text-anchor=\"middle\">" +
         quantity + "</text>\n";
    s += "<line x1=\"" + format_double(ml) + "\" y1=\"" + format_double(height - mb) + "\" x2=\"" +
         format_double(width - mr) + "\" y2=\"" + format_double(height - mb) +
         "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + format_double(ml) + "\" y1=\"" + format_double(mt) + "\" x2=\"" +
         format_double(ml) + "\" y2=\"" + format_double(height - mb) + "\" stroke=\"black\"/>\n";
    const char* colors[2] = {"#1f77b4", "#ff7f0e"};
    int ci = 0;
    for (const auto& [topo, fit] : by_topology) {
        const char* color = colors[ci++ % 2];
        // fitted curve
        std::string path;
        for (int i = 0; i <= 64; ++i) {
            const double n = nmin + (nmax - nmin) * i / 64.0;
            const double v = fit.a1 * std::sqrt(n) + fit.a0;
            path += (i == 0 ? "M" : " L");
            path += format_double(X(n)) + " " + format_double(Y(v));
        }
        s += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color + "\"/>\n";
        for (const auto& pn : fit.per_n) {
            s += "<line x1=\"" + format_double(X(pn.n)) + "\" y1=\"" +
                 format_double(Y(pn.mean - pn.stddev)) + "\" x2=\"" + format_double(X(pn.n)) +
                 "\" y2=\"" + format_double(Y(pn.mean + pn.stddev)) + "\" stroke=\"" + color +
                 "\"/>\n";
            s += "<circle cx=\"" + format_double(X(pn.n)) + "\" cy=\"" + format_double(Y(pn.mean)) +
                 "\" r=\"3\" fill=\"" + color + "\"/>\n";
        }
        s += "<text x=\"" + format_double(width - mr - 120) + "\" y=\"" +
             format_double(mt + 16.0 * ci) + "\" fill=\"" + color + "\">" + topo + " a1=" +
             format_double(fit.a1) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace chroma
