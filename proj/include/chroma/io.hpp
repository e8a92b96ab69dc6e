#pragma once

#include "chroma/harness.hpp"
#include "chroma/persistence.hpp"

#include <string>

namespace chroma {

// Shortest round-trip decimal form of a double (to_chars), locale-free.
std::string format_double(double v);

std::string points_csv(std::span<const Point2> points);

// Line-based mosaic dump: header `mosaic <n> <square|torus>`, then one cell
// per line: dimension, vertex indices, per-vertex wrap offsets.
std::string mosaic_dump(const Mosaic& m);

// Per-cell `dimension,value,critical` lines.
std::string cells_csv(const FilteredMosaic& fm);

// Diagram lines `degree,birth,death`, essential classes as `degree,birth,inf`.
std::string diagrams_csv(std::span<const Diagram> diagrams);

// Lunar event log: `radius,kind,indices`.
std::string lunar_events_csv(const LunarTree& tree);

std::string records_csv(std::span<const InstanceRecord> records);
std::string sweep_summary_json(const SweepResult& sweep, const ExperimentConfig& config);
std::string fit_plot_svg(const std::string& quantity,
                         const std::map<std::string, FitResult>& by_topology);

void write_file(const std::string& path, const std::string& content);

} // namespace chroma
