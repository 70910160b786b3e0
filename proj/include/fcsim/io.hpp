#pragma once

// Plain-text serialization. All numeric output uses shortest round-trip
// formatting, so write/read cycles reproduce doubles bit-exactly and
// identical runs produce identical bytes. Lines starting with '#' are
// comments and are skipped by every reader.
//
// Formats:
//   square matrix   first line "n", then n rows of n values
//   time series     first line "n t_len", then n rows of t_len values
//   edge list       first line "n m", then m lines "i j" (0-based, i < j)
//   sweep config    "key = value" lines, lists whitespace-separated
//   results table   tab-separated, one row per realization plus one
//                   aggregate row per cell, NA for undefined values
//   heatmap         grid file of rows over p_fc columns + axis sidecar

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "fcsim/fc.hpp"
#include "fcsim/graph.hpp"
#include "fcsim/model.hpp"
#include "fcsim/sweep.hpp"

namespace fcsim {

std::string format_double(double value);

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(std::istream& in, const std::string& source);

void write_time_series(std::ostream& out, const TimeSeriesSample& ts);
TimeSeriesSample read_time_series(std::istream& in, const std::string& source);

void write_edge_list(std::ostream& out, const BinaryGraph& g);
BinaryGraph read_edge_list(std::istream& in, const std::string& source);

// For `analyze`: a file holding either an edge list ("n m" header), a 0/1
// adjacency matrix, or a correlation matrix ("n" header).
struct GraphOrMatrix {
    std::optional<BinaryGraph> graph;          // edge list or adjacency input
    std::optional<CorrelationMatrix> matrix;   // correlation input
};
GraphOrMatrix read_graph_or_matrix(const std::string& path);

SweepConfig read_sweep_config(std::istream& in, const std::string& source);
SweepConfig read_sweep_config_file(const std::string& path);
void write_sweep_config(std::ostream& out, const SweepConfig& config);

// Results table. Column order is fixed (see README); readers reconstruct
// both realization records and per-cell aggregates.
void write_results_table(std::ostream& out, const std::vector<CellResult>& results);
std::string results_table_to_string(const std::vector<CellResult>& results);
std::vector<CellResult> read_results_table(std::istream& in, const std::string& source);
std::vector<CellResult> read_results_table_file(const std::string& path);

void write_heatmap(std::ostream& grid_out, std::ostream& axes_out, const HeatmapGrid& grid);

// File helpers; header_lines are written as '#' comments at the top.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace fcsim
