#pragma once

#include <filesystem>
#include <string>

#include "vne/readout.hpp"

namespace vne {

/// Loads a dataset in the TU graph-kernel benchmark layout:
///   DS_A.txt               "i, j" per line, 1-based global node ids
///   DS_graph_indicator.txt graph id of node i on line i
///   DS_graph_labels.txt    class of graph g on line g
///   DS_node_labels.txt     optional, label of node i on line i
/// DS is taken from the single *_A.txt file in `dir`. Node labels become
/// one-hot attributes; without them, nodes get degree one-hot attributes.
/// Graph labels are remapped to 0..C-1 in ascending order. Self-loop rows are
/// skipped. Throws ParseError (with a line number) on malformed or
/// inconsistent files, including edges that join two graphs.
AttributedGraphSet load_tu_dataset(const std::filesystem::path& dir);

/// Name of the dataset stored in `dir` (the DS prefix).
std::string tu_dataset_name(const std::filesystem::path& dir);

}  // namespace vne
