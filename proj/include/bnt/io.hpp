#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "bnt/graph.hpp"
#include "bnt/topology.hpp"

namespace bnt {

// Edge list: one "u v" pair per line, '#' starts a comment. An optional
// "# vertices: N" comment pins the vertex count (needed for trailing isolated
// vertices); otherwise the count is the largest endpoint plus one.
Network read_edge_list(const std::string& path);
void write_edge_list(const Network& g, const std::string& path);

// Placement file: a line "S: ids..." and a line "T: ids...".
MonitorPlacement read_placement(const std::string& path);
void write_placement(const MonitorPlacement& placement, const std::string& path);

// Embedding CSV: a "# n=<side> d=<dimension> omega=<range>" comment followed
// by "vertex,c1,...,cd" rows covering vertices 0..V-1.
LosEmbedding read_embedding(const std::string& path);
void write_embedding(const LosEmbedding& embedding, const std::string& path);

// key=value lines; '#' comments; later assignments win.
std::map<std::string, std::string> read_config(const std::string& path);

// Whole file as bytes. Throws "cannot open file: <path>".
std::string slurp(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// FNV-1a, 64-bit; used to fingerprint output files in run manifests.
uint64_t fnv1a_digest(const std::string& payload);
uint64_t file_digest(const std::string& path);

}  // namespace bnt
