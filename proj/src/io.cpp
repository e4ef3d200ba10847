#include "bnt/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bnt {
namespace {

std::string trim(const std::string& text) {
  size_t from = text.find_first_not_of(" \t\r\n");
  if (from == std::string::npos) return "";
  size_t to = text.find_last_not_of(" \t\r\n");
  return text.substr(from, to - from + 1);
}

std::vector<int> parse_ints(const std::string& text, const std::string& what) {
  std::istringstream in(text);
  std::vector<int> values;
  int v;
  while (in >> v) values.push_back(v);
  std::string leftover;
  if (in.clear(), in >> leftover)
    throw std::runtime_error("bad " + what + " line: " + text);
  return values;
}

}  // namespace

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

Network read_edge_list(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string line;
  std::vector<std::pair<Vertex, Vertex>> edges;
  int declared = -1;
  Vertex top = -1;
  while (std::getline(in, line)) {
    std::string body = line;
    size_t hash = body.find('#');
    if (hash != std::string::npos) {
      std::string comment = body.substr(hash + 1);
      body = body.substr(0, hash);
      size_t tag = comment.find("vertices:");
      if (tag != std::string::npos)
        declared = std::stoi(trim(comment.substr(tag + 9)));
    }
    body = trim(body);
    if (body.empty()) continue;
    std::vector<int> pair = parse_ints(body, "edge");
    if (pair.size() != 2) throw std::runtime_error("bad edge line: " + line);
    edges.emplace_back(pair[0], pair[1]);
    top = std::max({top, pair[0], pair[1]});
  }
  int n = declared >= 0 ? declared : top + 1;
  return Network(n, edges);
}

void write_edge_list(const Network& g, const std::string& path) {
  std::ostringstream out;
  out << "# vertices: " << g.vertex_count() << "\n";
  for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
  write_text(path, out.str());
}

MonitorPlacement read_placement(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string line;
  std::vector<Vertex> s_nodes, t_nodes;
  bool saw_s = false, saw_t = false;
  while (std::getline(in, line)) {
    std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    if (body.rfind("S:", 0) == 0) {
      s_nodes = parse_ints(body.substr(2), "placement");
      saw_s = true;
    } else if (body.rfind("T:", 0) == 0) {
      t_nodes = parse_ints(body.substr(2), "placement");
      saw_t = true;
    } else {
      throw std::runtime_error("bad placement line: " + line);
    }
  }
  if (!saw_s || !saw_t)
    throw std::runtime_error("placement file needs S and T lines: " + path);
  return MonitorPlacement{VertexSet(s_nodes), VertexSet(t_nodes)};
}

void write_placement(const MonitorPlacement& placement, const std::string& path) {
  std::ostringstream out;
  out << "S:";
  for (Vertex v : placement.s_set) out << " " << v;
  out << "\nT:";
  for (Vertex v : placement.t_set) out << " " << v;
  out << "\n";
  write_text(path, out.str());
}

LosEmbedding read_embedding(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string line;
  int side = -1, dimension = -1, omega = -1;
  std::map<int, std::vector<int>> rows;
  while (std::getline(in, line)) {
    std::string body = line;
    size_t hash = body.find('#');
    if (hash != std::string::npos) {
      std::istringstream meta(body.substr(hash + 1));
      std::string token;
      while (meta >> token) {
        if (token.rfind("n=", 0) == 0) side = std::stoi(token.substr(2));
        if (token.rfind("d=", 0) == 0) dimension = std::stoi(token.substr(2));
        if (token.rfind("omega=", 0) == 0) omega = std::stoi(token.substr(6));
      }
      body = body.substr(0, hash);
    }
    body = trim(body);
    if (body.empty()) continue;
    std::replace(body.begin(), body.end(), ',', ' ');
    std::vector<int> fields = parse_ints(body, "embedding");
    if (fields.size() < 2) throw std::runtime_error("bad embedding line: " + line);
    std::vector<int> coords(fields.begin() + 1, fields.end());
    if (!rows.emplace(fields[0], std::move(coords)).second)
      throw std::runtime_error("duplicate embedding vertex: " + line);
  }
  if (side < 0 || dimension < 0 || omega < 0)
    throw std::runtime_error("embedding file needs an n= d= omega= header: " + path);
  std::vector<std::vector<int>> coords(rows.size());
  for (auto& [v, point] : rows) {
    if (v < 0 || v >= static_cast<int>(rows.size()))
      throw std::runtime_error("embedding rows must cover vertices 0..V-1: " + path);
    coords[v] = std::move(point);
  }
  return LosEmbedding(dimension, side, omega, std::move(coords));
}

void write_embedding(const LosEmbedding& embedding, const std::string& path) {
  std::ostringstream out;
  out << "# n=" << embedding.side() << " d=" << embedding.dimension()
      << " omega=" << embedding.omega() << "\n";
  for (Vertex v = 0; v < embedding.vertex_count(); ++v) {
    out << v;
    for (int c : embedding.coords_of(v)) out << "," << c;
    out << "\n";
  }
  write_text(path, out.str());
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string line;
  std::map<std::string, std::string> values;
  while (std::getline(in, line)) {
    std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad config line: " + line);
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw std::runtime_error("bad config line: " + line);
    values[key] = value;
  }
  return values;
}

uint64_t fnv1a_digest(const std::string& payload) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char byte : payload) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t file_digest(const std::string& path) { return fnv1a_digest(slurp(path)); }

}  // namespace bnt
