#include "tfim/instance.hpp"

#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "tfim/errors.hpp"
#include "tfim/rng.hpp"

namespace tfim {

namespace {

std::string edge_path(std::size_t k) { return "edges[" + std::to_string(k) + "]"; }

}  // namespace

Instance::Instance(int n, std::vector<Edge> edges, std::vector<double> fields)
    : n_(n), edges_(std::move(edges)), fields_(std::move(fields)) {
  if (n_ < 1) throw ParseError("n", "vertex count must be at least 1");
  if (fields_.size() != static_cast<std::size_t>(n_)) {
    throw ParseError("fields", "expected " + std::to_string(n_) + " entries, got " +
                                   std::to_string(fields_.size()));
  }
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    const double h = fields_[i];
    if (!std::isfinite(h) || h < 0.0) {
      throw ParseError("fields[" + std::to_string(i) + "]", "field must be finite and nonnegative");
    }
    total_field_ += h;
  }

  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    Edge& e = edges_[k];
    if (e.u < 0 || e.u >= n_) throw ParseError(edge_path(k) + ".u", "vertex index out of range");
    if (e.v < 0 || e.v >= n_) throw ParseError(edge_path(k) + ".v", "vertex index out of range");
    if (e.u == e.v) throw ParseError(edge_path(k), "self-loop on vertex " + std::to_string(e.u));
    if (!std::isfinite(e.w) || e.w < 0.0) {
      throw ParseError(edge_path(k) + ".w", "weight must be finite and nonnegative");
    }
    if (e.J != 1 && e.J != -1) throw ParseError(edge_path(k) + ".J", "sign must be +1 or -1");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.emplace(e.u, e.v).second) {
      throw ParseError(edge_path(k), "duplicate edge {" + std::to_string(e.u) + "," +
                                         std::to_string(e.v) + "}");
    }
    total_weight_ += e.w;
  }
  if (!std::isfinite(total_weight_) || !std::isfinite(total_field_)) {
    throw ParseError("", "total weight or field overflows");
  }
}

Instance Instance::with_fields(std::vector<double> fields) const {
  return Instance(n_, edges_, std::move(fields));
}

Instance parse_instance(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "document must be a JSON object");

  auto require_int = [](const json& node, const std::string& path) -> int {
    if (!node.is_number_integer()) throw ParseError(path, "expected an integer");
    const auto v = node.get<long long>();
    if (v < -2147483647LL || v > 2147483647LL) throw ParseError(path, "integer out of range");
    return static_cast<int>(v);
  };
  auto require_number = [](const json& node, const std::string& path) -> double {
    if (!node.is_number()) throw ParseError(path, "expected a number");
    return node.get<double>();
  };

  if (!doc.contains("n")) throw ParseError("n", "missing");
  const int n = require_int(doc["n"], "n");
  if (n < 1) throw ParseError("n", "vertex count must be at least 1");

  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    const json& arr = doc["edges"];
    if (!arr.is_array()) throw ParseError("edges", "expected an array");
    edges.reserve(arr.size());
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const json& e = arr[k];
      const std::string base = edge_path(k);
      if (!e.is_object()) throw ParseError(base, "expected an object");
      for (const char* key : {"u", "v", "w", "J"}) {
        if (!e.contains(key)) throw ParseError(base + "." + key, "missing");
      }
      Edge edge;
      edge.u = require_int(e["u"], base + ".u");
      edge.v = require_int(e["v"], base + ".v");
      edge.w = require_number(e["w"], base + ".w");
      const double sign = require_number(e["J"], base + ".J");
      if (sign != 1.0 && sign != -1.0) throw ParseError(base + ".J", "sign must be +1 or -1");
      edge.J = sign > 0 ? 1 : -1;
      edges.push_back(edge);
    }
  }

  std::vector<double> fields;
  if (!doc.contains("fields")) throw ParseError("fields", "missing");
  const json& f = doc["fields"];
  if (f.is_number()) {
    fields.assign(static_cast<std::size_t>(n), f.get<double>());
  } else if (f.is_array()) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      fields.push_back(require_number(f[i], "fields[" + std::to_string(i) + "]"));
    }
  } else {
    throw ParseError("fields", "expected an array or a number");
  }

  return Instance(n, std::move(edges), std::move(fields));
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const Instance& inst) {
  nlohmann::json doc;
  doc["n"] = inst.size();
  doc["edges"] = nlohmann::json::array();
  for (const Edge& e : inst.edges()) {
    doc["edges"].push_back({{"u", e.u}, {"v", e.v}, {"w", e.w}, {"J", e.J}});
  }
  doc["fields"] = inst.fields();
  return doc.dump();
}

ShiftConstants shift_constants(const Instance& inst) {
  return {inst.total_weight(), inst.total_field()};
}

bool is_frustrated(const Instance& inst) {
  const int n = inst.size();
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : inst.edges()) {
    // J = +1 asks for opposite z, J = -1 for equal z.
    const int relation = -e.J;
    adj[e.u].emplace_back(e.v, relation);
    adj[e.v].emplace_back(e.u, relation);
  }
  std::vector<int> colour(static_cast<std::size_t>(n), 0);
  for (int root = 0; root < n; ++root) {
    if (colour[root] != 0) continue;
    colour[root] = 1;
    std::queue<int> pending;
    pending.push(root);
    while (!pending.empty()) {
      const int a = pending.front();
      pending.pop();
      for (auto [b, relation] : adj[a]) {
        const int want = colour[a] * relation;
        if (colour[b] == 0) {
          colour[b] = want;
          pending.push(b);
        } else if (colour[b] != want) {
          return true;
        }
      }
    }
  }
  return false;
}

Instance disjoint_union(const Instance& a, const Instance& b) {
  std::vector<Edge> edges = a.edges();
  for (Edge e : b.edges()) {
    e.u += a.size();
    e.v += a.size();
    edges.push_back(e);
  }
  std::vector<double> fields = a.fields();
  fields.insert(fields.end(), b.fields().begin(), b.fields().end());
  return Instance(a.size() + b.size(), std::move(edges), std::move(fields));
}

Instance erdos_renyi_instance(int n, double edge_prob, double neg_prob, double h_max,
                              std::uint64_t seed) {
  auto rng = make_stream(seed, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (unit(rng) >= edge_prob) continue;
      const int sign = unit(rng) < neg_prob ? -1 : 1;
      edges.push_back({u, v, unit(rng), sign});
    }
  }
  std::vector<double> fields(static_cast<std::size_t>(std::max(n, 0)));
  for (double& h : fields) h = h_max * unit(rng);
  return Instance(n, std::move(edges), std::move(fields));
}

Instance triangle_instance(double g) {
  return Instance(3, {{0, 1, 1.0, 1}, {1, 2, 1.0, 1}, {0, 2, 1.0, 1}}, {g, g, g});
}

}  // namespace tfim
