#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tfim {

/// One coupling term w * J * Z_u Z_v. Stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
  int J = 1;

  bool operator==(const Edge&) const = default;
};

/// A signed, weighted transverse-field Ising instance on qubits 0..n-1.
///
/// Minimization form:  sum_e w_e J_e Z_u Z_v - sum_i h_i X_i
/// Maximization form:  sum_e w_e (I - J_e Z_u Z_v)/2 + sum_i h_i (I + X_i)/2
///
/// Validated on construction and immutable afterwards.
class Instance {
 public:
  Instance(int n, std::vector<Edge> edges, std::vector<double> fields);

  int size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<double>& fields() const noexcept { return fields_; }

  /// Sum of edge weights.
  double total_weight() const noexcept { return total_weight_; }
  /// Sum of transverse fields.
  double total_field() const noexcept { return total_field_; }

  /// Same graph and couplings with a different field vector.
  Instance with_fields(std::vector<double> fields) const;

  bool operator==(const Instance& other) const {
    return n_ == other.n_ && edges_ == other.edges_ && fields_ == other.fields_;
  }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<double> fields_;
  double total_weight_ = 0.0;
  double total_field_ = 0.0;
};

/// Parses the JSON instance document
///   {"n": int, "edges": [{"u","v","w","J"}...], "fields": [..] | number}
/// Throws ParseError naming the offending field path.
Instance parse_instance(std::string_view text);

/// Reads and parses an instance file.
Instance load_instance(const std::string& path);

/// Canonical JSON form; parse_instance(serialize_instance(x)) == x.
std::string serialize_instance(const Instance& inst);

struct ShiftConstants {
  double total_weight = 0.0;  // W
  double total_field = 0.0;   // H
};

/// (W, H) such that lambda_min(H_TFIM) = W + H - 2 lambda_max(H_TFIM').
ShiftConstants shift_constants(const Instance& inst);

/// True iff some cycle cannot satisfy all of its edge preferences at once
/// (J = +1 prefers anti-aligned z, J = -1 prefers aligned z). Decided by
/// two-colouring each connected component through the edge preferences.
bool is_frustrated(const Instance& inst);

/// Places `b` after `a`, relabelling b's vertices by a.size().
Instance disjoint_union(const Instance& a, const Instance& b);

/// G(n, edge_prob) with J = -1 with probability neg_prob, w ~ U[0,1], h_i ~ U[0,h_max].
/// Deterministic in `seed`.
Instance erdos_renyi_instance(int n, double edge_prob, double neg_prob, double h_max,
                              std::uint64_t seed);

/// The three-qubit antiferromagnetic triangle with unit weights and uniform field `g`.
Instance triangle_instance(double g = 0.6);

}  // namespace tfim
