#pragma once

#include <map>
#include <string>

#include "bqc/pattern.hpp"
#include "bqc/statevector.hpp"

namespace bqc {

struct RunRecord {
    std::map<int, int> outcomes;  // measured vertices only
    Statevector output_state;     // over output_vertices, byproducts corrected
};

// Tensor product of the per-vertex states with CZ on every edge. Vertex v is
// qubit v of the result.
Statevector build_graph_state(const GraphSpec& g,
                              const std::map<int, Statevector>& vertex_states);

// Direct (non-blind) executor: |+> on every vertex, measure in order at the
// adapted angle with basis sign +1, then apply X/Z byproduct corrections to
// the outputs. This is the correctness oracle for every delegated protocol.
RunRecord run_pattern_direct(const GraphSpec& g, const Pattern& p, BranchSource& src);

std::vector<int> measure_output_bits(Statevector& output_state, BranchSource& src);

inline constexpr int kEnumerationVertexCap = 12;

// Exact distribution of the computational-basis output bits, by enumerating
// every measurement branch with its Born probability. Keys are bit strings
// ordered like output_vertices.
std::map<std::string, double> output_distribution(const GraphSpec& g, const Pattern& p);

}  // namespace bqc
