#include "bqc/mbqc.hpp"

#include <algorithm>

namespace bqc {

Statevector build_graph_state(const GraphSpec& g,
                              const std::map<int, Statevector>& vertex_states) {
    validate_graph(g);
    auto it = vertex_states.find(0);
    if (it == vertex_states.end()) throw SimError("missing state for vertex 0");
    Statevector sv = it->second;
    for (int v = 1; v < g.num_vertices; ++v) {
        it = vertex_states.find(v);
        if (it == vertex_states.end()) throw SimError("missing state for a vertex");
        sv = tensor(sv, it->second);
    }
    for (const auto& [a, b] : g.edges) apply_cz(sv, a, b);
    return sv;
}

RunRecord run_pattern_direct(const GraphSpec& g, const Pattern& p, BranchSource& src) {
    validate_computation({g, p});
    std::map<int, Statevector> states;
    for (int v = 0; v < g.num_vertices; ++v) states.emplace(v, plus_state(AngleS(0)));
    Statevector sv = build_graph_state(g, states);

    RunRecord rec{{}, Statevector(1)};
    for (int v : g.measurement_order) {
        const AngleS angle = adapted_angle(p.phi.at(v), rec.outcomes, p.x_dep(v), p.z_dep(v));
        rec.outcomes[v] = measure_rotated(sv, v, angle, +1, src).bit;
    }
    for (int v : g.output_vertices) {
        if (outcome_parity(rec.outcomes, p.x_dep(v))) apply_pauli_x(sv, v);
        if (outcome_parity(rec.outcomes, p.z_dep(v))) apply_pauli_z(sv, v);
    }
    if (!g.measurement_order.empty()) {
        rec.output_state =
            remove_qubits(sv, std::vector<int>(g.measurement_order.begin(),
                                               g.measurement_order.end()));
        // remove_qubits keeps ascending vertex order; remap to output order.
        std::vector<int> ascending = g.output_vertices;
        std::sort(ascending.begin(), ascending.end());
        std::vector<int> new_pos(ascending.size());
        for (std::size_t i = 0; i < ascending.size(); ++i) {
            auto it = std::find(g.output_vertices.begin(), g.output_vertices.end(), ascending[i]);
            new_pos[i] = static_cast<int>(it - g.output_vertices.begin());
        }
        rec.output_state = permute_qubits(rec.output_state, new_pos);
    } else {
        rec.output_state = sv;
    }
    return rec;
}

std::vector<int> measure_output_bits(Statevector& output_state, BranchSource& src) {
    std::vector<int> bits;
    bits.reserve(static_cast<std::size_t>(output_state.num_qubits()));
    for (int q = 0; q < output_state.num_qubits(); ++q)
        bits.push_back(measure_computational(output_state, q, src).bit);
    return bits;
}

std::map<std::string, double> output_distribution(const GraphSpec& g, const Pattern& p) {
    if (g.num_vertices > kEnumerationVertexCap)
        throw SimError("graph too large for exact enumeration");
    return enumerate_branches([&](BranchSource& src) {
        RunRecord rec = run_pattern_direct(g, p, src);
        std::vector<int> bits = measure_output_bits(rec.output_state, src);
        std::string key;
        for (int b : bits) key.push_back(b ? '1' : '0');
        return key;
    });
}

}  // namespace bqc
