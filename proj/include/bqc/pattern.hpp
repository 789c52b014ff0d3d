#pragma once

#include <map>
#include <set>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bqc/angles.hpp"
#include "bqc/graph.hpp"

namespace bqc {

// Measurement pattern over a graph: target angle per measured vertex plus
// the X/Z dependency sets that adapt angles (and correct outputs).
struct Pattern {
    std::map<int, AngleS> phi;            // measured vertices only
    std::map<int, std::set<int>> x_deps;  // may also carry output corrections
    std::map<int, std::set<int>> z_deps;

    const std::set<int>& x_dep(int v) const;
    const std::set<int>& z_dep(int v) const;
};

struct Computation {
    GraphSpec graph;
    Pattern pattern;
};

void validate_computation(const Computation& comp);

// phi' = (-1)^{sX} phi + sZ*pi, with sX/sZ the outcome parities over the
// dependency sets. Every dependency must already have a recorded outcome.
AngleS adapted_angle(AngleS phi, const std::map<int, int>& outcomes, const std::set<int>& x_dep,
                     const std::set<int>& z_dep);

// delta = theta + phi' + r*pi (the blinded measurement angle of S4).
AngleS delta_angle(AngleS theta_eff, AngleS phi_prime, int r);

int outcome_parity(const std::map<int, int>& outcomes, const std::set<int>& deps);

// Standard-flow computations used by tests and the CLI: successor of each
// measured vertex is its right neighbor, X on the successor, Z on the
// successor's other neighbors.
Computation linear_cluster_computation(int n, const std::vector<AngleS>& phi);
Computation brickwork_computation(int rows, int cols, const std::vector<AngleS>& phi);

nlohmann::json computation_to_json(const Computation& comp);
Computation computation_from_json(const nlohmann::json& j);

}  // namespace bqc
