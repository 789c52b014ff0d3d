#include "bqc/pattern.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace bqc {

namespace {
const std::set<int> kEmptyDeps;
}

const std::set<int>& Pattern::x_dep(int v) const {
    auto it = x_deps.find(v);
    return it == x_deps.end() ? kEmptyDeps : it->second;
}

const std::set<int>& Pattern::z_dep(int v) const {
    auto it = z_deps.find(v);
    return it == z_deps.end() ? kEmptyDeps : it->second;
}

void validate_computation(const Computation& comp) {
    validate_graph(comp.graph);
    const auto& g = comp.graph;
    std::map<int, int> rank;  // measurement position; outputs measured "last"
    for (std::size_t i = 0; i < g.measurement_order.size(); ++i)
        rank[g.measurement_order[i]] = static_cast<int>(i);
    const int output_rank = static_cast<int>(g.measurement_order.size());
    for (int v : g.output_vertices) rank[v] = output_rank;

    for (int v : g.measurement_order)
        if (!comp.pattern.phi.count(v)) throw SimError("pattern is missing phi for a vertex");
    for (const auto& [v, a] : comp.pattern.phi) {
        (void)a;
        if (rank.find(v) == rank.end() || rank[v] == output_rank)
            throw SimError("phi given for a non-measured vertex");
    }
    auto check_deps = [&](const std::map<int, std::set<int>>& deps) {
        for (const auto& [v, ds] : deps) {
            if (!rank.count(v)) throw SimError("dependency on unknown vertex");
            for (int d : ds) {
                if (!rank.count(d) || rank[d] == output_rank)
                    throw SimError("dependency vertex is never measured");
                if (rank[d] >= rank[v]) throw SimError("dependency does not precede its vertex");
            }
        }
    };
    check_deps(comp.pattern.x_deps);
    check_deps(comp.pattern.z_deps);
}

int outcome_parity(const std::map<int, int>& outcomes, const std::set<int>& deps) {
    int parity = 0;
    for (int d : deps) {
        auto it = outcomes.find(d);
        if (it == outcomes.end()) throw SimError("missing outcome for a dependency vertex");
        parity ^= it->second & 1;
    }
    return parity;
}

AngleS adapted_angle(AngleS phi, const std::map<int, int>& outcomes, const std::set<int>& x_dep,
                     const std::set<int>& z_dep) {
    const int sx = outcome_parity(outcomes, x_dep);
    const int sz = outcome_parity(outcomes, z_dep);
    return AngleS((sx ? -phi.k() : phi.k()) + 4 * sz);
}

AngleS delta_angle(AngleS theta_eff, AngleS phi_prime, int r) {
    return theta_eff + phi_prime + AngleS(4 * (r & 1));
}

namespace {

// Deps from the flow v -> successor(v): measuring v puts X on its successor
// and Z on the successor's other neighbors.
Computation flow_computation(GraphSpec g, const std::vector<AngleS>& phi,
                             const std::map<int, int>& successor) {
    Computation comp;
    comp.graph = std::move(g);
    if (phi.size() != comp.graph.measurement_order.size())
        throw SimError("need one phi per measured vertex");
    for (std::size_t i = 0; i < phi.size(); ++i)
        comp.pattern.phi[comp.graph.measurement_order[i]] = phi[i];
    for (int u : comp.graph.measurement_order) {
        const int f = successor.at(u);
        comp.pattern.x_deps[f].insert(u);
        for (int w : comp.graph.neighbors(f))
            if (w != u) comp.pattern.z_deps[w].insert(u);
    }
    validate_computation(comp);
    return comp;
}

}  // namespace

Computation linear_cluster_computation(int n, const std::vector<AngleS>& phi) {
    GraphSpec g = linear_cluster(n);
    std::map<int, int> successor;
    for (int i = 0; i + 1 < n; ++i) successor[i] = i + 1;
    return flow_computation(std::move(g), phi, successor);
}

Computation brickwork_computation(int rows, int cols, const std::vector<AngleS>& phi) {
    GraphSpec g = brickwork_graph(rows, cols);
    std::map<int, int> successor;
    for (int v : g.measurement_order) successor[v] = v + rows;  // (r, c) -> (r, c+1)
    return flow_computation(std::move(g), phi, successor);
}

nlohmann::json computation_to_json(const Computation& comp) {
    nlohmann::json j;
    j["vertices"] = comp.graph.num_vertices;
    j["edges"] = nlohmann::json::array();
    for (const auto& [a, b] : comp.graph.edges) j["edges"].push_back({a, b});
    j["order"] = comp.graph.measurement_order;
    j["outputs"] = comp.graph.output_vertices;
    nlohmann::json phi = nlohmann::json::object();
    for (const auto& [v, a] : comp.pattern.phi) phi[std::to_string(v)] = a.k();
    j["phi"] = phi;
    auto deps_json = [](const std::map<int, std::set<int>>& deps) {
        nlohmann::json out = nlohmann::json::object();
        for (const auto& [v, ds] : deps)
            if (!ds.empty()) out[std::to_string(v)] = std::vector<int>(ds.begin(), ds.end());
        return out;
    };
    j["x_deps"] = deps_json(comp.pattern.x_deps);
    j["z_deps"] = deps_json(comp.pattern.z_deps);
    return j;
}

Computation computation_from_json(const nlohmann::json& j) {
    Computation comp;
    comp.graph.num_vertices = j.at("vertices").get<int>();
    for (const auto& e : j.at("edges")) {
        int a = e.at(0).get<int>(), b = e.at(1).get<int>();
        if (a > b) std::swap(a, b);
        comp.graph.edges.emplace_back(a, b);
    }
    std::sort(comp.graph.edges.begin(), comp.graph.edges.end());
    comp.graph.measurement_order = j.at("order").get<std::vector<int>>();
    comp.graph.output_vertices = j.at("outputs").get<std::vector<int>>();
    for (const auto& [key, val] : j.at("phi").items())
        comp.pattern.phi[std::stoi(key)] = AngleS(val.get<int>());
    auto deps_from = [](const nlohmann::json& obj, std::map<int, std::set<int>>& deps) {
        for (const auto& [key, val] : obj.items()) {
            auto list = val.get<std::vector<int>>();
            deps[std::stoi(key)] = std::set<int>(list.begin(), list.end());
        }
    };
    if (j.contains("x_deps")) deps_from(j.at("x_deps"), comp.pattern.x_deps);
    if (j.contains("z_deps")) deps_from(j.at("z_deps"), comp.pattern.z_deps);
    validate_computation(comp);
    return comp;
}

}  // namespace bqc
