#include "bqc/graph.hpp"

#include <algorithm>
#include <set>

namespace bqc {

std::vector<int> GraphSpec::neighbors(int v) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool GraphSpec::has_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

void validate_graph(const GraphSpec& g) {
    if (g.num_vertices < 1) throw SimError("graph needs at least one vertex");
    std::set<std::pair<int, int>> seen;
    for (const auto& [a, b] : g.edges) {
        if (a == b) throw SimError("self-loop edge");
        if (a < 0 || b < 0 || a >= g.num_vertices || b >= g.num_vertices)
            throw SimError("edge endpoint out of range");
        if (a > b) throw SimError("edges must be stored as (low, high)");
        if (!seen.insert({a, b}).second) throw SimError("duplicate edge");
    }
    std::vector<int> count(static_cast<std::size_t>(g.num_vertices), 0);
    for (int v : g.measurement_order) {
        if (v < 0 || v >= g.num_vertices) throw SimError("measurement order vertex out of range");
        ++count[static_cast<std::size_t>(v)];
    }
    for (int v : g.output_vertices) {
        if (v < 0 || v >= g.num_vertices) throw SimError("output vertex out of range");
        ++count[static_cast<std::size_t>(v)];
    }
    for (int c : count)
        if (c != 1) throw SimError("measurement order and outputs must partition the vertices");
}

GraphSpec linear_cluster(int n) {
    if (n < 1) throw SimError("linear cluster needs at least one vertex");
    GraphSpec g;
    g.num_vertices = n;
    for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
    for (int i = 0; i + 1 < n; ++i) g.measurement_order.push_back(i);
    g.output_vertices.push_back(n - 1);
    return g;
}

GraphSpec brickwork_graph(int rows, int cols) {
    if (rows < 1 || cols < 1) throw SimError("brickwork dimensions must be positive");
    if (rows >= 2 && cols % 8 != 1 && cols % 8 != 5)
        throw SimError("brickwork with rows >= 2 needs cols == 1 or 5 (mod 8)");
    GraphSpec g;
    g.num_vertices = rows * cols;
    auto id = [rows](int r, int c) { return c * rows + r; };  // r, c are 0-based

    for (int r = 0; r < rows; ++r)
        for (int c = 0; c + 1 < cols; ++c) g.edges.emplace_back(id(r, c), id(r, c + 1));

    // Bricks, 1-based rule: column j = 3 (mod 8) pairs odd rows i with i+1 at
    // columns j and j+2; column j = 7 (mod 8) does the same for even rows.
    for (int j = 1; j + 2 <= cols; ++j) {
        const int rem = j % 8;
        if (rem != 3 && rem != 7) continue;
        for (int i = 1; i + 1 <= rows; ++i) {
            if ((rem == 3 && i % 2 == 1) || (rem == 7 && i % 2 == 0)) {
                g.edges.emplace_back(id(i - 1, j - 1), id(i, j - 1));
                g.edges.emplace_back(id(i - 1, j + 1), id(i, j + 1));
            }
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());

    for (int c = 0; c + 1 < cols; ++c)
        for (int r = 0; r < rows; ++r) g.measurement_order.push_back(id(r, c));
    for (int r = 0; r < rows; ++r) g.output_vertices.push_back(id(r, cols - 1));
    validate_graph(g);
    return g;
}

}  // namespace bqc
