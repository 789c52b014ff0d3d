#pragma once

#include <utility>
#include <vector>

#include "bqc/error.hpp"

namespace bqc {

// Open graph for MBQC: measured vertices in measurement_order, outputs held.
struct GraphSpec {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;  // i < j, sorted, unique
    std::vector<int> measurement_order;
    std::vector<int> output_vertices;

    std::vector<int> neighbors(int v) const;
    bool has_edge(int a, int b) const;
};

void validate_graph(const GraphSpec& g);

// Path graph on n vertices, measured left to right, last vertex is output.
GraphSpec linear_cluster(int n);

// Brickwork layout: vertex id = col*rows + row, horizontal edges along every
// row, vertical brick edges at columns 3 and 7 (mod 8, 1-based) on odd/even
// rows respectively. Measurement order runs column by column so every flow
// dependency precedes its dependent; the last column is the output.
// rows == 1 degenerates to a linear cluster. For rows >= 2 the brick pattern
// requires cols == 1 or 5 (mod 8).
GraphSpec brickwork_graph(int rows, int cols);

}  // namespace bqc
