#pragma once

#include "metfib/fibration.hpp"
#include "metfib/group.hpp"
#include "metfib/metric_space.hpp"

#include <string>
#include <vector>

namespace metfib {

// Unit-weight graphs with labels v1..vn (parts x1.., y1.. for the bipartite
// one, a/b/c pairs for the prisms).
WeightedGraph complete_graph(int n);
WeightedGraph cycle_graph(int n);
WeightedGraph path_graph(int n);
WeightedGraph complete_bipartite_graph(int m, int n);
WeightedGraph prism_graph();
WeightedGraph twisted_prism_graph();

// The twisted prism's shortest-path metric projected onto K3: two points
// over each base vertex, matchings between adjacent fibers with a single
// twist, which makes the total space the complete bipartite graph on
// {a1,c1,b2} and {a2,b1,c2}.
MetricFibration k33_fibration();

// Shortest-path metric for a builtin name: K2 K3 K4, C3..C8, prism,
// K33fib (its total space). Throws Error on unknown names.
FiniteMetricSpace builtin_space(const std::string &name);

// Z2 Z3 Z4 S3. Cyclic groups use powers e, g, g2, ... with the cycle
// metric norm; S3 uses cycle names with norm 1 off the unit.
FiniteNormedGroup builtin_group(const std::string &name);

const std::vector<std::string> &builtin_space_names();
const std::vector<std::string> &builtin_group_names();

} // namespace metfib
