#include "metfib/builtins.hpp"

namespace metfib {

static WeightedGraph graph_on(std::vector<std::string> labels,
                              std::vector<std::pair<int, int>> edges) {
	WeightedGraph g;
	g.vertices = std::move(labels);
	for (auto [u, v] : edges)
		g.edges.push_back({u, v, Rational(1)});
	return g;
}

WeightedGraph complete_graph(int n) {
	WeightedGraph g;
	for (int i = 0; i < n; ++i)
		g.vertices.push_back("v" + std::to_string(i + 1));
	for (int i = 0; i < n; ++i)
		for (int j = i + 1; j < n; ++j)
			g.edges.push_back({i, j, Rational(1)});
	return g;
}

WeightedGraph cycle_graph(int n) {
	WeightedGraph g;
	for (int i = 0; i < n; ++i)
		g.vertices.push_back("v" + std::to_string(i + 1));
	for (int i = 0; i < n; ++i)
		g.edges.push_back({i, (i + 1) % n, Rational(1)});
	return g;
}

WeightedGraph path_graph(int n) {
	WeightedGraph g;
	for (int i = 0; i < n; ++i)
		g.vertices.push_back("v" + std::to_string(i + 1));
	for (int i = 0; i + 1 < n; ++i)
		g.edges.push_back({i, i + 1, Rational(1)});
	return g;
}

WeightedGraph complete_bipartite_graph(int m, int n) {
	WeightedGraph g;
	for (int i = 0; i < m; ++i)
		g.vertices.push_back("x" + std::to_string(i + 1));
	for (int j = 0; j < n; ++j)
		g.vertices.push_back("y" + std::to_string(j + 1));
	for (int i = 0; i < m; ++i)
		for (int j = 0; j < n; ++j)
			g.edges.push_back({i, m + j, Rational(1)});
	return g;
}

// a1 a2 b1 b2 c1 c2: fiber edges plus identity matchings on all three base
// edges.
WeightedGraph prism_graph() {
	return graph_on({"a1", "a2", "b1", "b2", "c1", "c2"},
	                {{0, 1}, {2, 3}, {4, 5}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 0}, {5, 1}});
}

// Same but the c-to-a matching is swapped.
WeightedGraph twisted_prism_graph() {
	return graph_on({"a1", "a2", "b1", "b2", "c1", "c2"},
	                {{0, 1}, {2, 3}, {4, 5}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 1}, {5, 0}});
}

MetricFibration k33_fibration() {
	MetricFibration f;
	f.total = shortest_path_metric(twisted_prism_graph());
	f.base = shortest_path_metric(complete_graph(3));
	f.proj = {0, 0, 1, 1, 2, 2};
	return f;
}

FiniteMetricSpace builtin_space(const std::string &name) {
	if (name == "K2")
		return shortest_path_metric(complete_graph(2));
	if (name == "K3")
		return shortest_path_metric(complete_graph(3));
	if (name == "K4")
		return shortest_path_metric(complete_graph(4));
	if (name.size() == 2 && name[0] == 'C' && name[1] >= '3' && name[1] <= '8')
		return shortest_path_metric(cycle_graph(name[1] - '0'));
	if (name == "prism")
		return shortest_path_metric(prism_graph());
	if (name == "K33fib")
		return k33_fibration().total;
	throw Error("unknown builtin space '" + name + "'");
}

static FiniteNormedGroup cyclic_group(int n) {
	FiniteNormedGroup g;
	g.elements.push_back("e");
	for (int i = 1; i < n; ++i)
		g.elements.push_back(i == 1 ? "g" : "g" + std::to_string(i));
	g.table.resize(static_cast<size_t>(n) * n);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			g.table[static_cast<size_t>(i) * n + j] = (i + j) % n;
	for (int i = 0; i < n; ++i)
		g.norm.push_back(XRational(Rational(std::min(i, n - i))));
	g.finalize();
	return g;
}

static FiniteNormedGroup sym3_group() {
	FiniteNormedGroup g;
	g.elements = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
	// images of 0,1,2 under each element
	const int perm[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
	                        {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
	g.table.resize(36);
	for (int a = 0; a < 6; ++a)
		for (int b = 0; b < 6; ++b) {
			int comp[3];
			for (int x = 0; x < 3; ++x)
				comp[x] = perm[a][perm[b][x]];
			int idx = -1;
			for (int c = 0; c < 6; ++c)
				if (comp[0] == perm[c][0] && comp[1] == perm[c][1] &&
				    comp[2] == perm[c][2])
					idx = c;
			g.table[static_cast<size_t>(a) * 6 + b] = idx;
		}
	for (int a = 0; a < 6; ++a)
		g.norm.push_back(XRational(Rational(a == 0 ? 0 : 1)));
	g.finalize();
	return g;
}

FiniteNormedGroup builtin_group(const std::string &name) {
	if (name == "Z2")
		return cyclic_group(2);
	if (name == "Z3")
		return cyclic_group(3);
	if (name == "Z4")
		return cyclic_group(4);
	if (name == "S3")
		return sym3_group();
	throw Error("unknown builtin group '" + name + "'");
}

const std::vector<std::string> &builtin_space_names() {
	static const std::vector<std::string> names = {"K2", "K3", "K4", "C3", "C4", "C5",
	                                               "C6", "C7", "C8", "prism", "K33fib"};
	return names;
}

const std::vector<std::string> &builtin_group_names() {
	static const std::vector<std::string> names = {"Z2", "Z3", "Z4", "S3"};
	return names;
}

} // namespace metfib
