#pragma once

#include "metfib/rational.hpp"

#include <array>
#include <optional>
#include <vector>

namespace metfib {

// Base class for errors raised by library operations (as opposed to
// validation results, which are returned as Violation values).
struct Error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Precondition of an operation not met (e.g. extended base where a connected
// metric one is required). CLI maps this to exit code 1.
struct PreconditionError : Error {
	using Error::Error;
};

// A broken axiom found by a validator, with the witnessing points/elements.
struct Violation {
	std::string rule;
	std::vector<std::string> witness;
	std::string detail;

	std::string message() const;
};

enum class Flavor { Metric, QuasiMetric, ExtendedMetric };

std::string flavor_name(Flavor f);

// Finite space with a distance matrix. "Metric" demands positive finite
// off-diagonal entries, "QuasiMetric" allows zero distance between distinct
// points, "ExtendedMetric" additionally allows inf. All flavors demand
// symmetry, zero diagonal and the triangle inequality.
struct FiniteMetricSpace {
	std::vector<std::string> labels;
	std::vector<XRational> dist; // n*n, row-major
	Flavor flavor = Flavor::Metric;

	int n() const { return static_cast<int>(labels.size()); }
	const XRational &d(int i, int j) const { return dist[static_cast<size_t>(i) * labels.size() + j]; }
	XRational &d(int i, int j) { return dist[static_cast<size_t>(i) * labels.size() + j]; }
	int index_of(const std::string &label) const;
};

struct WeightedGraph {
	struct Edge {
		int u, v;
		Rational w;
	};
	std::vector<std::string> vertices;
	std::vector<Edge> edges;

	int add_vertex(const std::string &name);
	void add_edge(int u, int v, Rational w);
	int index_of(const std::string &name) const;
};

// Checks the axioms for the declared flavor; first broken one wins.
std::optional<Violation> validate_space(const FiniteMetricSpace &x);

// Strictest flavor the entries satisfy (assuming the shared axioms hold).
Flavor infer_flavor(const std::vector<XRational> &dist, int n);

// All-pairs shortest paths. Unreachable pairs become inf and the flavor
// ExtendedMetric; zero-weight edges can produce QuasiMetric.
FiniteMetricSpace shortest_path_metric(const WeightedGraph &g);

struct QuotientResult {
	FiniteMetricSpace space;
	std::vector<int> point_map; // old index -> new index
};

// Identifies points at distance zero. Representative of each class is its
// smallest member; labels follow representatives.
QuotientResult kolmogorov_quotient(const FiniteMetricSpace &x);

// d((a,b),(a',b')) = d(a,a') + d(b,b'), points ordered a-major. Labels are
// joined as "a|b" with '|' and '\' escaped in the parts.
FiniteMetricSpace l1_product(const FiniteMetricSpace &a, const FiniteMetricSpace &b);

std::string join_labels(const std::string &a, const std::string &b);

WeightedGraph cartesian_product_graph(const WeightedGraph &g, const WeightedGraph &h);

// min over cyclic orderings of d(i,j) + d(j,k) - d(i,k); zero when two of the
// points coincide. Throws PreconditionError if any pairwise distance is inf.
XRational degeneracy_degree(const FiniteMetricSpace &x, int i, int j, int k);

// First distance-preserving bijection a -> b in lexicographic image order,
// found by backtracking with pairwise pruning.
std::optional<std::vector<int>> find_isometry(const FiniteMetricSpace &a, const FiniteMetricSpace &b);

bool connected(const FiniteMetricSpace &x); // no inf entries

inline bool same_space(const FiniteMetricSpace &a, const FiniteMetricSpace &b) {
	return a.labels == b.labels && a.dist == b.dist;
}

} // namespace metfib
