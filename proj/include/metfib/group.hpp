#pragma once

#include "metfib/metric_space.hpp"

namespace metfib {

// Finite group given by a Cayley table, carrying a norm that is invariant
// under conjugation and inversion. Distances are recovered as
// d(g,h) = |h^-1 g|; inf norms are allowed (extended groups).
struct FiniteNormedGroup {
	std::vector<std::string> elements;
	std::vector<int> table; // table[a*n+b] = index of a*b
	std::vector<XRational> norm;
	int unit = -1;           // filled by finalize()
	std::vector<int> inverse;

	int n() const { return static_cast<int>(elements.size()); }
	int mul(int a, int b) const { return table[static_cast<size_t>(a) * elements.size() + b]; }
	int mul(int a, int b, int c) const { return mul(mul(a, b), c); }
	int inv(int a) const { return inverse[a]; }
	int index_of(const std::string &name) const;

	// Locates the unit and inverses; returns false if the table has none.
	bool finalize();
};

std::optional<Violation> validate_group(const FiniteNormedGroup &g);

// d(g_i, g_j) = norm(g_j^-1 g_i), labels are the element names.
FiniteMetricSpace metric_from_norm(const FiniteNormedGroup &g);

// Checks that the distance matrix on the group's elements is invariant under
// both translations and inversion, then reads the norm off the unit row.
// Returns the group or the violated invariance with witnesses.
struct NormFromMetricResult {
	std::optional<FiniteNormedGroup> group;
	std::optional<Violation> violation;
};
NormFromMetricResult norm_from_metric(const std::vector<std::string> &elements,
                                      const std::vector<int> &table,
                                      const FiniteMetricSpace &space);

// Isometry group of a finite space, with the sup metric
// d(f,g) = max_y d(f(y), g(y)). Elements are ordered lexicographically by
// their image words, which puts the identity first.
struct AutGroupResult {
	FiniteNormedGroup group;
	std::vector<std::vector<int>> perms; // perms[i][y] = image of point y
};
AutGroupResult aut_group(const FiniteMetricSpace &y);

// Orbits of tuples under simultaneous conjugation t_i -> h^-1 t_i h.
// Classes are sorted by their canonical (lexicographically least) member.
struct TuplePartition {
	std::vector<std::vector<int>> classes; // indices into the input list
	std::vector<std::vector<int>> reps;    // canonical tuple per class
};
TuplePartition conjugacy_partition(const FiniteNormedGroup &g,
                                   const std::vector<std::vector<int>> &tuples);

std::vector<int> conjugate_tuple(const FiniteNormedGroup &g, const std::vector<int> &t, int h);
std::vector<int> canonical_conjugate(const FiniteNormedGroup &g, const std::vector<int> &t);

inline bool same_group(const FiniteNormedGroup &a, const FiniteNormedGroup &b) {
	return a.elements == b.elements && a.table == b.table && a.norm == b.norm;
}

} // namespace metfib
