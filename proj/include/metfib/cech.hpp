#pragma once

#include "metfib/principal.hpp"

namespace metfib {

// Transition data indexed by point triples of the base, subject to
// a(i,j,k) * a(k,j,l) = a(i,j,l) and a norm bound on each triple by its
// degeneracy degree.
struct Cocycle {
	FiniteMetricSpace base;
	FiniteNormedGroup group;
	std::vector<int> a; // flat i-major n^3 table

	int at(int i, int j, int k) const {
		int n = base.n();
		return a[(static_cast<size_t>(i) * n + j) * n + k];
	}
	int &at(int i, int j, int k) {
		int n = base.n();
		return a[(static_cast<size_t>(i) * n + j) * n + k];
	}
};

std::optional<Violation> validate_cocycle(const Cocycle &c);

// f[i][j] symmetric with a(i,j,k) * f[j][k] = f[i][j] * b(i,j,k) throughout.
struct CocycleMorphism {
	Cocycle source;
	Cocycle target;
	std::vector<std::vector<int>> f;
};

std::optional<Violation> validate_cocycle_morphism(const CocycleMorphism &m);

CocycleMorphism cocycle_identity(const Cocycle &c);

// Composite of f then g; (g after f)[i][j] = f[i][j] * g[i][j].
CocycleMorphism cocycle_compose(const CocycleMorphism &f, const CocycleMorphism &g);

// First morphism between the cocycles in deterministic order, if any. The
// value at (0,0) propagates to every other entry, so the search tries each
// group element there and verifies the full relation set.
std::optional<CocycleMorphism> find_cocycle_morphism(const Cocycle &src, const Cocycle &dst);

// Pasting: total points over x_j are group coordinates in the chart of the
// reference pair (r(j), j), r(j) the smallest index other than j. Output
// passes validate_torsor for every valid cocycle.
Torsor beta(const Cocycle &c);

// One pair of section points per ordered base pair: pairs[i][j] lies over
// (x_i, x_j) with the second component the lift of the first.
struct LocalSection {
	std::vector<std::vector<std::pair<int, int>>> pairs;
};

// Canonical section: over each pair the label-least point of the fiber on
// the side of the smaller index, completed by lifts.
LocalSection local_section(const Torsor &t);

std::optional<Violation> validate_local_section(const Torsor &t, const LocalSection &s);

// a(i,j,k) = the unique g moving pairs[i][j].second to pairs[j][k].first.
Cocycle alpha(const Torsor &t, const LocalSection &s);

// Isomorphism-class representatives in normalized form: a(0,j,k) is the unit
// unless 1 <= k < j, the remaining a(0,j,k) are the free data, and every other
// value follows from a(i,j,k) = a(0,j,i)^-1 a(0,j,k). Trivial class first.
// Pre: base valid, Metric, connected; group valid.
std::vector<Cocycle> enumerate_cocycle_classes(const FiniteMetricSpace &base,
                                               const FiniteNormedGroup &group);

} // namespace metfib
