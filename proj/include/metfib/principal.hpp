#pragma once

#include <map>

#include "metfib/fibration.hpp"
#include "metfib/group.hpp"

namespace metfib {

// Transition data f[x][y] in G describing left-multiplication transports
// between copies of the group sitting over each base point.
struct PrincipalAction {
	FiniteMetricSpace base;
	FiniteNormedGroup group;
	std::vector<std::vector<int>> f;
};

// A fibration together with a fiberwise free transitive isometric right
// G-action; act[eps][g] is the image total point of eps under g.
struct Torsor {
	MetricFibration fib;
	FiniteNormedGroup group;
	std::vector<std::vector<int>> act;
};

// Basepoint transports normalized so every transport out of the basepoint is
// the unit, plus a cache of evaluated loops.
struct HolonomyDatum {
	int basepoint = 0;
	PrincipalAction normalized;
	std::map<std::vector<int>, int> cache;

	int eval(const std::vector<int> &loop);
};

std::optional<Violation> validate_principal(const PrincipalAction &p);

// Fibers are the group metric space; transports act by left multiplication.
MetricAction principal_to_action(const PrincipalAction &p);

// Grothendieck total of principal_to_action with the right action
// (x, a) * g = (x, a * g).
Torsor principal_to_torsor(const PrincipalAction &p);

std::optional<Violation> validate_torsor(const Torsor &t);

// map sends total points of src to total points of dst over the same base
// with the same group. Checks fiber preservation, equivariance and the
// 1-Lipschitz bound, then that the map is in fact a bijective isometry,
// which valid torsors force.
std::optional<Violation> validate_torsor_morphism(const Torsor &src, const Torsor &dst,
                                                  const std::vector<int> &map);

// f_hat(x, x') = f(x', x0) * f(x, x') * f(x0, x); transports touching x0
// become the unit.
PrincipalAction gauge_normalize(const PrincipalAction &p, int x0);

// Isomorphism-class representatives of principal actions of the group over
// the base: gauge-normalized assignments filtered by the deficit bound and
// partitioned by simultaneous conjugation. Deterministic order, the trivial
// class first, each representative conjugation-canonical.
// Pre: base valid, flavor Metric, connected; group valid.
std::vector<PrincipalAction> enumerate_principal(const FiniteMetricSpace &base,
                                                 const FiniteNormedGroup &group);

// Ordered transport product around a loop (x0, x1, ..., xn, x0):
// f(x1,x0) * f(x2,x1) * ... * f(x0,xn), left to right.
int holonomy(const PrincipalAction &p, int x0, const std::vector<int> &loop);

HolonomyDatum make_holonomy_datum(const PrincipalAction &p, int x0);

// The action with all fibers a fixed space and transports the isometries
// named by a principal action over its automorphism group.
MetricAction associated_action(const PrincipalAction &p, const AutGroupResult &aut,
                               const FiniteMetricSpace &fiber);

// Fibration classes over the base with every fiber isometric to the given
// space, via principal actions of the fiber's automorphism group. Trivial
// class first; representatives pairwise non-isomorphic (self-checked).
std::vector<MetricFibration> classify_fibrations(const FiniteMetricSpace &base,
                                                 const FiniteMetricSpace &fiber);

} // namespace metfib
