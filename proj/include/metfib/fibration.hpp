#pragma once

#include "metfib/metric_space.hpp"

namespace metfib {

// One fiber space per base point, plus a transport bijection for every
// ordered pair. transport[x][x'] maps fiber-x point indices to fiber-x'
// point indices; transport[x][x] is the identity. Validity means every
// transport is an isometry, opposite transports are mutually inverse, and
// the composite F_{x'x''} F_{xx'} moves points of fiber x'' by at most the
// triangle deficit d(x,x') + d(x',x'') - d(x,x'').
struct MetricAction {
	FiniteMetricSpace base;
	std::vector<FiniteMetricSpace> fibers;
	std::vector<std::vector<std::vector<int>>> transport;
};

// A space over a base: total space, base space and point projection.
struct MetricFibration {
	FiniteMetricSpace total;
	FiniteMetricSpace base;
	std::vector<int> proj; // total index -> base index
};

std::optional<Violation> validate_action(const MetricAction &a);

// Total space on pairs (x, a), labeled "x|a", with
// d((x,a),(x',b)) = d_X(x,x') + d_{F x'}(F_{xx'} a, b).
// Points are ordered base-point-major. Pre: valid action.
MetricFibration grothendieck(const MetricAction &a);

// Checks the projection is 1-Lipschitz and that every point has a unique
// lift into every fiber: eps_x with d(eps, eps_x) = d(pi eps, x) and
// d(eps, eps') = d(eps, eps_x) + d(eps_x, eps') for all eps' over x.
// Pairs with d(pi eps, x) = inf are exempt (nothing can reach across).
std::optional<Violation> validate_fibration(const MetricFibration &f);

// The unique lift of total point eps into the fiber over x.
// Pre: valid fibration, d(pi eps, x) finite. Throws PreconditionError if no
// candidate qualifies.
int lift(const MetricFibration &f, int eps, int x);

// Recovers the action: fibers are the induced subspaces (points in total
// order), transports are given by lifting. Pre: valid fibration with a
// connected base and nonempty fibers.
MetricAction action_from_fibration(const MetricFibration &f);

// First isometry between total spaces commuting with the projections, found
// by per-fiber backtracking in point order. The bases must be identical
// (same labels, same matrix). nullopt if none exists.
std::optional<std::vector<int>> find_fibration_isomorphism(const MetricFibration &f,
                                                           const MetricFibration &g);

// Conjugates every transport into the fiber over x0:
// new F_{xx'} = F_{x'x0} F_{xx'} F_{x0x}, every new fiber is fiber(x0).
MetricAction hat_normalize(const MetricAction &a, int x0);

// Whether f is isomorphic over the base to the constant fibration on its
// first fiber. Empty total space counts as trivial. Pre: connected base.
bool is_trivial(const MetricFibration &f);

// theta[x] maps fiber-x points of src to fiber-x points of dst; checked for
// 1-Lipschitz components and naturality with the transports.
std::optional<Violation> validate_transformation(const MetricAction &src, const MetricAction &dst,
                                                 const std::vector<std::vector<int>> &theta);

// As above, but demanding bijective isometries per fiber.
std::optional<Violation> validate_action_isomorphism(const MetricAction &src, const MetricAction &dst,
                                                     const std::vector<std::vector<int>> &theta);

// map[eps] is a total point of dst; checked 1-Lipschitz and fiber-preserving.
std::optional<Violation> validate_fibration_morphism(const MetricFibration &src,
                                                     const MetricFibration &dst,
                                                     const std::vector<int> &map);

std::vector<int> compose_maps(const std::vector<int> &first, const std::vector<int> &then);
std::vector<int> inverse_map(const std::vector<int> &bij);

} // namespace metfib
