#pragma once

#include <array>

#include "metfib/group.hpp"
#include "metfib/metric_space.hpp"

namespace metfib {

// 2-complex on the points of a space: 1-skeleton is complete, filled
// triangles are the triples with zero degeneracy degree.
struct ColineComplex {
	FiniteMetricSpace space;
	std::vector<std::array<int, 3>> triangles; // i < j < k, sorted
};

// Pre: flavor Metric (finite symmetric distances).
ColineComplex coline_complex(const FiniteMetricSpace &x);

// Relator letters are +-(index+1): positive for the generator, negative for
// its inverse. Words are freely reduced.
struct GroupPresentation {
	std::vector<std::string> generators;
	std::vector<std::vector<int>> relators;
};

// Edge-path group of the complex: spanning star at x0, one generator per
// non-tree edge, one relator per filled triangle.
GroupPresentation pi1_presentation(const ColineComplex &c, int x0);

struct Abelianization {
	int free_rank = 0;
	std::vector<BigInt> torsion; // invariant factors > 1, each dividing the next

	bool trivial() const { return free_rank == 0 && torsion.empty(); }
	std::string to_string() const;
};

// Invariant factor decomposition of the relator matrix (Smith normal form).
Abelianization abelianization(const GroupPresentation &p);

enum class Triviality { Trivial, Nontrivial, Unknown };

struct TrivialityResult {
	Triviality verdict = Triviality::Unknown;
	std::string detail;
};

// Decides triviality when it can: nontrivial abelianization is a witness,
// otherwise coset enumeration over the trivial subgroup runs until it closes
// or defines more than work_bound cosets.
TrivialityResult is_trivial_group(const GroupPresentation &p, long work_bound = 100000);

struct LoopClass {
	int basepoint = 0;
	std::vector<int> points; // (x0, ..., x0)
};

// Cheapest insertion/deletion chain from the loop to the constant loop found
// within the bound; an upper bound for the true loop norm. A move inserting
// or deleting point m between u and v weighs d(u,m) + d(m,v) - d(u,v),
// zero when u = v. Insertions never grow a loop beyond search_bound entries;
// returns infinity if no chain was found.
XRational loop_norm_upper_bound(const FiniteMetricSpace &x, const LoopClass &l, int search_bound);

// Conjugation-canonical representatives of generator-image tuples satisfying
// all relators; one per simultaneous-conjugacy class, deterministic order.
std::vector<std::vector<int>> hom_classes_to(const GroupPresentation &p,
                                             const FiniteNormedGroup &g);

} // namespace metfib
