#include "metfib/principal.hpp"

#include <algorithm>

namespace metfib {

std::optional<Violation> validate_principal(const PrincipalAction &p) {
	if (auto v = validate_space(p.base)) {
		v->rule = "base/" + v->rule;
		return v;
	}
	if (auto v = validate_group(p.group)) {
		v->rule = "group/" + v->rule;
		return v;
	}
	int n = p.base.n();
	if (static_cast<int>(p.f.size()) != n)
		return Violation{"shape", {}, "transition table has wrong shape"};
	for (int x = 0; x < n; ++x) {
		if (static_cast<int>(p.f[x].size()) != n)
			return Violation{"shape", {p.base.labels[x]}, "transition row has wrong shape"};
		for (int g : p.f[x])
			if (g < 0 || g >= p.group.n())
				return Violation{"shape", {p.base.labels[x]}, "group element out of range"};
	}
	for (int x = 0; x < n; ++x)
		if (p.f[x][x] != p.group.unit)
			return Violation{"unit", {p.base.labels[x]}, "f(x,x) is not the unit"};
	for (int x = 0; x < n; ++x)
		for (int y = 0; y < n; ++y)
			if (p.f[y][x] != p.group.inv(p.f[x][y]))
				return Violation{"inverse-symmetry", {p.base.labels[x], p.base.labels[y]},
				                 "f(x',x) differs from f(x,x')^-1"};
	// Unit and inverse symmetry make all six orderings of a triple give
	// conjugate or inverse composites, so one norm check against the
	// minimal slack covers them.
	for (int i = 0; i < n; ++i)
		for (int j = i + 1; j < n; ++j)
			for (int k = j + 1; k < n; ++k) {
				if (p.base.d(i, j).is_inf() || p.base.d(j, k).is_inf() ||
				    p.base.d(i, k).is_inf())
					continue;
				int c = p.group.mul(p.group.inv(p.f[i][k]), p.f[j][k], p.f[i][j]);
				XRational slack = degeneracy_degree(p.base, i, j, k);
				if (p.group.norm[c] > slack)
					return Violation{"deficit",
					                 {p.base.labels[i], p.base.labels[j], p.base.labels[k]},
					                 to_string(p.group.norm[c]) + " > " + to_string(slack)};
			}
	return std::nullopt;
}

MetricAction principal_to_action(const PrincipalAction &p) {
	int n = p.base.n();
	MetricAction a;
	a.base = p.base;
	a.fibers.assign(n, metric_from_norm(p.group));
	a.transport.assign(n, std::vector<std::vector<int>>(n));
	for (int x = 0; x < n; ++x)
		for (int y = 0; y < n; ++y) {
			auto &t = a.transport[x][y];
			t.resize(p.group.n());
			for (int g = 0; g < p.group.n(); ++g)
				t[g] = p.group.mul(p.f[x][y], g);
		}
	return a;
}

Torsor principal_to_torsor(const PrincipalAction &p) {
	Torsor t;
	t.fib = grothendieck(principal_to_action(p));
	t.group = p.group;
	int m = p.group.n();
	t.act.resize(t.fib.total.labels.size());
	for (size_t e = 0; e < t.act.size(); ++e) {
		int x = static_cast<int>(e) / m, a = static_cast<int>(e) % m;
		t.act[e].resize(m);
		for (int g = 0; g < m; ++g)
			t.act[e][g] = x * m + p.group.mul(a, g);
	}
	return t;
}

std::optional<Violation> validate_torsor(const Torsor &t) {
	if (auto v = validate_fibration(t.fib)) {
		v->rule = "fibration/" + v->rule;
		return v;
	}
	if (auto v = validate_group(t.group)) {
		v->rule = "group/" + v->rule;
		return v;
	}
	int m = t.fib.total.n(), k = t.group.n();
	const auto &lab = t.fib.total.labels;
	if (static_cast<int>(t.act.size()) != m)
		return Violation{"action-shape", {}, "one action row per total point required"};
	for (int e = 0; e < m; ++e) {
		if (static_cast<int>(t.act[e].size()) != k)
			return Violation{"action-shape", {lab[e]}, "action row has wrong length"};
		for (int v : t.act[e])
			if (v < 0 || v >= m)
				return Violation{"action-shape", {lab[e]}, "action image out of range"};
	}
	for (int e = 0; e < m; ++e)
		if (t.act[e][t.group.unit] != e)
			return Violation{"action-unit", {lab[e]}, "unit does not act as identity"};
	for (int e = 0; e < m; ++e)
		for (int g = 0; g < k; ++g)
			for (int h = 0; h < k; ++h)
				if (t.act[t.act[e][g]][h] != t.act[e][t.group.mul(g, h)])
					return Violation{"action-compat",
					                 {lab[e], t.group.elements[g], t.group.elements[h]},
					                 "(eps g) h differs from eps (gh)"};
	for (int e = 0; e < m; ++e)
		for (int g = 0; g < k; ++g)
			if (t.fib.proj[t.act[e][g]] != t.fib.proj[e])
				return Violation{"fiber-preservation", {lab[e], t.group.elements[g]},
				                 "action leaves the fiber"};
	for (int g = 0; g < k; ++g)
		for (int e = 0; e < m; ++e)
			for (int e2 = 0; e2 < m; ++e2)
				if (!(t.fib.total.d(t.act[e][g], t.act[e2][g]) == t.fib.total.d(e, e2)))
					return Violation{"action-isometry",
					                 {lab[e], lab[e2], t.group.elements[g]},
					                 "action changes a distance"};
	std::vector<int> fiber_size(t.fib.base.n(), 0);
	for (int e = 0; e < m; ++e)
		++fiber_size[t.fib.proj[e]];
	for (int x = 0; x < t.fib.base.n(); ++x)
		if (fiber_size[x] != k)
			return Violation{"fiber-size", {t.fib.base.labels[x]},
			                 "fiber size differs from group order"};
	for (int e = 0; e < m; ++e)
		for (int g = 0; g < k; ++g)
			for (int h = g + 1; h < k; ++h)
				if (t.act[e][g] == t.act[e][h])
					return Violation{"freeness",
					                 {lab[e], t.group.elements[g], t.group.elements[h]},
					                 "two elements move a point identically"};
	for (int e = 0; e < m; ++e)
		for (int g = 0; g < k; ++g)
			if (!(t.fib.total.d(e, t.act[e][g]) == t.group.norm[g]))
				return Violation{"norm-agreement", {lab[e], t.group.elements[g]},
				                 "d(eps, eps g) differs from the norm"};
	// d(eps, eps_x g) = d(pi eps, x) + |g| for the lift eps_x, and lifting
	// commutes with the action.
	for (int e = 0; e < m; ++e)
		for (int x = 0; x < t.fib.base.n(); ++x) {
			if (t.fib.base.d(t.fib.proj[e], x).is_inf())
				continue;
			int ex = lift(t.fib, e, x);
			for (int g = 0; g < k; ++g) {
				if (!(t.fib.total.d(e, t.act[ex][g]) ==
				      t.fib.base.d(t.fib.proj[e], x) + t.group.norm[g]))
					return Violation{"lift-norm", {lab[e], t.fib.base.labels[x], t.group.elements[g]},
					                 "d(eps, eps_x g) is not d(pi eps, x) + |g|"};
				if (lift(t.fib, t.act[e][g], x) != t.act[ex][g])
					return Violation{"lift-equivariance",
					                 {lab[e], t.fib.base.labels[x], t.group.elements[g]},
					                 "lifting does not commute with the action"};
			}
		}
	return std::nullopt;
}

std::optional<Violation> validate_torsor_morphism(const Torsor &src, const Torsor &dst,
                                                  const std::vector<int> &map) {
	if (!same_group(src.group, dst.group))
		return Violation{"group-mismatch", {}, "torsor morphisms need one group"};
	if (auto v = validate_fibration_morphism(src.fib, dst.fib, map))
		return v;
	for (int e = 0; e < src.fib.total.n(); ++e)
		for (int g = 0; g < src.group.n(); ++g)
			if (map[src.act[e][g]] != dst.act[map[e]][g])
				return Violation{"equivariance",
				                 {src.fib.total.labels[e], src.group.elements[g]},
				                 "map does not commute with the action"};
	// Valid torsors admit only bijective isometric morphisms; anything else
	// here means one of the inputs is broken.
	std::vector<bool> hit(dst.fib.total.n(), false);
	for (int v : map) {
		if (hit[v])
			return Violation{"rigidity", {dst.fib.total.labels[v]}, "morphism is not injective"};
		hit[v] = true;
	}
	if (src.fib.total.n() != dst.fib.total.n())
		return Violation{"rigidity", {}, "total sizes differ"};
	for (int e = 0; e < src.fib.total.n(); ++e)
		for (int e2 = 0; e2 < src.fib.total.n(); ++e2)
			if (!(dst.fib.total.d(map[e], map[e2]) == src.fib.total.d(e, e2)))
				return Violation{"rigidity", {src.fib.total.labels[e], src.fib.total.labels[e2]},
				                 "morphism shrinks a distance"};
	return std::nullopt;
}

PrincipalAction gauge_normalize(const PrincipalAction &p, int x0) {
	PrincipalAction out = p;
	int n = p.base.n();
	for (int x = 0; x < n; ++x)
		for (int y = 0; y < n; ++y)
			out.f[x][y] = p.group.mul(p.f[y][x0], p.f[x][y], p.f[x0][x]);
	return out;
}

// Free variables of a gauge-normalized assignment: f(p,q) for 1 <= p < q,
// listed q-major so every triple is complete as soon as its last pair is
// assigned.
static std::vector<std::pair<int, int>> free_pairs(int n) {
	std::vector<std::pair<int, int>> out;
	for (int q = 2; q < n; ++q)
		for (int p = 1; p < q; ++p)
			out.emplace_back(p, q);
	return out;
}

struct PrincipalSearch {
	const FiniteMetricSpace &base;
	const FiniteNormedGroup &group;
	std::vector<std::pair<int, int>> pairs;
	std::vector<std::vector<int>> candidates;
	std::vector<int> assign;
	std::vector<std::vector<int>> at; // at[p][q] = position in pairs, -1 otherwise
	std::vector<std::vector<int>> found;

	void run(size_t depth) {
		if (depth == pairs.size()) {
			found.push_back(assign);
			return;
		}
		auto [p, q] = pairs[depth];
		for (int g : candidates[depth]) {
			bool ok = true;
			for (int i = 1; i < p && ok; ++i) {
				int c = group.mul(group.inv(assign[at[i][q]]), g, assign[at[i][p]]);
				if (group.norm[c] > degeneracy_degree(base, i, p, q))
					ok = false;
			}
			if (!ok)
				continue;
			assign[depth] = g;
			run(depth + 1);
		}
	}
};

std::vector<PrincipalAction> enumerate_principal(const FiniteMetricSpace &base,
                                                 const FiniteNormedGroup &group) {
	if (auto v = validate_space(base))
		throw PreconditionError("invalid base: " + v->message());
	if (base.flavor != Flavor::Metric)
		throw PreconditionError("principal enumeration needs a Metric base");
	if (!connected(base))
		throw PreconditionError("principal enumeration needs a connected base");
	if (auto v = validate_group(group))
		throw PreconditionError("invalid group: " + v->message());

	int n = base.n();
	PrincipalSearch s{base, group, free_pairs(n), {}, {}, {}, {}};
	s.candidates.resize(s.pairs.size());
	s.at.assign(n, std::vector<int>(n, -1));
	for (size_t i = 0; i < s.pairs.size(); ++i) {
		auto [p, q] = s.pairs[i];
		s.at[p][q] = static_cast<int>(i);
		XRational cap = degeneracy_degree(base, 0, p, q);
		for (int g = 0; g < group.n(); ++g)
			if (group.norm[g] <= cap)
				s.candidates[i].push_back(g);
	}
	s.assign.resize(s.pairs.size());
	s.run(0);

	TuplePartition part = conjugacy_partition(group, s.found);
	std::vector<std::vector<int>> reps = part.reps;
	std::vector<int> trivial(s.pairs.size(), group.unit);
	auto it = std::find(reps.begin(), reps.end(), trivial);
	if (it != reps.end())
		std::rotate(reps.begin(), it, it + 1);

	std::vector<PrincipalAction> out;
	for (const auto &rep : reps) {
		PrincipalAction p;
		p.base = base;
		p.group = group;
		p.f.assign(n, std::vector<int>(n, group.unit));
		for (size_t i = 0; i < s.pairs.size(); ++i) {
			auto [a, b] = s.pairs[i];
			p.f[a][b] = rep[i];
			p.f[b][a] = group.inv(rep[i]);
		}
		out.push_back(std::move(p));
	}
	return out;
}

int holonomy(const PrincipalAction &p, int x0, const std::vector<int> &loop) {
	if (loop.size() < 2 || loop.front() != x0 || loop.back() != x0)
		throw PreconditionError("loop must start and end at the basepoint");
	for (int x : loop)
		if (x < 0 || x >= p.base.n())
			throw PreconditionError("loop point out of range");
	int acc = p.group.unit;
	for (size_t k = 1; k < loop.size(); ++k)
		acc = p.group.mul(acc, p.f[loop[k]][loop[k - 1]]);
	return acc;
}

int HolonomyDatum::eval(const std::vector<int> &loop) {
	auto it = cache.find(loop);
	if (it != cache.end())
		return it->second;
	int g = holonomy(normalized, basepoint, loop);
	cache.emplace(loop, g);
	return g;
}

HolonomyDatum make_holonomy_datum(const PrincipalAction &p, int x0) {
	HolonomyDatum h;
	h.basepoint = x0;
	h.normalized = gauge_normalize(p, x0);
	return h;
}

MetricAction associated_action(const PrincipalAction &p, const AutGroupResult &aut,
                               const FiniteMetricSpace &fiber) {
	int n = p.base.n();
	MetricAction a;
	a.base = p.base;
	a.fibers.assign(n, fiber);
	a.transport.assign(n, std::vector<std::vector<int>>(n));
	for (int x = 0; x < n; ++x)
		for (int y = 0; y < n; ++y)
			a.transport[x][y] = aut.perms[p.f[x][y]];
	return a;
}

std::vector<MetricFibration> classify_fibrations(const FiniteMetricSpace &base,
                                                 const FiniteMetricSpace &fiber) {
	if (auto v = validate_space(fiber))
		throw PreconditionError("invalid fiber: " + v->message());
	if (fiber.flavor == Flavor::QuasiMetric)
		throw PreconditionError("fiber classification needs a symmetric fiber");
	AutGroupResult aut = aut_group(fiber);
	std::vector<PrincipalAction> reps = enumerate_principal(base, aut.group);
	std::vector<MetricFibration> out;
	for (const auto &p : reps)
		out.push_back(grothendieck(associated_action(p, aut, fiber)));
	for (size_t i = 0; i < out.size(); ++i)
		for (size_t j = i + 1; j < out.size(); ++j)
			if (find_fibration_isomorphism(out[i], out[j]))
				throw Error("classification produced isomorphic representatives " +
				            std::to_string(i) + " and " + std::to_string(j));
	return out;
}

} // namespace metfib
