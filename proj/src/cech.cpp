#include "metfib/cech.hpp"

#include <algorithm>

namespace metfib {

std::optional<Violation> validate_cocycle(const Cocycle &c) {
	if (auto v = validate_space(c.base)) {
		v->rule = "base/" + v->rule;
		return v;
	}
	if (auto v = validate_group(c.group)) {
		v->rule = "group/" + v->rule;
		return v;
	}
	int n = c.base.n();
	if (c.a.size() != static_cast<size_t>(n) * n * n)
		return Violation{"shape", {}, "value table has wrong size"};
	for (int g : c.a)
		if (g < 0 || g >= c.group.n())
			return Violation{"shape", {std::to_string(g)}, "group element out of range"};
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			for (int k = 0; k < n; ++k)
				for (int l = 0; l < n; ++l)
					if (c.group.mul(c.at(i, j, k), c.at(k, j, l)) != c.at(i, j, l))
						return Violation{"identity",
						                 {c.base.labels[i], c.base.labels[j], c.base.labels[k],
						                  c.base.labels[l]},
						                 "a(i,j,k) a(k,j,l) differs from a(i,j,l)"};
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			for (int k = 0; k < n; ++k) {
				if (c.base.d(i, j).is_inf() || c.base.d(j, k).is_inf() ||
				    c.base.d(i, k).is_inf())
					continue;
				int prod = c.group.mul(c.at(i, j, k), c.at(j, k, i), c.at(k, i, j));
				XRational slack = degeneracy_degree(c.base, i, j, k);
				if (c.group.norm[prod] > slack)
					return Violation{"norm",
					                 {c.base.labels[i], c.base.labels[j], c.base.labels[k]},
					                 to_string(c.group.norm[prod]) + " > " + to_string(slack)};
			}
	return std::nullopt;
}

static bool same_cocycle(const Cocycle &a, const Cocycle &b) {
	return same_space(a.base, b.base) && same_group(a.group, b.group) && a.a == b.a;
}

std::optional<Violation> validate_cocycle_morphism(const CocycleMorphism &m) {
	if (!same_space(m.source.base, m.target.base) || !same_group(m.source.group, m.target.group))
		return Violation{"compat", {}, "source and target share base and group"};
	int n = m.source.base.n();
	const auto &g = m.source.group;
	if (static_cast<int>(m.f.size()) != n)
		return Violation{"shape", {}, "entry table has wrong shape"};
	for (const auto &row : m.f) {
		if (static_cast<int>(row.size()) != n)
			return Violation{"shape", {}, "entry row has wrong shape"};
		for (int v : row)
			if (v < 0 || v >= g.n())
				return Violation{"shape", {std::to_string(v)}, "group element out of range"};
	}
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			if (m.f[i][j] != m.f[j][i])
				return Violation{"symmetry", {m.source.base.labels[i], m.source.base.labels[j]},
				                 "entries are not symmetric"};
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			for (int k = 0; k < n; ++k)
				if (g.mul(m.source.at(i, j, k), m.f[j][k]) !=
				    g.mul(m.f[i][j], m.target.at(i, j, k)))
					return Violation{"relation",
					                 {m.source.base.labels[i], m.source.base.labels[j],
					                  m.source.base.labels[k]},
					                 "a(i,j,k) f(j,k) differs from f(i,j) b(i,j,k)"};
	return std::nullopt;
}

CocycleMorphism cocycle_identity(const Cocycle &c) {
	int n = c.base.n();
	return {c, c, std::vector<std::vector<int>>(n, std::vector<int>(n, c.group.unit))};
}

CocycleMorphism cocycle_compose(const CocycleMorphism &f, const CocycleMorphism &g) {
	if (!same_cocycle(f.target, g.source))
		throw PreconditionError("composing morphisms needs matching middle cocycle");
	int n = f.source.base.n();
	CocycleMorphism out{f.source, g.target,
	                    std::vector<std::vector<int>>(n, std::vector<int>(n))};
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			out.f[i][j] = f.source.group.mul(f.f[i][j], g.f[i][j]);
	return out;
}

std::optional<CocycleMorphism> find_cocycle_morphism(const Cocycle &src, const Cocycle &dst) {
	if (!same_space(src.base, dst.base) || !same_group(src.group, dst.group))
		throw PreconditionError("morphism search needs one base and one group");
	int n = src.base.n();
	const auto &g = src.group;
	if (n == 0)
		return CocycleMorphism{src, dst, {}};
	for (int f00 = 0; f00 < g.n(); ++f00) {
		std::vector<std::vector<int>> f(n, std::vector<int>(n));
		f[0][0] = f00;
		for (int k = 1; k < n; ++k) {
			f[0][k] = g.mul(g.inv(src.at(0, 0, k)), f00, dst.at(0, 0, k));
			f[k][0] = f[0][k];
		}
		for (int j = 1; j < n; ++j)
			for (int k = 1; k < n; ++k)
				f[j][k] = g.mul(g.inv(src.at(0, j, k)), f[0][j], dst.at(0, j, k));
		CocycleMorphism m{src, dst, std::move(f)};
		if (!validate_cocycle_morphism(m))
			return m;
	}
	return std::nullopt;
}

static int ref_index(int j, int n) { return j == 0 ? (n > 1 ? 1 : 0) : 0; }

Torsor beta(const Cocycle &c) {
	int n = c.base.n(), m = c.group.n();
	Torsor t;
	t.group = c.group;
	t.fib.base = c.base;
	for (int j = 0; j < n; ++j)
		for (int g = 0; g < m; ++g) {
			t.fib.total.labels.push_back(join_labels(c.base.labels[j], c.group.elements[g]));
			t.fib.proj.push_back(j);
		}
	int total = n * m;
	t.fib.total.dist.resize(static_cast<size_t>(total) * total);
	for (int j = 0; j < n; ++j)
		for (int g = 0; g < m; ++g)
			for (int j2 = 0; j2 < n; ++j2)
				for (int h = 0; h < m; ++h) {
					XRational d;
					if (j == j2) {
						d = c.group.norm[c.group.mul(c.group.inv(h), g)];
					} else {
						int u = c.group.mul(g, c.at(ref_index(j, n), j, j2));
						int v = c.group.mul(h, c.at(ref_index(j2, n), j2, j));
						d = c.base.d(j, j2) + c.group.norm[c.group.mul(c.group.inv(v), u)];
					}
					t.fib.total.d(j * m + g, j2 * m + h) = d;
				}
	t.fib.total.flavor = infer_flavor(t.fib.total.dist, total);
	t.act.resize(total);
	for (int j = 0; j < n; ++j)
		for (int g = 0; g < m; ++g) {
			auto &row = t.act[j * m + g];
			row.resize(m);
			for (int h = 0; h < m; ++h)
				row[h] = j * m + c.group.mul(c.group.inv(h), g);
		}
	return t;
}

LocalSection local_section(const Torsor &t) {
	int n = t.fib.base.n();
	std::vector<int> least(n, -1);
	for (int e = 0; e < t.fib.total.n(); ++e) {
		int x = t.fib.proj[e];
		if (least[x] < 0 || t.fib.total.labels[e] < t.fib.total.labels[least[x]])
			least[x] = e;
	}
	LocalSection s;
	s.pairs.assign(n, std::vector<std::pair<int, int>>(n, {-1, -1}));
	for (int i = 0; i < n; ++i)
		for (int j = i; j < n; ++j) {
			int first = least[i];
			s.pairs[i][j] = {first, lift(t.fib, first, j)};
		}
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < i; ++j) {
			int first = s.pairs[j][i].second;
			s.pairs[i][j] = {first, lift(t.fib, first, j)};
		}
	return s;
}

std::optional<Violation> validate_local_section(const Torsor &t, const LocalSection &s) {
	int n = t.fib.base.n();
	if (static_cast<int>(s.pairs.size()) != n)
		return Violation{"shape", {}, "one row per base point required"};
	for (const auto &row : s.pairs)
		if (static_cast<int>(row.size()) != n)
			return Violation{"shape", {}, "one pair per base pair required"};
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			auto [a, b] = s.pairs[i][j];
			if (a < 0 || a >= t.fib.total.n() || b < 0 || b >= t.fib.total.n())
				return Violation{"range", {t.fib.base.labels[i], t.fib.base.labels[j]},
				                 "section point out of range"};
			if (t.fib.proj[a] != i || t.fib.proj[b] != j)
				return Violation{"projection", {t.fib.base.labels[i], t.fib.base.labels[j]},
				                 "section points lie over wrong base points"};
			if (lift(t.fib, a, j) != b)
				return Violation{"lift", {t.fib.base.labels[i], t.fib.base.labels[j]},
				                 "second component is not the lift of the first"};
			if (s.pairs[j][i].second != a)
				return Violation{"coherence", {t.fib.base.labels[i], t.fib.base.labels[j]},
				                 "section points of the swapped pair disagree"};
		}
	return std::nullopt;
}

Cocycle alpha(const Torsor &t, const LocalSection &s) {
	if (auto v = validate_local_section(t, s))
		throw PreconditionError("invalid section: " + v->message());
	int n = t.fib.base.n();
	Cocycle c;
	c.base = t.fib.base;
	c.group = t.group;
	c.a.assign(static_cast<size_t>(n) * n * n, -1);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			for (int k = 0; k < n; ++k) {
				int from = s.pairs[i][j].second, to = s.pairs[j][k].first;
				int found = -1;
				for (int g = 0; g < t.group.n(); ++g)
					if (t.act[from][g] == to) {
						found = g;
						break;
					}
				if (found < 0)
					throw PreconditionError("no group element relates the section points over " +
					                        t.fib.base.labels[j]);
				c.at(i, j, k) = found;
			}
	return c;
}

std::vector<Cocycle> enumerate_cocycle_classes(const FiniteMetricSpace &base,
                                               const FiniteNormedGroup &group) {
	if (auto v = validate_space(base))
		throw PreconditionError("invalid base: " + v->message());
	if (base.flavor != Flavor::Metric)
		throw PreconditionError("cocycle enumeration needs a Metric base");
	if (!connected(base))
		throw PreconditionError("cocycle enumeration needs a connected base");
	if (auto v = validate_group(group))
		throw PreconditionError("invalid group: " + v->message());

	int n = base.n();
	// Free data under the normalization: w(p,q) for 1 <= p < q <= n-1,
	// q-major so each triple is checked as soon as it is complete.
	std::vector<std::pair<int, int>> pairs;
	for (int q = 2; q < n; ++q)
		for (int p = 1; p < q; ++p)
			pairs.emplace_back(p, q);
	std::vector<std::vector<int>> candidates(pairs.size());
	std::vector<std::vector<int>> at(n, std::vector<int>(n, -1));
	for (size_t i = 0; i < pairs.size(); ++i) {
		auto [p, q] = pairs[i];
		at[p][q] = static_cast<int>(i);
		XRational cap = degeneracy_degree(base, 0, p, q);
		for (int g = 0; g < group.n(); ++g)
			if (group.norm[g] <= cap)
				candidates[i].push_back(g);
	}
	std::vector<std::vector<int>> found;
	std::vector<int> assign(pairs.size());
	auto search = [&](auto &&self, size_t depth) -> void {
		if (depth == pairs.size()) {
			found.push_back(assign);
			return;
		}
		auto [p, q] = pairs[depth];
		for (int g : candidates[depth]) {
			bool ok = true;
			for (int i = 1; i < p && ok; ++i) {
				int prod = group.mul(group.inv(assign[at[i][p]]), group.inv(g), assign[at[i][q]]);
				if (group.norm[prod] > degeneracy_degree(base, i, p, q))
					ok = false;
			}
			if (!ok)
				continue;
			assign[depth] = g;
			self(self, depth + 1);
		}
	};
	search(search, 0);

	TuplePartition part = conjugacy_partition(group, found);
	std::vector<std::vector<int>> reps = part.reps;
	std::vector<int> trivial(pairs.size(), group.unit);
	auto it = std::find(reps.begin(), reps.end(), trivial);
	if (it != reps.end())
		std::rotate(reps.begin(), it, it + 1);

	std::vector<Cocycle> out;
	for (const auto &rep : reps) {
		std::vector<std::vector<int>> row(n, std::vector<int>(n, group.unit));
		for (size_t i = 0; i < pairs.size(); ++i) {
			auto [p, q] = pairs[i];
			row[q][p] = rep[i];
		}
		Cocycle c;
		c.base = base;
		c.group = group;
		c.a.resize(static_cast<size_t>(n) * n * n);
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j)
				for (int k = 0; k < n; ++k)
					c.at(i, j, k) = group.mul(group.inv(row[j][i]), row[j][k]);
		out.push_back(std::move(c));
	}
	return out;
}

} // namespace metfib
