#include "metfib/group.hpp"

#include <cctype>
#include <algorithm>
#include <map>

namespace metfib {

int FiniteNormedGroup::index_of(const std::string &name) const {
	for (int i = 0; i < n(); ++i)
		if (elements[i] == name)
			return i;
	return -1;
}

bool FiniteNormedGroup::finalize() {
	int m = n();
	unit = -1;
	for (int e = 0; e < m; ++e) {
		bool ok = true;
		for (int g = 0; g < m && ok; ++g)
			if (mul(e, g) != g || mul(g, e) != g)
				ok = false;
		if (ok) {
			unit = e;
			break;
		}
	}
	if (unit < 0)
		return false;
	inverse.assign(m, -1);
	for (int g = 0; g < m; ++g)
		for (int h = 0; h < m; ++h)
			if (mul(g, h) == unit && mul(h, g) == unit) {
				inverse[g] = h;
				break;
			}
	for (int g = 0; g < m; ++g)
		if (inverse[g] < 0)
			return false;
	return true;
}

std::optional<Violation> validate_group(const FiniteNormedGroup &g) {
	int m = g.n();
	if (m == 0)
		return Violation{"empty-group", {}, "a group needs at least the unit"};
	for (int i = 0; i < m; ++i) {
		if (g.elements[i].empty())
			return Violation{"element-name", {std::to_string(i)}, "empty element name"};
		for (char c : g.elements[i])
			if (std::isspace(static_cast<unsigned char>(c)))
				return Violation{"element-name", {g.elements[i]}, "element name contains whitespace"};
		for (int j = i + 1; j < m; ++j)
			if (g.elements[i] == g.elements[j])
				return Violation{"element-name", {g.elements[i]}, "duplicate element name"};
	}
	if (g.table.size() != static_cast<size_t>(m) * m)
		return Violation{"table-shape", {}, "Cayley table is not n*n"};
	for (int a = 0; a < m; ++a)
		for (int b = 0; b < m; ++b)
			if (g.mul(a, b) < 0 || g.mul(a, b) >= m)
				return Violation{"table-range", {g.elements[a], g.elements[b]}, "product out of range"};
	for (int a = 0; a < m; ++a)
		for (int b = 0; b < m; ++b)
			for (int c = 0; c < m; ++c)
				if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
					return Violation{"associativity", {g.elements[a], g.elements[b], g.elements[c]}, ""};
	FiniteNormedGroup probe = g;
	if (!probe.finalize())
		return Violation{"unit-or-inverse", {}, "no two-sided unit or some element lacks an inverse"};
	int e = probe.unit;
	if (g.norm.size() != static_cast<size_t>(m))
		return Violation{"norm-shape", {}, "norm list length differs from element count"};
	if (!(g.norm[e] == XRational(0)))
		return Violation{"norm-unit", {g.elements[e]}, "norm of the unit must be 0"};
	for (int a = 0; a < m; ++a) {
		if (a != e && g.norm[a] == XRational(0))
			return Violation{"norm-definite", {g.elements[a]}, "only the unit may have norm 0"};
		if (!g.norm[a].is_inf() && g.norm[a].val.sign() < 0)
			return Violation{"norm-negative", {g.elements[a]}, to_string(g.norm[a])};
	}
	for (int a = 0; a < m; ++a)
		if (!(g.norm[probe.inv(a)] == g.norm[a]))
			return Violation{"norm-inverse", {g.elements[a]},
			                 to_string(g.norm[a]) + " != " + to_string(g.norm[probe.inv(a)])};
	for (int a = 0; a < m; ++a)
		for (int b = 0; b < m; ++b)
			if (g.norm[g.mul(a, b)] > g.norm[a] + g.norm[b])
				return Violation{"norm-subadditive", {g.elements[a], g.elements[b]},
				                 to_string(g.norm[g.mul(a, b)]) + " > " + to_string(g.norm[a]) + " + " +
				                     to_string(g.norm[b])};
	for (int h = 0; h < m; ++h)
		for (int a = 0; a < m; ++a)
			if (!(g.norm[probe.mul(probe.mul(h, a), probe.inv(h))] == g.norm[a]))
				return Violation{"norm-conjugation", {g.elements[h], g.elements[a]}, ""};
	return std::nullopt;
}

FiniteMetricSpace metric_from_norm(const FiniteNormedGroup &g) {
	int m = g.n();
	FiniteMetricSpace x;
	x.labels = g.elements;
	x.dist.resize(static_cast<size_t>(m) * m);
	for (int i = 0; i < m; ++i)
		for (int j = 0; j < m; ++j)
			x.d(i, j) = g.norm[g.mul(g.inv(j), i)];
	x.flavor = infer_flavor(x.dist, m);
	return x;
}

NormFromMetricResult norm_from_metric(const std::vector<std::string> &elements,
                                      const std::vector<int> &table,
                                      const FiniteMetricSpace &space) {
	NormFromMetricResult r;
	int m = static_cast<int>(elements.size());
	if (space.n() != m) {
		r.violation = Violation{"point-count", {}, "metric space and element list sizes differ"};
		return r;
	}
	FiniteNormedGroup g;
	g.elements = elements;
	g.table = table;
	if (!g.finalize()) {
		r.violation = Violation{"unit-or-inverse", {}, "no two-sided unit or missing inverse"};
		return r;
	}
	for (int k = 0; k < m; ++k)
		for (int a = 0; a < m; ++a)
			for (int b = 0; b < m; ++b) {
				if (!(space.d(g.mul(k, a), g.mul(k, b)) == space.d(a, b))) {
					r.violation = Violation{"left-invariance", {elements[k], elements[a], elements[b]},
					                        "d(ka,kb) != d(a,b)"};
					return r;
				}
				if (!(space.d(g.mul(a, k), g.mul(b, k)) == space.d(a, b))) {
					r.violation = Violation{"right-invariance", {elements[k], elements[a], elements[b]},
					                        "d(ak,bk) != d(a,b)"};
					return r;
				}
			}
	for (int a = 0; a < m; ++a)
		for (int b = 0; b < m; ++b)
			if (!(space.d(g.inv(a), g.inv(b)) == space.d(a, b))) {
				r.violation = Violation{"inversion-isometry", {elements[a], elements[b]},
				                        "d(a^-1,b^-1) != d(a,b)"};
				return r;
			}
	g.norm.resize(m);
	for (int a = 0; a < m; ++a)
		g.norm[a] = space.d(a, g.unit);
	if (auto v = validate_group(g)) {
		r.violation = v;
		return r;
	}
	r.group = std::move(g);
	return r;
}

static void search_isometries(const FiniteMetricSpace &y, std::vector<int> &img,
                              std::vector<bool> &used, int depth,
                              std::vector<std::vector<int>> &out) {
	int n = y.n();
	if (depth == n) {
		out.push_back(img);
		return;
	}
	for (int cand = 0; cand < n; ++cand) {
		if (used[cand])
			continue;
		bool ok = true;
		for (int p = 0; p < depth && ok; ++p)
			if (!(y.d(img[p], cand) == y.d(p, depth)))
				ok = false;
		if (!ok)
			continue;
		img[depth] = cand;
		used[cand] = true;
		search_isometries(y, img, used, depth + 1, out);
		used[cand] = false;
	}
}

// Cycle notation over the space's labels; the identity prints as "e".
static std::string perm_name(const std::vector<int> &p, const std::vector<std::string> &labels) {
	int n = static_cast<int>(p.size());
	std::vector<bool> seen(n, false);
	std::string s;
	for (int i = 0; i < n; ++i) {
		if (seen[i] || p[i] == i)
			continue;
		s += "(";
		int j = i;
		bool first = true;
		while (!seen[j]) {
			seen[j] = true;
			if (!first)
				s += ",";
			s += labels[j];
			first = false;
			j = p[j];
		}
		s += ")";
	}
	return s.empty() ? "e" : s;
}

AutGroupResult aut_group(const FiniteMetricSpace &y) {
	int n = y.n();
	AutGroupResult r;
	std::vector<int> img(n, -1);
	std::vector<bool> used(n, false);
	search_isometries(y, img, used, 0, r.perms);
	// backtracking tries images in increasing order, so perms is already
	// lexicographically sorted and starts with the identity
	int m = static_cast<int>(r.perms.size());
	std::map<std::vector<int>, int> index;
	for (int i = 0; i < m; ++i)
		index[r.perms[i]] = i;
	FiniteNormedGroup &g = r.group;
	for (int i = 0; i < m; ++i)
		g.elements.push_back(perm_name(r.perms[i], y.labels));
	g.table.resize(static_cast<size_t>(m) * m);
	for (int a = 0; a < m; ++a)
		for (int b = 0; b < m; ++b) {
			std::vector<int> comp(n);
			for (int p = 0; p < n; ++p)
				comp[p] = r.perms[a][r.perms[b][p]]; // a after b
			g.table[static_cast<size_t>(a) * m + b] = index.at(comp);
		}
	g.norm.resize(m);
	for (int a = 0; a < m; ++a) {
		XRational best(0);
		for (int p = 0; p < n; ++p)
			if (y.d(p, r.perms[a][p]) > best)
				best = y.d(p, r.perms[a][p]);
		g.norm[a] = best;
	}
	g.finalize();
	return r;
}

std::vector<int> conjugate_tuple(const FiniteNormedGroup &g, const std::vector<int> &t, int h) {
	std::vector<int> out(t.size());
	int hi = g.inv(h);
	for (size_t i = 0; i < t.size(); ++i)
		out[i] = g.mul(g.mul(hi, t[i]), h);
	return out;
}

std::vector<int> canonical_conjugate(const FiniteNormedGroup &g, const std::vector<int> &t) {
	std::vector<int> best = t;
	for (int h = 0; h < g.n(); ++h) {
		std::vector<int> c = conjugate_tuple(g, t, h);
		if (c < best)
			best = c;
	}
	return best;
}

TuplePartition conjugacy_partition(const FiniteNormedGroup &g,
                                   const std::vector<std::vector<int>> &tuples) {
	std::map<std::vector<int>, std::vector<int>> buckets;
	for (size_t i = 0; i < tuples.size(); ++i)
		buckets[canonical_conjugate(g, tuples[i])].push_back(static_cast<int>(i));
	TuplePartition p;
	for (auto &[rep, members] : buckets) {
		p.reps.push_back(rep);
		p.classes.push_back(members);
	}
	return p;
}

} // namespace metfib
