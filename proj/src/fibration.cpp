#include "metfib/fibration.hpp"

#include <algorithm>

namespace metfib {

std::vector<int> compose_maps(const std::vector<int> &first, const std::vector<int> &then) {
	std::vector<int> out(first.size());
	for (size_t i = 0; i < first.size(); ++i)
		out[i] = then[first[i]];
	return out;
}

std::vector<int> inverse_map(const std::vector<int> &bij) {
	std::vector<int> out(bij.size(), -1);
	for (size_t i = 0; i < bij.size(); ++i)
		out[bij[i]] = static_cast<int>(i);
	return out;
}

static std::optional<Violation> check_bijection(const std::vector<int> &m, int domain, int codomain,
                                                const std::string &what) {
	if (static_cast<int>(m.size()) != domain)
		return Violation{what, {}, "map size differs from domain size"};
	std::vector<bool> hit(codomain, false);
	for (int v : m) {
		if (v < 0 || v >= codomain)
			return Violation{what, {std::to_string(v)}, "image out of range"};
		if (hit[v])
			return Violation{what, {std::to_string(v)}, "image hit twice"};
		hit[v] = true;
	}
	if (domain != codomain)
		return Violation{what, {}, "fiber sizes differ"};
	return std::nullopt;
}

std::optional<Violation> validate_action(const MetricAction &a) {
	if (auto v = validate_space(a.base)) {
		v->rule = "base/" + v->rule;
		return v;
	}
	int n = a.base.n();
	if (static_cast<int>(a.fibers.size()) != n)
		return Violation{"fibers", {}, "fiber count differs from base point count"};
	for (int x = 0; x < n; ++x)
		if (auto v = validate_space(a.fibers[x])) {
			v->rule = "fiber/" + v->rule;
			v->witness.insert(v->witness.begin(), a.base.labels[x]);
			return v;
		}
	if (static_cast<int>(a.transport.size()) != n)
		return Violation{"transport", {}, "transport table has wrong shape"};
	for (int x = 0; x < n; ++x) {
		if (static_cast<int>(a.transport[x].size()) != n)
			return Violation{"transport", {a.base.labels[x]}, "transport row has wrong shape"};
		for (int y = 0; y < n; ++y)
			if (auto v = check_bijection(a.transport[x][y], a.fibers[x].n(), a.fibers[y].n(),
			                             "transport-bijection")) {
				v->witness.insert(v->witness.begin(), {a.base.labels[x], a.base.labels[y]});
				return v;
			}
	}
	for (int x = 0; x < n; ++x)
		for (int i = 0; i < a.fibers[x].n(); ++i)
			if (a.transport[x][x][i] != i)
				return Violation{"transport-identity", {a.base.labels[x], a.fibers[x].labels[i]},
				                 "F_xx is not the identity"};
	for (int x = 0; x < n; ++x)
		for (int y = 0; y < n; ++y)
			for (int i = 0; i < a.fibers[x].n(); ++i)
				if (a.transport[y][x][a.transport[x][y][i]] != i)
					return Violation{"transport-inverse",
					                 {a.base.labels[x], a.base.labels[y], a.fibers[x].labels[i]},
					                 "F_x'x is not inverse to F_xx'"};
	for (int x = 0; x < n; ++x)
		for (int y = 0; y < n; ++y)
			for (int i = 0; i < a.fibers[x].n(); ++i)
				for (int j = 0; j < a.fibers[x].n(); ++j) {
					const auto &t = a.transport[x][y];
					if (!(a.fibers[y].d(t[i], t[j]) == a.fibers[x].d(i, j)))
						return Violation{"transport-isometry",
						                 {a.base.labels[x], a.base.labels[y], a.fibers[x].labels[i],
						                  a.fibers[x].labels[j]},
						                 "F_xx' changes a fiber distance"};
				}
	for (int x = 0; x < n; ++x)
		for (int y = 0; y < n; ++y)
			for (int z = 0; z < n; ++z) {
				XRational s = a.base.d(x, y) + a.base.d(y, z);
				if (s.is_inf())
					continue;
				XRational deficit = s - a.base.d(x, z);
				for (int i = 0; i < a.fibers[x].n(); ++i) {
					int via = a.transport[y][z][a.transport[x][y][i]];
					int direct = a.transport[x][z][i];
					if (a.fibers[z].d(via, direct) > deficit)
						return Violation{"transport-deficit",
						                 {a.base.labels[x], a.base.labels[y], a.base.labels[z],
						                  a.fibers[x].labels[i]},
						                 to_string(a.fibers[z].d(via, direct)) + " > " +
						                     to_string(deficit)};
				}
			}
	return std::nullopt;
}

MetricFibration grothendieck(const MetricAction &a) {
	int n = a.base.n();
	MetricFibration f;
	f.base = a.base;
	std::vector<int> offset(n + 1, 0);
	for (int x = 0; x < n; ++x) {
		offset[x + 1] = offset[x] + a.fibers[x].n();
		for (int i = 0; i < a.fibers[x].n(); ++i) {
			f.total.labels.push_back(join_labels(a.base.labels[x], a.fibers[x].labels[i]));
			f.proj.push_back(x);
		}
	}
	int m = offset[n];
	f.total.dist.resize(static_cast<size_t>(m) * m);
	for (int x = 0; x < n; ++x)
		for (int i = 0; i < a.fibers[x].n(); ++i)
			for (int y = 0; y < n; ++y)
				for (int j = 0; j < a.fibers[y].n(); ++j)
					f.total.d(offset[x] + i, offset[y] + j) =
					    a.base.d(x, y) + a.fibers[y].d(a.transport[x][y][i], j);
	f.total.flavor = infer_flavor(f.total.dist, m);
	return f;
}

static std::vector<std::vector<int>> fibers_of(const MetricFibration &f) {
	std::vector<std::vector<int>> fib(f.base.n());
	for (size_t e = 0; e < f.proj.size(); ++e)
		fib[f.proj[e]].push_back(static_cast<int>(e));
	return fib;
}

// Lift candidates over x for eps: nearest points realizing the base distance
// through which every distance into the fiber factors.
static bool is_lift(const MetricFibration &f, const std::vector<int> &fiber_x, int eps, int x,
                    int cand) {
	if (!(f.total.d(eps, cand) == f.base.d(f.proj[eps], x)))
		return false;
	for (int other : fiber_x)
		if (!(f.total.d(eps, other) == f.total.d(eps, cand) + f.total.d(cand, other)))
			return false;
	return true;
}

std::optional<Violation> validate_fibration(const MetricFibration &f) {
	if (auto v = validate_space(f.total)) {
		v->rule = "total/" + v->rule;
		return v;
	}
	if (auto v = validate_space(f.base)) {
		v->rule = "base/" + v->rule;
		return v;
	}
	if (f.proj.size() != f.total.labels.size())
		return Violation{"projection", {}, "projection size differs from total point count"};
	for (int p : f.proj)
		if (p < 0 || p >= f.base.n())
			return Violation{"projection", {std::to_string(p)}, "projection image out of range"};
	int m = f.total.n();
	for (int e = 0; e < m; ++e)
		for (int e2 = 0; e2 < m; ++e2)
			if (f.base.d(f.proj[e], f.proj[e2]) > f.total.d(e, e2))
				return Violation{"lipschitz", {f.total.labels[e], f.total.labels[e2]},
				                 "projection increases a distance"};
	auto fib = fibers_of(f);
	for (int e = 0; e < m; ++e)
		for (int x = 0; x < f.base.n(); ++x) {
			if (f.base.d(f.proj[e], x).is_inf())
				continue;
			int found = -1;
			int count = 0;
			for (int cand : fib[x])
				if (is_lift(f, fib[x], e, x, cand)) {
					++count;
					if (found < 0)
						found = cand;
				}
			if (count == 0)
				return Violation{"lift-existence", {f.total.labels[e], f.base.labels[x]},
				                 "no point over x realizes the base distance additively"};
			if (count > 1)
				return Violation{"lift-uniqueness", {f.total.labels[e], f.base.labels[x]},
				                 std::to_string(count) + " candidate lifts"};
		}
	return std::nullopt;
}

int lift(const MetricFibration &f, int eps, int x) {
	if (f.base.d(f.proj[eps], x).is_inf())
		throw PreconditionError("no lift of " + f.total.labels[eps] + " over " + f.base.labels[x] +
		                        ": base distance is infinite");
	auto fib = fibers_of(f);
	for (int cand : fib[x])
		if (is_lift(f, fib[x], eps, x, cand))
			return cand;
	throw PreconditionError("no lift of " + f.total.labels[eps] + " over " + f.base.labels[x]);
}

MetricAction action_from_fibration(const MetricFibration &f) {
	if (!connected(f.base))
		throw PreconditionError("action extraction needs a connected base");
	int n = f.base.n();
	auto fib = fibers_of(f);
	MetricAction a;
	a.base = f.base;
	a.fibers.resize(n);
	for (int x = 0; x < n; ++x) {
		auto &y = a.fibers[x];
		for (int e : fib[x])
			y.labels.push_back(f.total.labels[e]);
		int k = y.n();
		y.dist.resize(static_cast<size_t>(k) * k);
		for (int i = 0; i < k; ++i)
			for (int j = 0; j < k; ++j)
				y.d(i, j) = f.total.d(fib[x][i], fib[x][j]);
		y.flavor = infer_flavor(y.dist, k);
	}
	std::vector<std::vector<int>> pos(f.total.n());
	for (int x = 0; x < n; ++x)
		for (int i = 0; i < static_cast<int>(fib[x].size()); ++i)
			pos[fib[x][i]] = {x, i};
	a.transport.assign(n, std::vector<std::vector<int>>(n));
	for (int x = 0; x < n; ++x)
		for (int y = 0; y < n; ++y) {
			auto &t = a.transport[x][y];
			t.resize(fib[x].size());
			for (int i = 0; i < static_cast<int>(fib[x].size()); ++i) {
				int l = (x == y) ? fib[x][i] : lift(f, fib[x][i], y);
				t[i] = pos[l][1];
			}
		}
	return a;
}

static bool extend_fib_iso(const MetricFibration &f, const MetricFibration &g,
                           const std::vector<int> &order, const std::vector<std::vector<int>> &gfib,
                           std::vector<int> &img, std::vector<bool> &used, size_t depth) {
	if (depth == order.size())
		return true;
	int eps = order[depth];
	for (int cand : gfib[f.proj[eps]]) {
		if (used[cand])
			continue;
		bool ok = true;
		for (size_t p = 0; p < depth && ok; ++p) {
			int e0 = order[p];
			if (!(g.total.d(img[e0], cand) == f.total.d(e0, eps)))
				ok = false;
		}
		if (!ok)
			continue;
		img[eps] = cand;
		used[cand] = true;
		if (extend_fib_iso(f, g, order, gfib, img, used, depth + 1))
			return true;
		used[cand] = false;
	}
	return false;
}

std::optional<std::vector<int>> find_fibration_isomorphism(const MetricFibration &f,
                                                           const MetricFibration &g) {
	if (!same_space(f.base, g.base))
		throw PreconditionError("fibration isomorphism search needs identical bases");
	if (f.total.n() != g.total.n())
		return std::nullopt;
	auto ffib = fibers_of(f), gfib = fibers_of(g);
	for (int x = 0; x < f.base.n(); ++x)
		if (ffib[x].size() != gfib[x].size())
			return std::nullopt;
	std::vector<int> order;
	for (int x = 0; x < f.base.n(); ++x)
		for (int e : ffib[x])
			order.push_back(e);
	std::vector<int> img(f.total.n(), -1);
	std::vector<bool> used(g.total.n(), false);
	if (extend_fib_iso(f, g, order, gfib, img, used, 0))
		return img;
	return std::nullopt;
}

MetricAction hat_normalize(const MetricAction &a, int x0) {
	int n = a.base.n();
	MetricAction h;
	h.base = a.base;
	h.fibers.assign(n, a.fibers[x0]);
	h.transport.assign(n, std::vector<std::vector<int>>(n));
	for (int x = 0; x < n; ++x)
		for (int y = 0; y < n; ++y)
			h.transport[x][y] = compose_maps(
			    compose_maps(a.transport[x0][x], a.transport[x][y]), a.transport[y][x0]);
	return h;
}

bool is_trivial(const MetricFibration &f) {
	if (!connected(f.base))
		throw PreconditionError("triviality check needs a connected base");
	if (f.total.n() == 0)
		return true;
	auto fib = fibers_of(f);
	MetricAction constant;
	constant.base = f.base;
	FiniteMetricSpace y;
	for (int e : fib[0])
		y.labels.push_back(f.total.labels[e]);
	int k = y.n();
	y.dist.resize(static_cast<size_t>(k) * k);
	for (int i = 0; i < k; ++i)
		for (int j = 0; j < k; ++j)
			y.d(i, j) = f.total.d(fib[0][i], fib[0][j]);
	y.flavor = infer_flavor(y.dist, k);
	int n = f.base.n();
	constant.fibers.assign(n, y);
	std::vector<int> id(k);
	for (int i = 0; i < k; ++i)
		id[i] = i;
	constant.transport.assign(n, std::vector<std::vector<int>>(n, id));
	MetricFibration t = grothendieck(constant);
	return find_fibration_isomorphism(f, t).has_value();
}

std::optional<Violation> validate_transformation(const MetricAction &src, const MetricAction &dst,
                                                 const std::vector<std::vector<int>> &theta) {
	if (!same_space(src.base, dst.base))
		return Violation{"base-mismatch", {}, "transformations need a shared base"};
	int n = src.base.n();
	if (static_cast<int>(theta.size()) != n)
		return Violation{"component-count", {}, "one component per base point required"};
	for (int x = 0; x < n; ++x) {
		if (static_cast<int>(theta[x].size()) != src.fibers[x].n())
			return Violation{"component-size", {src.base.labels[x]}, "component domain mismatch"};
		for (int v : theta[x])
			if (v < 0 || v >= dst.fibers[x].n())
				return Violation{"component-range", {src.base.labels[x]}, "image out of range"};
		for (int i = 0; i < src.fibers[x].n(); ++i)
			for (int j = 0; j < src.fibers[x].n(); ++j)
				if (dst.fibers[x].d(theta[x][i], theta[x][j]) > src.fibers[x].d(i, j))
					return Violation{"component-lipschitz",
					                 {src.base.labels[x], src.fibers[x].labels[i],
					                  src.fibers[x].labels[j]},
					                 "component increases a distance"};
	}
	for (int x = 0; x < n; ++x)
		for (int y = 0; y < n; ++y)
			for (int i = 0; i < src.fibers[x].n(); ++i)
				if (dst.transport[x][y][theta[x][i]] != theta[y][src.transport[x][y][i]])
					return Violation{"naturality",
					                 {src.base.labels[x], src.base.labels[y], src.fibers[x].labels[i]},
					                 "components do not commute with transports"};
	return std::nullopt;
}

std::optional<Violation> validate_action_isomorphism(const MetricAction &src, const MetricAction &dst,
                                                     const std::vector<std::vector<int>> &theta) {
	if (auto v = validate_transformation(src, dst, theta))
		return v;
	for (int x = 0; x < src.base.n(); ++x) {
		if (auto v = check_bijection(theta[x], src.fibers[x].n(), dst.fibers[x].n(), "component-bijection")) {
			v->witness.insert(v->witness.begin(), src.base.labels[x]);
			return v;
		}
		for (int i = 0; i < src.fibers[x].n(); ++i)
			for (int j = 0; j < src.fibers[x].n(); ++j)
				if (!(dst.fibers[x].d(theta[x][i], theta[x][j]) == src.fibers[x].d(i, j)))
					return Violation{"component-isometry",
					                 {src.base.labels[x], src.fibers[x].labels[i],
					                  src.fibers[x].labels[j]},
					                 "component is not distance preserving"};
	}
	return std::nullopt;
}

std::optional<Violation> validate_fibration_morphism(const MetricFibration &src,
                                                     const MetricFibration &dst,
                                                     const std::vector<int> &map) {
	if (!same_space(src.base, dst.base))
		return Violation{"base-mismatch", {}, "morphisms need a shared base"};
	if (map.size() != src.total.labels.size())
		return Violation{"map-size", {}, "map size differs from total point count"};
	for (size_t e = 0; e < map.size(); ++e) {
		if (map[e] < 0 || map[e] >= dst.total.n())
			return Violation{"map-range", {src.total.labels[e]}, "image out of range"};
		if (dst.proj[map[e]] != src.proj[e])
			return Violation{"fiber-preservation", {src.total.labels[e]},
			                 "image lies over a different base point"};
	}
	for (int e = 0; e < src.total.n(); ++e)
		for (int e2 = 0; e2 < src.total.n(); ++e2)
			if (dst.total.d(map[e], map[e2]) > src.total.d(e, e2))
				return Violation{"morphism-lipschitz", {src.total.labels[e], src.total.labels[e2]},
				                 "morphism increases a distance"};
	return std::nullopt;
}

} // namespace metfib
