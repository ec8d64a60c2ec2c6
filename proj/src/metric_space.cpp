#include "metfib/metric_space.hpp"

#include <cctype>
#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace metfib {

std::string Violation::message() const {
	std::ostringstream os;
	os << rule;
	if (!witness.empty()) {
		os << " at (";
		for (size_t i = 0; i < witness.size(); ++i) {
			if (i)
				os << ", ";
			os << witness[i];
		}
		os << ")";
	}
	if (!detail.empty())
		os << ": " << detail;
	return os.str();
}

std::string flavor_name(Flavor f) {
	switch (f) {
	case Flavor::Metric:
		return "metric";
	case Flavor::QuasiMetric:
		return "quasi-metric";
	case Flavor::ExtendedMetric:
		return "extended-metric";
	}
	return "?";
}

int FiniteMetricSpace::index_of(const std::string &label) const {
	for (int i = 0; i < n(); ++i)
		if (labels[i] == label)
			return i;
	return -1;
}

int WeightedGraph::add_vertex(const std::string &name) {
	vertices.push_back(name);
	return static_cast<int>(vertices.size()) - 1;
}

void WeightedGraph::add_edge(int u, int v, Rational w) {
	edges.push_back({u, v, std::move(w)});
}

int WeightedGraph::index_of(const std::string &name) const {
	for (size_t i = 0; i < vertices.size(); ++i)
		if (vertices[i] == name)
			return static_cast<int>(i);
	return -1;
}

std::optional<Violation> validate_space(const FiniteMetricSpace &x) {
	int n = x.n();
	if (x.dist.size() != static_cast<size_t>(n) * n)
		return Violation{"matrix-shape", {}, "distance matrix is not n*n"};
	for (int i = 0; i < n; ++i) {
		if (x.labels[i].empty())
			return Violation{"label", {std::to_string(i)}, "empty label"};
		for (char c : x.labels[i])
			if (std::isspace(static_cast<unsigned char>(c)))
				return Violation{"label", {x.labels[i]}, "label contains whitespace"};
		for (int j = i + 1; j < n; ++j)
			if (x.labels[i] == x.labels[j])
				return Violation{"label", {x.labels[i]}, "duplicate label"};
	}
	for (int i = 0; i < n; ++i)
		if (!(x.d(i, i) == XRational(0)))
			return Violation{"diagonal", {x.labels[i]}, "d(x,x) must be 0"};
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			const XRational &v = x.d(i, j);
			if (!v.is_inf() && v.val.sign() < 0)
				return Violation{"negative-distance", {x.labels[i], x.labels[j]}, to_string(v)};
			if (i != j) {
				if (v.is_inf() && x.flavor != Flavor::ExtendedMetric)
					return Violation{"infinite-distance", {x.labels[i], x.labels[j]},
					                 "inf entry in a " + flavor_name(x.flavor) + " space"};
				if (v == XRational(0) && x.flavor == Flavor::Metric)
					return Violation{"zero-distance", {x.labels[i], x.labels[j]},
					                 "distinct points at distance 0 in a metric space"};
			}
		}
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			if (!(x.d(i, j) == x.d(j, i)))
				return Violation{"symmetry", {x.labels[i], x.labels[j]},
				                 to_string(x.d(i, j)) + " != " + to_string(x.d(j, i))};
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			for (int k = 0; k < n; ++k)
				if (x.d(i, k) > x.d(i, j) + x.d(j, k))
					return Violation{"triangle", {x.labels[i], x.labels[j], x.labels[k]},
					                 to_string(x.d(i, j)) + " + " + to_string(x.d(j, k)) + " < " +
					                     to_string(x.d(i, k))};
	return std::nullopt;
}

Flavor infer_flavor(const std::vector<XRational> &dist, int n) {
	bool quasi = false;
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			if (i == j)
				continue;
			const XRational &v = dist[static_cast<size_t>(i) * n + j];
			if (v.is_inf())
				return Flavor::ExtendedMetric;
			if (v == XRational(0))
				quasi = true;
		}
	return quasi ? Flavor::QuasiMetric : Flavor::Metric;
}

FiniteMetricSpace shortest_path_metric(const WeightedGraph &g) {
	int n = static_cast<int>(g.vertices.size());
	for (const auto &e : g.edges) {
		if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
			throw PreconditionError("edge endpoint out of range");
		if (e.w.sign() < 0)
			throw PreconditionError("negative edge weight");
	}
	std::vector<std::vector<std::pair<int, Rational>>> adj(n);
	bool unit_weights = true;
	for (const auto &e : g.edges) {
		if (e.u == e.v)
			continue;
		adj[e.u].push_back({e.v, e.w});
		adj[e.v].push_back({e.u, e.w});
		if (!(e.w == Rational(1)))
			unit_weights = false;
	}

	FiniteMetricSpace x;
	x.labels = g.vertices;
	x.dist.assign(static_cast<size_t>(n) * n, XRational::infinity());

	if (unit_weights) {
		for (int s = 0; s < n; ++s) {
			std::vector<int> depth(n, -1);
			std::queue<int> q;
			depth[s] = 0;
			q.push(s);
			while (!q.empty()) {
				int u = q.front();
				q.pop();
				for (const auto &[v, w] : adj[u])
					if (depth[v] < 0) {
						depth[v] = depth[u] + 1;
						q.push(v);
					}
			}
			for (int t = 0; t < n; ++t)
				if (depth[t] >= 0)
					x.d(s, t) = XRational(depth[t]);
		}
	} else {
		for (int s = 0; s < n; ++s) {
			std::vector<XRational> dd(n, XRational::infinity());
			std::vector<bool> done(n, false);
			dd[s] = XRational(0);
			for (;;) {
				int u = -1;
				for (int i = 0; i < n; ++i)
					if (!done[i] && !dd[i].is_inf() && (u < 0 || dd[i] < dd[u]))
						u = i;
				if (u < 0)
					break;
				done[u] = true;
				for (const auto &[v, w] : adj[u]) {
					XRational cand = dd[u] + XRational(w);
					if (cand < dd[v])
						dd[v] = cand;
				}
			}
			for (int t = 0; t < n; ++t)
				x.d(s, t) = dd[t];
		}
	}
	x.flavor = infer_flavor(x.dist, n);
	return x;
}

QuotientResult kolmogorov_quotient(const FiniteMetricSpace &x) {
	int n = x.n();
	std::vector<int> rep(n);
	for (int i = 0; i < n; ++i) {
		rep[i] = i;
		for (int j = 0; j < i; ++j)
			if (x.d(i, j) == XRational(0)) {
				rep[i] = rep[j];
				break;
			}
	}
	std::vector<int> newindex(n, -1);
	QuotientResult r;
	for (int i = 0; i < n; ++i)
		if (rep[i] == i) {
			newindex[i] = static_cast<int>(r.space.labels.size());
			r.space.labels.push_back(x.labels[i]);
		}
	int m = static_cast<int>(r.space.labels.size());
	r.space.dist.assign(static_cast<size_t>(m) * m, XRational(0));
	r.point_map.resize(n);
	for (int i = 0; i < n; ++i)
		r.point_map[i] = newindex[rep[i]];
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			r.space.d(r.point_map[i], r.point_map[j]) = x.d(i, j);
	r.space.flavor = infer_flavor(r.space.dist, m);
	return r;
}

std::string join_labels(const std::string &a, const std::string &b) {
	auto esc = [](const std::string &s) {
		std::string t;
		for (char c : s) {
			if (c == '\\' || c == '|')
				t += '\\';
			t += c;
		}
		return t;
	};
	return esc(a) + "|" + esc(b);
}

FiniteMetricSpace l1_product(const FiniteMetricSpace &a, const FiniteMetricSpace &b) {
	int na = a.n(), nb = b.n();
	FiniteMetricSpace p;
	for (int i = 0; i < na; ++i)
		for (int j = 0; j < nb; ++j)
			p.labels.push_back(join_labels(a.labels[i], b.labels[j]));
	int n = na * nb;
	p.dist.resize(static_cast<size_t>(n) * n);
	for (int i = 0; i < na; ++i)
		for (int j = 0; j < nb; ++j)
			for (int k = 0; k < na; ++k)
				for (int l = 0; l < nb; ++l)
					p.d(i * nb + j, k * nb + l) = a.d(i, k) + b.d(j, l);
	p.flavor = infer_flavor(p.dist, n);
	return p;
}

WeightedGraph cartesian_product_graph(const WeightedGraph &g, const WeightedGraph &h) {
	WeightedGraph p;
	int nh = static_cast<int>(h.vertices.size());
	for (const auto &u : g.vertices)
		for (const auto &v : h.vertices)
			p.add_vertex(join_labels(u, v));
	for (const auto &e : g.edges)
		for (int j = 0; j < nh; ++j)
			p.add_edge(e.u * nh + j, e.v * nh + j, e.w);
	for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i)
		for (const auto &e : h.edges)
			p.add_edge(i * nh + e.u, i * nh + e.v, e.w);
	return p;
}

XRational degeneracy_degree(const FiniteMetricSpace &x, int i, int j, int k) {
	if (x.d(i, j).is_inf() || x.d(j, k).is_inf() || x.d(i, k).is_inf())
		throw PreconditionError("extended triangle: degeneracy degree needs finite pairwise distances");
	if (i == j || j == k || i == k)
		return XRational(0); // a cyclic order puts the repeated pair adjacent
	XRational best = XRational::infinity();
	int idx[3] = {i, j, k};
	for (int t = 0; t < 3; ++t) {
		int a = idx[t], b = idx[(t + 1) % 3], c = idx[(t + 2) % 3];
		XRational v = x.d(a, b) + x.d(b, c) - x.d(a, c);
		if (v < best)
			best = v;
	}
	return best;
}

static bool extend_isometry(const FiniteMetricSpace &a, const FiniteMetricSpace &b,
                            std::vector<int> &img, std::vector<bool> &used, int depth) {
	int n = a.n();
	if (depth == n)
		return true;
	for (int cand = 0; cand < n; ++cand) {
		if (used[cand])
			continue;
		bool ok = true;
		for (int p = 0; p <= depth && ok; ++p) {
			int q = (p == depth) ? cand : img[p];
			if (!(b.d(q, cand) == a.d(p, depth)))
				ok = false;
		}
		if (!ok)
			continue;
		img[depth] = cand;
		used[cand] = true;
		if (extend_isometry(a, b, img, used, depth + 1))
			return true;
		used[cand] = false;
	}
	return false;
}

std::optional<std::vector<int>> find_isometry(const FiniteMetricSpace &a, const FiniteMetricSpace &b) {
	if (a.n() != b.n())
		return std::nullopt;
	std::vector<int> img(a.n(), -1);
	std::vector<bool> used(a.n(), false);
	if (extend_isometry(a, b, img, used, 0))
		return img;
	return std::nullopt;
}

bool connected(const FiniteMetricSpace &x) {
	for (const auto &v : x.dist)
		if (v.is_inf())
			return false;
	return true;
}

} // namespace metfib
