#include "metfib/pi1.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace metfib {

ColineComplex coline_complex(const FiniteMetricSpace &x) {
	if (auto v = validate_space(x))
		throw PreconditionError("invalid space: " + v->message());
	if (x.flavor != Flavor::Metric)
		throw PreconditionError("coline complex needs a Metric space");
	ColineComplex c;
	c.space = x;
	for (int i = 0; i < x.n(); ++i)
		for (int j = i + 1; j < x.n(); ++j)
			for (int k = j + 1; k < x.n(); ++k)
				if (degeneracy_degree(x, i, j, k) == XRational{})
					c.triangles.push_back({i, j, k});
	return c;
}

static std::vector<int> free_reduce(const std::vector<int> &word) {
	std::vector<int> out;
	for (int letter : word) {
		if (!out.empty() && out.back() == -letter)
			out.pop_back();
		else
			out.push_back(letter);
	}
	return out;
}

GroupPresentation pi1_presentation(const ColineComplex &c, int x0) {
	int n = c.space.n();
	if (x0 < 0 || x0 >= n)
		throw PreconditionError("basepoint out of range");
	// The 1-skeleton is complete, so BFS from x0 yields the star: every
	// non-basepoint pair is a generator.
	std::vector<std::vector<int>> gen(n, std::vector<int>(n, 0));
	GroupPresentation p;
	for (int i = 0; i < n; ++i)
		for (int j = i + 1; j < n; ++j) {
			if (i == x0 || j == x0)
				continue;
			p.generators.push_back("g(" + c.space.labels[i] + "," + c.space.labels[j] + ")");
			gen[i][j] = static_cast<int>(p.generators.size());
			gen[j][i] = -gen[i][j];
		}
	for (const auto &t : c.triangles) {
		std::vector<int> word;
		int edges[3][2] = {{t[0], t[1]}, {t[1], t[2]}, {t[2], t[0]}};
		for (auto &e : edges)
			if (gen[e[0]][e[1]] != 0)
				word.push_back(gen[e[0]][e[1]]);
		word = free_reduce(word);
		if (!word.empty())
			p.relators.push_back(word);
	}
	return p;
}

std::string Abelianization::to_string() const {
	if (trivial())
		return "trivial";
	std::string out;
	for (int i = 0; i < free_rank; ++i)
		out += (out.empty() ? "Z" : " x Z");
	for (const auto &d : torsion)
		out += (out.empty() ? "Z/" : " x Z/") + d.str();
	return out;
}

// Smith normal form over the integers, in place. Returns the diagonal.
static std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m) {
	int rows = static_cast<int>(m.size());
	int cols = rows ? static_cast<int>(m[0].size()) : 0;
	std::vector<BigInt> diag;
	int t = 0;
	while (t < rows && t < cols) {
		int pi = -1, pj = -1;
		for (int i = t; i < rows; ++i)
			for (int j = t; j < cols; ++j)
				if (m[i][j] != 0 &&
				    (pi < 0 || abs(m[i][j]) < abs(m[pi][pj])))
					pi = i, pj = j;
		if (pi < 0)
			break;
		std::swap(m[t], m[pi]);
		for (int i = 0; i < rows; ++i)
			std::swap(m[i][t], m[i][pj]);
		bool clean = false;
		while (!clean) {
			clean = true;
			for (int i = t + 1; i < rows; ++i) {
				if (m[i][t] == 0)
					continue;
				BigInt q = m[i][t] / m[t][t];
				for (int j = t; j < cols; ++j)
					m[i][j] -= q * m[t][j];
				if (m[i][t] != 0) { // remainder became the smaller pivot
					std::swap(m[t], m[i]);
					clean = false;
				}
			}
			for (int j = t + 1; j < cols; ++j) {
				if (m[t][j] == 0)
					continue;
				BigInt q = m[t][j] / m[t][t];
				for (int i = t; i < rows; ++i)
					m[i][j] -= q * m[i][t];
				if (m[t][j] != 0) {
					for (int i = 0; i < rows; ++i)
						std::swap(m[i][t], m[i][j]);
					clean = false;
				}
			}
			if (clean) {
				// Pivot must divide the rest of the submatrix.
				for (int i = t + 1; i < rows && clean; ++i)
					for (int j = t + 1; j < cols && clean; ++j)
						if (m[i][j] % m[t][t] != 0) {
							for (int jj = t; jj < cols; ++jj)
								m[t][jj] += m[i][jj];
							clean = false;
						}
			}
		}
		if (m[t][t] < 0)
			for (int j = t; j < cols; ++j)
				m[t][j] = -m[t][j];
		diag.push_back(m[t][t]);
		++t;
	}
	return diag;
}

Abelianization abelianization(const GroupPresentation &p) {
	int gens = static_cast<int>(p.generators.size());
	std::vector<std::vector<BigInt>> m;
	for (const auto &rel : p.relators) {
		std::vector<BigInt> row(gens, 0);
		for (int letter : rel) {
			int g = std::abs(letter) - 1;
			row[g] += (letter > 0) ? 1 : -1;
		}
		m.push_back(std::move(row));
	}
	if (m.empty())
		m.emplace_back(gens, BigInt(0));
	std::vector<BigInt> diag = smith_diagonal(std::move(m));
	Abelianization out;
	out.free_rank = gens - static_cast<int>(diag.size());
	for (const auto &d : diag)
		if (d > 1)
			out.torsion.push_back(d);
	return out;
}

// Todd-Coxeter coset enumeration over the trivial subgroup, HLT style with
// coincidence handling. Column 2g is generator g, column 2g+1 its inverse.
namespace {

struct CosetTable {
	int cols;
	long bound;
	std::vector<std::vector<int>> tab;
	std::vector<int> parent;
	std::queue<int> dead;
	bool overflow = false;

	CosetTable(int ngens, long work_bound) : cols(2 * ngens), bound(work_bound) {
		new_coset();
	}

	int find(int c) {
		while (parent[c] != c) {
			parent[c] = parent[parent[c]];
			c = parent[c];
		}
		return c;
	}

	int new_coset() {
		if (static_cast<long>(tab.size()) >= bound) {
			overflow = true;
			return -1;
		}
		tab.emplace_back(cols, -1);
		parent.push_back(static_cast<int>(parent.size()));
		return static_cast<int>(tab.size()) - 1;
	}

	void merge(int a, int b) {
		a = find(a);
		b = find(b);
		if (a == b)
			return;
		if (a > b)
			std::swap(a, b);
		parent[b] = a;
		dead.push(b);
	}

	void process_coincidences() {
		while (!dead.empty()) {
			int t = dead.front();
			dead.pop();
			for (int x = 0; x < cols; ++x) {
				int u = tab[t][x];
				if (u < 0)
					continue;
				tab[t][x] = -1;
				if (tab[u][x ^ 1] == t)
					tab[u][x ^ 1] = -1;
				int a = find(t), b = find(u);
				if (tab[a][x] >= 0)
					merge(tab[a][x], b);
				else
					tab[a][x] = b;
				a = find(t);
				b = find(u);
				if (tab[b][x ^ 1] >= 0)
					merge(tab[b][x ^ 1], a);
				else
					tab[b][x ^ 1] = a;
			}
		}
	}

	// Traces the relator at coset c, defining cosets to fill gaps.
	void scan_and_fill(int c, const std::vector<int> &word) {
		int f = c, b = c;
		int i = 0, j = static_cast<int>(word.size()) - 1;
		while (true) {
			while (i <= j && tab[f][word[i]] >= 0)
				f = tab[f][word[i++]];
			if (i > j) {
				if (f != b) {
					merge(f, b);
					process_coincidences();
				}
				return;
			}
			while (j >= i && tab[b][word[j] ^ 1] >= 0)
				b = tab[b][word[j--] ^ 1];
			if (j < i) {
				merge(f, b);
				process_coincidences();
				return;
			}
			if (j == i) {
				tab[f][word[i]] = b;
				tab[b][word[i] ^ 1] = f;
				return;
			}
			int d = new_coset();
			if (d < 0)
				return;
			tab[f][word[i]] = d;
			tab[d][word[i] ^ 1] = f;
			f = d;
			++i;
		}
	}
};

} // namespace

TrivialityResult is_trivial_group(const GroupPresentation &p, long work_bound) {
	Abelianization ab = abelianization(p);
	if (!ab.trivial())
		return {Triviality::Nontrivial, "abelianization is " + ab.to_string()};
	int ngens = static_cast<int>(p.generators.size());
	std::vector<std::vector<int>> words;
	for (const auto &rel : p.relators) {
		std::vector<int> w;
		for (int letter : rel)
			w.push_back(letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1);
		if (!w.empty())
			words.push_back(std::move(w));
	}
	CosetTable ct(ngens, work_bound);
	for (int c = 0; c < static_cast<int>(ct.tab.size()) && !ct.overflow; ++c) {
		if (ct.find(c) != c)
			continue;
		for (const auto &w : words) {
			if (ct.find(c) != c)
				break;
			ct.scan_and_fill(c, w);
			if (ct.overflow)
				break;
		}
		if (ct.overflow)
			break;
		if (ct.find(c) != c)
			continue;
		for (int x = 0; x < ct.cols && !ct.overflow; ++x)
			if (ct.tab[c][x] < 0) {
				int d = ct.new_coset();
				if (d < 0)
					break;
				ct.tab[c][x] = d;
				ct.tab[d][x ^ 1] = c;
			}
	}
	if (ct.overflow)
		return {Triviality::Unknown,
		        "coset enumeration exceeded " + std::to_string(work_bound) + " cosets"};
	long live = 0;
	for (int c = 0; c < static_cast<int>(ct.tab.size()); ++c)
		if (ct.find(c) == c)
			++live;
	if (live == 1)
		return {Triviality::Trivial, "coset enumeration closed with 1 coset"};
	return {Triviality::Nontrivial,
	        "coset enumeration closed with " + std::to_string(live) + " cosets"};
}

XRational loop_norm_upper_bound(const FiniteMetricSpace &x, const LoopClass &l, int search_bound) {
	if (auto v = validate_space(x))
		throw PreconditionError("invalid space: " + v->message());
	if (x.flavor != Flavor::Metric)
		throw PreconditionError("loop norms need a Metric space");
	if (l.points.size() < 2 || l.points.front() != l.basepoint || l.points.back() != l.basepoint)
		throw PreconditionError("loop must start and end at the basepoint");
	for (int v : l.points)
		if (v < 0 || v >= x.n())
			throw PreconditionError("loop point out of range");

	auto move_weight = [&x](int u, int m, int v) -> XRational {
		if (u == v)
			return XRational{};
		return x.d(u, m) + x.d(m, v) - x.d(u, v);
	};
	std::vector<int> target{l.basepoint, l.basepoint};
	using State = std::pair<XRational, std::vector<int>>;
	std::map<std::vector<int>, XRational> best;
	std::priority_queue<State, std::vector<State>, std::greater<State>> heap;
	best[l.points] = XRational{};
	heap.emplace(XRational{}, l.points);
	while (!heap.empty()) {
		auto [dist, cur] = heap.top();
		heap.pop();
		auto it = best.find(cur);
		if (it != best.end() && it->second < dist)
			continue;
		if (cur == target)
			return dist;
		auto relax = [&](std::vector<int> &&next, const XRational &w) {
			XRational nd = dist + w;
			auto [slot, fresh] = best.try_emplace(next, nd);
			if (!fresh) {
				if (!(nd < slot->second))
					return;
				slot->second = nd;
			}
			heap.emplace(nd, std::move(next));
		};
		int len = static_cast<int>(cur.size());
		for (int t = 1; t + 1 < len; ++t) {
			std::vector<int> next = cur;
			next.erase(next.begin() + t);
			relax(std::move(next), move_weight(cur[t - 1], cur[t], cur[t + 1]));
		}
		if (len < search_bound)
			for (int t = 1; t < len; ++t)
				for (int v = 0; v < x.n(); ++v) {
					std::vector<int> next = cur;
					next.insert(next.begin() + t, v);
					relax(std::move(next), move_weight(cur[t - 1], v, cur[t]));
				}
	}
	return XRational::infinity();
}

std::vector<std::vector<int>> hom_classes_to(const GroupPresentation &p,
                                             const FiniteNormedGroup &g) {
	int ngens = static_cast<int>(p.generators.size());
	// Relators become checkable once their highest generator has an image.
	std::vector<std::vector<const std::vector<int> *>> due(ngens + 1);
	for (const auto &rel : p.relators) {
		int top = 0;
		for (int letter : rel)
			top = std::max(top, std::abs(letter));
		due[top].push_back(&rel);
	}
	std::vector<std::vector<int>> found;
	std::vector<int> img(ngens, -1);
	auto satisfied = [&](const std::vector<int> &rel) {
		int acc = g.unit;
		for (int letter : rel)
			acc = g.mul(acc, letter > 0 ? img[letter - 1] : g.inv(img[-letter - 1]));
		return acc == g.unit;
	};
	auto search = [&](auto &&self, int depth) -> void {
		for (const auto *rel : due[depth])
			if (!satisfied(*rel))
				return;
		if (depth == ngens) {
			found.push_back(img);
			return;
		}
		for (int e = 0; e < g.n(); ++e) {
			img[depth] = e;
			self(self, depth + 1);
		}
		img[depth] = -1;
	};
	search(search, 0);
	return conjugacy_partition(g, found).reps;
}

} // namespace metfib
