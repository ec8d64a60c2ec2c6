#include "metfib/io.hpp"

#include <deque>
#include <fstream>
#include <optional>
#include <sstream>

namespace metfib {

namespace {

std::vector<std::string> tokenize(const std::string &line) {
	std::vector<std::string> out;
	std::istringstream ss(line);
	std::string tok;
	while (ss >> tok)
		out.push_back(tok);
	return out;
}

// Hands out non-blank, non-comment lines with their line numbers and allows
// one line of pushback so block readers can peek.
struct LineReader {
	std::istream &in;
	std::string name;
	int line_no = 0;
	std::optional<std::string> pushed;
	int pushed_no = 0;

	LineReader(std::istream &s, std::string n) : in(s), name(std::move(n)) {}

	[[noreturn]] void fail(int at, const std::string &what) const {
		throw ParseError(name + ":" + std::to_string(at) + ": " + what);
	}
	[[noreturn]] void fail(const std::string &what) const { fail(cur(), what); }
	int cur() const { return pushed ? pushed_no : line_no; }

	std::optional<std::string> next() {
		if (pushed) {
			auto l = std::move(*pushed);
			pushed.reset();
			line_no = pushed_no;
			return l;
		}
		std::string l;
		while (std::getline(in, l)) {
			++line_no;
			size_t i = l.find_first_not_of(" \t\r");
			if (i == std::string::npos || l[i] == '#')
				continue;
			return l;
		}
		return std::nullopt;
	}

	void push_back(std::string l) {
		pushed = std::move(l);
		pushed_no = line_no;
	}

	std::string need(const std::string &what) {
		auto l = next();
		if (!l)
			fail(line_no + 1, "unexpected end of input, expected " + what);
		return *l;
	}

	void finish() {
		if (auto l = next())
			fail("trailing content '" + *l + "'");
	}
};

XRational parse_dist(LineReader &r, const std::string &tok) {
	try {
		return parse_xrational(tok);
	} catch (const std::invalid_argument &e) {
		r.fail(e.what());
	}
}

int parse_count(LineReader &r, const std::string &tok, const std::string &what) {
	try {
		size_t used = 0;
		int v = std::stoi(tok, &used);
		if (used != tok.size() || v < 0)
			throw std::invalid_argument(tok);
		return v;
	} catch (const std::exception &) {
		r.fail("bad " + what + " '" + tok + "'");
	}
}

FiniteMetricSpace read_dmat_block(LineReader &r) {
	FiniteMetricSpace x;
	auto head = tokenize(r.need("point count"));
	if (head.size() != 1)
		r.fail("expected a lone point count");
	int n = parse_count(r, head[0], "point count");

	auto line = r.need("labels or matrix row");
	auto toks = tokenize(line);
	if (!toks.empty() && toks[0] == "labels:") {
		if (static_cast<int>(toks.size()) - 1 != n)
			r.fail("expected " + std::to_string(n) + " labels, got " +
			       std::to_string(toks.size() - 1));
		x.labels.assign(toks.begin() + 1, toks.end());
	} else {
		r.push_back(line);
		for (int i = 0; i < n; ++i)
			x.labels.push_back("p" + std::to_string(i));
	}

	x.dist.resize(static_cast<size_t>(n) * n);
	for (int i = 0; i < n; ++i) {
		auto row = tokenize(r.need("matrix row"));
		if (static_cast<int>(row.size()) != n)
			r.fail("expected " + std::to_string(n) + " entries, got " +
			       std::to_string(row.size()));
		for (int j = 0; j < n; ++j)
			x.dist[static_cast<size_t>(i) * n + j] = parse_dist(r, row[j]);
	}
	x.flavor = infer_flavor(x.dist, n);
	return x;
}

FiniteNormedGroup read_grp_block(LineReader &r) {
	FiniteNormedGroup g;
	auto toks = tokenize(r.need("'elements:' line"));
	if (toks.empty() || toks[0] != "elements:")
		r.fail("expected 'elements:' line");
	g.elements.assign(toks.begin() + 1, toks.end());
	int n = g.n();
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < i; ++j)
			if (g.elements[i] == g.elements[j])
				r.fail("duplicate element name '" + g.elements[i] + "'");

	toks = tokenize(r.need("'table:' line"));
	if (toks.size() != 1 || toks[0] != "table:")
		r.fail("expected 'table:' line");
	g.table.resize(static_cast<size_t>(n) * n);
	for (int i = 0; i < n; ++i) {
		auto row = tokenize(r.need("table row"));
		if (static_cast<int>(row.size()) != n)
			r.fail("expected " + std::to_string(n) + " entries, got " +
			       std::to_string(row.size()));
		for (int j = 0; j < n; ++j) {
			int k = g.index_of(row[j]);
			if (k < 0)
				r.fail("unknown element '" + row[j] + "'");
			g.table[static_cast<size_t>(i) * n + j] = k;
		}
	}

	toks = tokenize(r.need("'norm:' line"));
	if (toks.empty() || toks[0] != "norm:")
		r.fail("expected 'norm:' line");
	if (static_cast<int>(toks.size()) - 1 != n)
		r.fail("expected " + std::to_string(n) + " norms, got " +
		       std::to_string(toks.size() - 1));
	for (int i = 0; i < n; ++i)
		g.norm.push_back(parse_dist(r, toks[i + 1]));

	if (!g.finalize())
		r.fail("multiplication table has no unit or misses inverses");
	return g;
}

int label_index(LineReader &r, const FiniteMetricSpace &x, const std::string &tok,
                const std::string &what) {
	int i = x.index_of(tok);
	if (i < 0)
		r.fail("unknown " + what + " '" + tok + "'");
	return i;
}

} // namespace

FiniteMetricSpace read_dmat(std::istream &in, const std::string &name) {
	LineReader r(in, name);
	auto x = read_dmat_block(r);
	r.finish();
	return x;
}

void write_dmat(std::ostream &out, const FiniteMetricSpace &x) {
	int n = x.n();
	out << n << "\n";
	out << "labels:";
	for (const auto &l : x.labels)
		out << " " << l;
	out << "\n";
	for (int i = 0; i < n; ++i) {
		for (int j = 0; j < n; ++j)
			out << (j ? " " : "") << to_string(x.d(i, j));
		out << "\n";
	}
}

WeightedGraph read_wg(std::istream &in, const std::string &name) {
	LineReader r(in, name);
	WeightedGraph g;
	while (auto line = r.next()) {
		auto toks = tokenize(*line);
		if (toks[0] == "v") {
			if (toks.size() != 2)
				r.fail("expected 'v <name>'");
			for (const auto &v : g.vertices)
				if (v == toks[1])
					r.fail("duplicate vertex '" + toks[1] + "'");
			g.vertices.push_back(toks[1]);
		} else if (toks[0] == "e") {
			if (toks.size() != 3 && toks.size() != 4)
				r.fail("expected 'e <name1> <name2> [weight]'");
			WeightedGraph::Edge e;
			e.u = e.v = -1;
			for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
				if (g.vertices[i] == toks[1])
					e.u = i;
				if (g.vertices[i] == toks[2])
					e.v = i;
			}
			if (e.u < 0)
				r.fail("unknown vertex '" + toks[1] + "'");
			if (e.v < 0)
				r.fail("unknown vertex '" + toks[2] + "'");
			e.w = Rational(1);
			if (toks.size() == 4) {
				try {
					e.w = parse_rational(toks[3]);
				} catch (const std::invalid_argument &ex) {
					r.fail(ex.what());
				}
			}
			g.edges.push_back(e);
		} else {
			r.fail("unknown line kind '" + toks[0] + "'");
		}
	}
	return g;
}

void write_wg(std::ostream &out, const WeightedGraph &g) {
	for (const auto &v : g.vertices)
		out << "v " << v << "\n";
	for (const auto &e : g.edges)
		out << "e " << g.vertices[e.u] << " " << g.vertices[e.v] << " "
		    << to_string(e.w) << "\n";
}

FiniteNormedGroup read_grp(std::istream &in, const std::string &name) {
	LineReader r(in, name);
	auto g = read_grp_block(r);
	r.finish();
	return g;
}

void write_grp(std::ostream &out, const FiniteNormedGroup &g) {
	int n = g.n();
	out << "elements:";
	for (const auto &e : g.elements)
		out << " " << e;
	out << "\ntable:\n";
	for (int i = 0; i < n; ++i) {
		for (int j = 0; j < n; ++j)
			out << (j ? " " : "") << g.elements[g.mul(i, j)];
		out << "\n";
	}
	out << "norm:";
	for (const auto &v : g.norm)
		out << " " << to_string(v);
	out << "\n";
}

MetricFibration read_fib(std::istream &in, const std::string &name) {
	LineReader r(in, name);
	MetricFibration f;
	f.total = read_dmat_block(r);
	f.base = read_dmat_block(r);
	f.proj.assign(f.total.n(), -1);
	while (auto line = r.next()) {
		auto toks = tokenize(*line);
		if (toks[0] != "p" || toks.size() != 3)
			r.fail("expected 'p <total_label> <base_label>'");
		int t = label_index(r, f.total, toks[1], "total point");
		int b = label_index(r, f.base, toks[2], "base point");
		if (f.proj[t] >= 0)
			r.fail("duplicate projection for '" + toks[1] + "'");
		f.proj[t] = b;
	}
	for (int t = 0; t < f.total.n(); ++t)
		if (f.proj[t] < 0)
			r.fail("no projection given for '" + f.total.labels[t] + "'");
	return f;
}

void write_fib(std::ostream &out, const MetricFibration &f) {
	write_dmat(out, f.total);
	write_dmat(out, f.base);
	for (int t = 0; t < f.total.n(); ++t)
		out << "p " << f.total.labels[t] << " " << f.base.labels[f.proj[t]] << "\n";
}

MetricAction read_act(std::istream &in, const std::string &name) {
	LineReader r(in, name);
	MetricAction a;
	a.base = read_dmat_block(r);
	int n = a.base.n();
	for (int i = 0; i < n; ++i)
		a.fibers.push_back(read_dmat_block(r));

	a.transport.assign(n, {});
	for (int x = 0; x < n; ++x) {
		a.transport[x].assign(n, {});
		int m = a.fibers[x].n();
		std::vector<int> id(m);
		for (int i = 0; i < m; ++i)
			id[i] = i;
		a.transport[x][x] = id;
	}

	std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
	while (auto line = r.next()) {
		auto toks = tokenize(*line);
		if (toks[0] != "t" || toks.size() < 3)
			r.fail("expected 't <x> <x'> <a>-><b> ...'");
		int x = label_index(r, a.base, toks[1], "base point");
		int y = label_index(r, a.base, toks[2], "base point");
		if (seen[x][y])
			r.fail("duplicate transport for (" + toks[1] + ", " + toks[2] + ")");
		seen[x][y] = true;
		std::vector<int> map(a.fibers[x].n(), -1);
		if (static_cast<int>(toks.size()) - 3 != a.fibers[x].n())
			r.fail("expected " + std::to_string(a.fibers[x].n()) + " pairs, got " +
			       std::to_string(toks.size() - 3));
		for (size_t i = 3; i < toks.size(); ++i) {
			auto arrow = toks[i].find("->");
			if (arrow == std::string::npos)
				r.fail("bad pair '" + toks[i] + "', expected '<a>-><b>'");
			int from = label_index(r, a.fibers[x], toks[i].substr(0, arrow),
			                       "fiber point");
			int to = label_index(r, a.fibers[y], toks[i].substr(arrow + 2),
			                     "fiber point");
			if (map[from] >= 0)
				r.fail("fiber point '" + toks[i].substr(0, arrow) +
				       "' mapped twice");
			map[from] = to;
		}
		a.transport[x][y] = map;
	}
	for (int x = 0; x < n; ++x)
		for (int y = 0; y < n; ++y)
			if (x != y && !seen[x][y])
				r.fail("no transport given for (" + a.base.labels[x] + ", " +
				       a.base.labels[y] + ")");
	return a;
}

void write_act(std::ostream &out, const MetricAction &a) {
	write_dmat(out, a.base);
	int n = a.base.n();
	for (int i = 0; i < n; ++i)
		write_dmat(out, a.fibers[i]);
	for (int x = 0; x < n; ++x)
		for (int y = 0; y < n; ++y) {
			if (x == y)
				continue;
			out << "t " << a.base.labels[x] << " " << a.base.labels[y];
			for (int i = 0; i < a.fibers[x].n(); ++i)
				out << " " << a.fibers[x].labels[i] << "->"
				    << a.fibers[y].labels[a.transport[x][y][i]];
			out << "\n";
		}
}

Cocycle read_coc(std::istream &in, const std::string &name) {
	LineReader r(in, name);
	Cocycle c;
	c.base = read_dmat_block(r);
	c.group = read_grp_block(r);
	int n = c.base.n();

	// Given entries, grouped by middle index: given[j] holds (i, k, g, line).
	struct Given {
		int i, k, g, line;
	};
	std::vector<std::vector<Given>> given(n);
	while (auto line = r.next()) {
		auto toks = tokenize(*line);
		if (toks[0] != "a" || toks.size() != 5)
			r.fail("expected 'a <i> <j> <k> <element>'");
		int i = parse_count(r, toks[1], "point index");
		int j = parse_count(r, toks[2], "point index");
		int k = parse_count(r, toks[3], "point index");
		if (i >= n || j >= n || k >= n)
			r.fail("point index out of range");
		int g = c.group.index_of(toks[4]);
		if (g < 0)
			r.fail("unknown element '" + toks[4] + "'");
		given[j].push_back({i, k, g, r.cur()});
	}

	// Within the slice of a fixed middle index the identity makes every
	// entry a difference a_ijk = t_i^-1 t_k of per-point values, so the
	// given entries are edges of a graph: propagate t over components
	// (root value = unit), then read all entries back off the t's. Any
	// entry not constrained this way comes out as the unit.
	c.a.assign(static_cast<size_t>(n) * n * n, c.group.unit);
	for (int j = 0; j < n; ++j) {
		std::vector<std::vector<std::pair<int, const Given *>>> adj(n);
		for (const auto &e : given[j]) {
			if (e.i == e.k && e.g != c.group.unit)
				r.fail(e.line, "entry (" + std::to_string(e.i) + "," +
				                   std::to_string(j) + "," + std::to_string(e.k) +
				                   ") must be the unit");
			adj[e.i].push_back({e.k, &e});
			adj[e.k].push_back({e.i, &e});
		}
		std::vector<int> t(n, -1);
		for (int root = 0; root < n; ++root) {
			if (t[root] >= 0)
				continue;
			t[root] = c.group.unit;
			std::deque<int> queue{root};
			while (!queue.empty()) {
				int u = queue.front();
				queue.pop_front();
				for (auto [v, e] : adj[u]) {
					// a_ijk = g gives t_k = t_i g either way around.
					int tv = u == e->i ? c.group.mul(t[u], e->g)
					                   : c.group.mul(t[u], c.group.inv(e->g));
					if (t[v] < 0) {
						t[v] = tv;
						queue.push_back(v);
					} else if (t[v] != tv) {
						r.fail(e->line,
						       "entry (" + std::to_string(e->i) + "," +
						           std::to_string(j) + "," + std::to_string(e->k) +
						           ") contradicts earlier entries");
					}
				}
			}
		}
		for (int i = 0; i < n; ++i)
			for (int k = 0; k < n; ++k)
				c.at(i, j, k) = c.group.mul(c.group.inv(t[i]), t[k]);
	}
	return c;
}

void write_coc(std::ostream &out, const Cocycle &c) {
	write_dmat(out, c.base);
	write_grp(out, c.group);
	int n = c.base.n();
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			for (int k = 0; k < n; ++k)
				out << "a " << i << " " << j << " " << k << " "
				    << c.group.elements[c.at(i, j, k)] << "\n";
}

FiniteMetricSpace read_dmat_file(const std::string &path) {
	std::ifstream in(path);
	if (!in)
		throw ParseError(path + ": cannot open");
	return read_dmat(in, path);
}

WeightedGraph read_wg_file(const std::string &path) {
	std::ifstream in(path);
	if (!in)
		throw ParseError(path + ": cannot open");
	return read_wg(in, path);
}

FiniteNormedGroup read_grp_file(const std::string &path) {
	std::ifstream in(path);
	if (!in)
		throw ParseError(path + ": cannot open");
	return read_grp(in, path);
}

MetricFibration read_fib_file(const std::string &path) {
	std::ifstream in(path);
	if (!in)
		throw ParseError(path + ": cannot open");
	return read_fib(in, path);
}

MetricAction read_act_file(const std::string &path) {
	std::ifstream in(path);
	if (!in)
		throw ParseError(path + ": cannot open");
	return read_act(in, path);
}

Cocycle read_coc_file(const std::string &path) {
	std::ifstream in(path);
	if (!in)
		throw ParseError(path + ": cannot open");
	return read_coc(in, path);
}

} // namespace metfib
