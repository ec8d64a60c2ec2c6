#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "metfib/builtins.hpp"
#include "metfib/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace metfib;

namespace {

template <typename Fn>
std::string parse_error_of(Fn &&fn) {
	try {
		fn();
	} catch (const ParseError &e) {
		return e.what();
	}
	FAIL("expected a ParseError");
	return "";
}

bool contains(const std::string &hay, const std::string &needle) {
	return hay.find(needle) != std::string::npos;
}

FiniteMetricSpace reread_dmat(const FiniteMetricSpace &x) {
	std::ostringstream os;
	write_dmat(os, x);
	std::istringstream is(os.str());
	return read_dmat(is, "t.dmat");
}

std::string dmat_text(const FiniteMetricSpace &x) {
	std::ostringstream os;
	write_dmat(os, x);
	return os.str();
}

std::string grp_text(const FiniteNormedGroup &g) {
	std::ostringstream os;
	write_grp(os, g);
	return os.str();
}

} // namespace

TEST_CASE("distance matrix round trips") {
	for (const char *name : {"K2", "C5", "prism", "K4"}) {
		FiniteMetricSpace x = builtin_space(name);
		CHECK(same_space(reread_dmat(x), x));
	}

	SUBCASE("one point and empty spaces") {
		FiniteMetricSpace one;
		one.labels = {"p"};
		one.dist = {XRational(0)};
		CHECK(same_space(reread_dmat(one), one));
		FiniteMetricSpace empty;
		CHECK(same_space(reread_dmat(empty), empty));
	}
	SUBCASE("infinite and zero entries keep their flavor") {
		FiniteMetricSpace split;
		split.labels = {"a", "b"};
		split.dist = {XRational(0), XRational::infinity(), XRational::infinity(),
		              XRational(0)};
		split.flavor = Flavor::ExtendedMetric;
		CHECK(same_space(reread_dmat(split), split));

		FiniteMetricSpace quasi;
		quasi.labels = {"a", "b"};
		quasi.dist.assign(4, XRational(0));
		quasi.flavor = Flavor::QuasiMetric;
		CHECK(same_space(reread_dmat(quasi), quasi));
	}
	SUBCASE("fractional distances") {
		FiniteMetricSpace x;
		x.labels = {"a", "b"};
		x.dist = {XRational(0), Rational(3, 7), Rational(3, 7), XRational(0)};
		x.flavor = Flavor::Metric;
		CHECK(same_space(reread_dmat(x), x));
	}
}

TEST_CASE("distance matrix reading details") {
	SUBCASE("labels default to indexed names") {
		std::istringstream is("2\n0 1\n1 0\n");
		FiniteMetricSpace x = read_dmat(is, "t.dmat");
		CHECK(x.labels == std::vector<std::string>{"p0", "p1"});
		CHECK(x.flavor == Flavor::Metric);
	}
	SUBCASE("comments and blank lines are skipped anywhere") {
		std::istringstream is("# header\n\n2\n # indented comment\nlabels: a b\n\n0 1\n1 0\n# tail\n");
		FiniteMetricSpace x = read_dmat(is, "t.dmat");
		CHECK(x.labels == std::vector<std::string>{"a", "b"});
		CHECK(x.d(0, 1) == XRational(1));
	}
	SUBCASE("errors carry file and line") {
		auto msg = parse_error_of([] {
			std::istringstream is("# c\n\n2\nlabels: a b\n0 1\n1 x\n");
			read_dmat(is, "t.dmat");
		});
		CHECK(contains(msg, "t.dmat:6:"));

		msg = parse_error_of([] {
			std::istringstream is("nope\n");
			read_dmat(is, "t.dmat");
		});
		CHECK(contains(msg, "t.dmat:1:"));

		msg = parse_error_of([] {
			std::istringstream is("2\n0 1\n1 0 0\n");
			read_dmat(is, "t.dmat");
		});
		CHECK(contains(msg, "expected 2 entries"));

		msg = parse_error_of([] {
			std::istringstream is("2\nlabels: a\n0 1\n1 0\n");
			read_dmat(is, "t.dmat");
		});
		CHECK(contains(msg, "expected 2 labels"));

		msg = parse_error_of([] {
			std::istringstream is("2\n0 1\n");
			read_dmat(is, "t.dmat");
		});
		CHECK(contains(msg, "unexpected end of input"));

		msg = parse_error_of([] {
			std::istringstream is("1\n0\nextra\n");
			read_dmat(is, "t.dmat");
		});
		CHECK(contains(msg, "trailing content"));
	}
}

TEST_CASE("weighted graph round trips") {
	WeightedGraph g;
	g.add_vertex("a");
	g.add_vertex("b");
	g.add_vertex("c");
	g.add_edge(0, 1, Rational(1));
	g.add_edge(1, 2, Rational(3, 2));

	std::ostringstream os;
	write_wg(os, g);
	std::istringstream is(os.str());
	WeightedGraph h = read_wg(is, "t.wg");
	REQUIRE(h.vertices == g.vertices);
	REQUIRE(h.edges.size() == g.edges.size());
	for (size_t i = 0; i < g.edges.size(); ++i) {
		CHECK(h.edges[i].u == g.edges[i].u);
		CHECK(h.edges[i].v == g.edges[i].v);
		CHECK(h.edges[i].w == g.edges[i].w);
	}

	SUBCASE("edge weights default to one") {
		std::istringstream in("v a\nv b\ne a b\n");
		WeightedGraph k = read_wg(in, "t.wg");
		REQUIRE(k.edges.size() == 1);
		CHECK(k.edges[0].w == Rational(1));
	}
	SUBCASE("errors") {
		CHECK(contains(parse_error_of([] {
			      std::istringstream in("v a\nv a\n");
			      read_wg(in, "t.wg");
		      }),
		      "duplicate vertex"));
		CHECK(contains(parse_error_of([] {
			      std::istringstream in("v a\ne a b\n");
			      read_wg(in, "t.wg");
		      }),
		      "unknown vertex 'b'"));
		CHECK(contains(parse_error_of([] {
			      std::istringstream in("q a\n");
			      read_wg(in, "t.wg");
		      }),
		      "unknown line kind"));
		CHECK(contains(parse_error_of([] {
			      std::istringstream in("v a\nv b\ne a b 1 2\n");
			      read_wg(in, "t.wg");
		      }),
		      "t.wg:3:"));
	}
}

TEST_CASE("group round trips") {
	for (const std::string &name : builtin_group_names()) {
		FiniteNormedGroup g = builtin_group(name);
		std::ostringstream os;
		write_grp(os, g);
		std::istringstream is(os.str());
		CHECK(same_group(read_grp(is, "t.grp"), g));
	}

	SUBCASE("errors") {
		CHECK(contains(parse_error_of([] {
			      std::istringstream in("elements: a a\ntable:\na a\na a\nnorm: 0 0\n");
			      read_grp(in, "t.grp");
		      }),
		      "duplicate element"));
		CHECK(contains(parse_error_of([] {
			      std::istringstream in("elements: e g\ntable:\ne g\ng\nnorm: 0 1\n");
			      read_grp(in, "t.grp");
		      }),
		      "expected 2 entries"));
		CHECK(contains(parse_error_of([] {
			      std::istringstream in("elements: e g\ntable:\ne g\ng x\nnorm: 0 1\n");
			      read_grp(in, "t.grp");
		      }),
		      "unknown element 'x'"));
		CHECK(contains(parse_error_of([] {
			      std::istringstream in("elements: e g\ntable:\ne g\ng e\nnorm: 0\n");
			      read_grp(in, "t.grp");
		      }),
		      "expected 2 norms"));
		CHECK(contains(parse_error_of([] {
			      std::istringstream in("elements: a b\ntable:\na a\na a\nnorm: 0 0\n");
			      read_grp(in, "t.grp");
		      }),
		      "no unit"));
	}
}

TEST_CASE("fibration round trips") {
	MetricFibration f = k33_fibration();
	std::ostringstream os;
	write_fib(os, f);
	std::istringstream is(os.str());
	MetricFibration g = read_fib(is, "t.fib");
	CHECK(same_space(g.total, f.total));
	CHECK(same_space(g.base, f.base));
	CHECK(g.proj == f.proj);

	SUBCASE("errors") {
		std::string text = os.str();
		// drop the last projection line
		std::string cut = text.substr(0, text.rfind("p "));
		CHECK(contains(parse_error_of([&] {
			      std::istringstream in(cut);
			      read_fib(in, "t.fib");
		      }),
		      "no projection given"));
		std::string doubled = text + "p " + f.total.labels[0] + " " +
		                      f.base.labels[f.proj[0]] + "\n";
		CHECK(contains(parse_error_of([&] {
			      std::istringstream in(doubled);
			      read_fib(in, "t.fib");
		      }),
		      "duplicate projection"));
		CHECK(contains(parse_error_of([&] {
			      std::istringstream in(text + "p nope " + f.base.labels[0] + "\n");
			      read_fib(in, "t.fib");
		      }),
		      "unknown total point"));
		CHECK(contains(parse_error_of([&] {
			      std::istringstream in(text + "x\n");
			      read_fib(in, "t.fib");
		      }),
		      "expected 'p"));
	}
}

TEST_CASE("action round trips") {
	MetricAction a = action_from_fibration(k33_fibration());
	std::ostringstream os;
	write_act(os, a);
	std::istringstream is(os.str());
	MetricAction b = read_act(is, "t.act");
	REQUIRE(same_space(b.base, a.base));
	REQUIRE(b.fibers.size() == a.fibers.size());
	for (size_t i = 0; i < a.fibers.size(); ++i)
		CHECK(same_space(b.fibers[i], a.fibers[i]));
	CHECK(b.transport == a.transport);

	SUBCASE("omitted diagonal transports default to the identity") {
		for (int x = 0; x < a.base.n(); ++x) {
			std::vector<int> id(a.fibers[x].n());
			for (int i = 0; i < static_cast<int>(id.size()); ++i)
				id[i] = i;
			CHECK(b.transport[x][x] == id);
		}
	}
	SUBCASE("errors") {
		std::string text = os.str();
		std::string cut = text.substr(0, text.rfind("t "));
		CHECK(contains(parse_error_of([&] {
			      std::istringstream in(cut);
			      read_act(in, "t.act");
		      }),
		      "no transport given"));

		size_t line_start = text.rfind("t ");
		std::string doubled = text + text.substr(line_start);
		CHECK(contains(parse_error_of([&] {
			      std::istringstream in(doubled);
			      read_act(in, "t.act");
		      }),
		      "duplicate transport"));

		// rewrite one pair of the last transport line without the arrow
		std::string broken = text;
		size_t arrow = broken.rfind("->");
		broken.replace(arrow, 2, "..");
		CHECK(contains(parse_error_of([&] {
			      std::istringstream in(broken);
			      read_act(in, "t.act");
		      }),
		      "expected '<a>-><b>'"));
	}
	SUBCASE("a fiber point mapped twice is rejected") {
		FiniteMetricSpace base = builtin_space("K2");
		std::string text = dmat_text(base) + dmat_text(builtin_space("K2")) +
		                   dmat_text(builtin_space("K2"));
		text += "t v1 v2 v1->v1 v1->v2\n";
		text += "t v2 v1 v1->v1 v2->v2\n";
		CHECK(contains(parse_error_of([&] {
			      std::istringstream in(text);
			      read_act(in, "t.act");
		      }),
		      "mapped twice"));
	}
}

TEST_CASE("cocycle round trips") {
	FiniteNormedGroup z3 = builtin_group("Z3");
	auto classes = enumerate_cocycle_classes(builtin_space("C5"), z3);
	REQUIRE(classes.size() == 3);
	for (const auto &c : classes) {
		std::ostringstream os;
		write_coc(os, c);
		std::istringstream is(os.str());
		Cocycle back = read_coc(is, "t.coc");
		CHECK(same_space(back.base, c.base));
		CHECK(same_group(back.group, c.group));
		CHECK(back.a == c.a);
	}

	SUBCASE("free entries alone reconstruct the normalized cocycle") {
		const Cocycle &c = classes[1];
		std::ostringstream os;
		write_dmat(os, c.base);
		write_grp(os, c.group);
		for (int q = 2; q < c.base.n(); ++q)
			for (int p = 1; p < q; ++p)
				os << "a 0 " << q << " " << p << " "
				   << c.group.elements[c.at(0, q, p)] << "\n";
		std::istringstream is(os.str());
		Cocycle back = read_coc(is, "t.coc");
		CHECK(back.a == c.a);
	}
	SUBCASE("underdetermined entries default to the unit") {
		std::ostringstream os;
		write_dmat(os, builtin_space("K3"));
		write_grp(os, z3);
		std::istringstream is(os.str());
		Cocycle c = read_coc(is, "t.coc");
		CHECK(c.a == std::vector<int>(27, z3.unit));
	}
	SUBCASE("derived values may contradict a later line") {
		std::ostringstream os;
		write_dmat(os, builtin_space("K3"));
		write_grp(os, z3);
		os << "a 0 2 1 g\n";
		os << "a 1 2 0 g\n";
		std::string text = os.str();
		auto msg = parse_error_of([&] {
			std::istringstream in(text);
			read_coc(in, "t.coc");
		});
		CHECK(contains(msg, "contradicts earlier entries"));
	}
	SUBCASE("repeated outer indices must carry the unit") {
		std::ostringstream os;
		write_dmat(os, builtin_space("K3"));
		write_grp(os, z3);
		os << "a 1 2 1 g\n";
		std::string text = os.str();
		CHECK(contains(parse_error_of([&] {
			      std::istringstream in(text);
			      read_coc(in, "t.coc");
		      }),
		      "must be the unit"));
	}
	SUBCASE("index and element errors") {
		std::string head = dmat_text(builtin_space("K3")) + grp_text(z3);
		CHECK(contains(parse_error_of([&] {
			      std::istringstream in(head + "a 0 3 1 g\n");
			      read_coc(in, "t.coc");
		      }),
		      "out of range"));
		CHECK(contains(parse_error_of([&] {
			      std::istringstream in(head + "a 0 2 1 q\n");
			      read_coc(in, "t.coc");
		      }),
		      "unknown element 'q'"));
		CHECK(contains(parse_error_of([&] {
			      std::istringstream in(head + "a 0 2 g\n");
			      read_coc(in, "t.coc");
		      }),
		      "expected 'a"));
	}
}

TEST_CASE("file wrappers") {
	namespace fs = std::filesystem;
	fs::path dir = fs::path("io_test_tmp");
	fs::create_directories(dir);

	FiniteMetricSpace c5 = builtin_space("C5");
	{
		std::ofstream out(dir / "c5.dmat");
		write_dmat(out, c5);
	}
	CHECK(same_space(read_dmat_file((dir / "c5.dmat").string()), c5));

	MetricFibration f = k33_fibration();
	{
		std::ofstream out(dir / "k33.fib");
		write_fib(out, f);
	}
	MetricFibration g = read_fib_file((dir / "k33.fib").string());
	CHECK(same_space(g.total, f.total));

	CHECK(contains(parse_error_of([&] { read_dmat_file((dir / "missing.dmat").string()); }),
	               "cannot open"));
	CHECK(contains(parse_error_of([&] { read_grp_file((dir / "missing.grp").string()); }),
	               "cannot open"));

	fs::remove_all(dir);
}
