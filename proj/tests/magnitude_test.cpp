#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "metfib/builtins.hpp"
#include "metfib/magnitude.hpp"

#include <algorithm>
#include <numeric>

using namespace metfib;

namespace {

const std::vector<Rational> kSamples = {Rational(1, 5), Rational(1, 3), Rational(1, 2),
                                        Rational(2, 3), Rational(4, 5)};

// plain rational Gaussian elimination on the similarity matrix q^d(i,j);
// columns without a pivot are skipped and the system must stay consistent
Rational magnitude_oracle(const FiniteMetricSpace &space, const Rational &q) {
	int n = space.n();
	std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1, Rational(1)));
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			unsigned long d = space.d(i, j).finite().num.convert_to<unsigned long>();
			m[i][j] = pow(q, d);
		}
	std::vector<int> pivots;
	int rank = 0;
	for (int col = 0; col < n; ++col) {
		int pivot = -1;
		for (int i = rank; i < n && pivot < 0; ++i)
			if (!(m[i][col] == Rational(0)))
				pivot = i;
		if (pivot < 0)
			continue;
		std::swap(m[rank], m[pivot]);
		for (int i = rank + 1; i < n; ++i) {
			Rational factor = m[i][col] / m[rank][col];
			for (int j = col; j <= n; ++j)
				m[i][j] = m[i][j] - factor * m[rank][j];
		}
		pivots.push_back(col);
		++rank;
	}
	for (int i = rank; i < n; ++i)
		REQUIRE(m[i][n] == Rational(0));
	std::vector<Rational> x(n, Rational(0));
	for (int i = rank - 1; i >= 0; --i) {
		Rational acc = m[i][n];
		for (int j = pivots[i] + 1; j < n; ++j)
			acc = acc - m[i][j] * x[j];
		x[pivots[i]] = acc / m[i][pivots[i]];
	}
	Rational sum(0);
	for (const auto &xi : x)
		sum = sum + xi;
	return sum;
}

Rational complete_formula(int n, const Rational &q) {
	return Rational(n) / (Rational(1) + Rational(n - 1) * q);
}

Rational prism_formula(const Rational &q) {
	return Rational(6) / (Rational(1) + Rational(3) * q + Rational(2) * q * q);
}

FiniteMetricSpace collapsed_pair() {
	FiniteMetricSpace x;
	x.labels = {"a", "b"};
	x.dist.assign(4, XRational(0));
	x.flavor = Flavor::QuasiMetric;
	return x;
}

} // namespace

TEST_CASE("small closed forms") {
	CHECK(magnitude_at(builtin_space("K2"), Rational(1, 2)) == Rational(4, 3));
	FiniteMetricSpace one;
	one.labels = {"p"};
	one.dist = {XRational(0)};
	CHECK(magnitude_at(one, Rational(1, 3)) == Rational(1));
	FiniteMetricSpace empty;
	CHECK(magnitude_at(empty, Rational(1, 3)) == Rational(0));

	for (const auto &q : kSamples) {
		CHECK(magnitude_at(builtin_space("K2"), q) == complete_formula(2, q));
		CHECK(magnitude_at(builtin_space("K3"), q) == complete_formula(3, q));
		CHECK(magnitude_at(builtin_space("K4"), q) == complete_formula(4, q));
	}
}

TEST_CASE("agreement with the elimination oracle") {
	for (const char *name : {"K3", "C4", "C5", "C6", "prism", "K33fib"}) {
		FiniteMetricSpace x = name == std::string("K33fib")
		                          ? k33_fibration().total
		                          : builtin_space(name);
		for (const auto &q : {Rational(1, 3), Rational(1, 2), Rational(7, 9)}) {
			INFO(name, " at ", to_string(q));
			CHECK(magnitude_at(x, q) == magnitude_oracle(x, q));
		}
	}
}

TEST_CASE("the prism and the bipartite total share one magnitude function") {
	FiniteMetricSpace prism = builtin_space("prism");
	FiniteMetricSpace k33 = k33_fibration().total;
	for (const auto &q : kSamples) {
		Rational want = prism_formula(q);
		CHECK(magnitude_at(prism, q) == want);
		CHECK(magnitude_at(k33, q) == want);
	}
}

TEST_CASE("magnitude is invariant under relabeling") {
	FiniteMetricSpace c5 = builtin_space("C5");
	std::vector<int> perm = {3, 0, 4, 1, 2};
	FiniteMetricSpace shuffled;
	shuffled.labels.resize(5);
	shuffled.dist.resize(25);
	shuffled.flavor = c5.flavor;
	for (int i = 0; i < 5; ++i) {
		shuffled.labels[perm[i]] = c5.labels[i];
		for (int j = 0; j < 5; ++j)
			shuffled.d(perm[i], perm[j]) = c5.d(i, j);
	}
	REQUIRE(!validate_space(shuffled));
	for (const auto &q : kSamples)
		CHECK(magnitude_at(shuffled, q) == magnitude_at(c5, q));
}

TEST_CASE("magnitude multiplies over direct sums of distances") {
	std::vector<FiniteMetricSpace> spaces = {builtin_space("K2"), builtin_space("K3"),
	                                         builtin_space("C4"), builtin_space("C5")};
	for (size_t i = 0; i < spaces.size(); ++i)
		for (size_t j = 0; j < spaces.size(); ++j) {
			FiniteMetricSpace prod = l1_product(spaces[i], spaces[j]);
			for (const auto &q : {Rational(1, 3), Rational(3, 4)}) {
				CHECK(magnitude_at(prod, q) ==
				      magnitude_at(spaces[i], q) * magnitude_at(spaces[j], q));
			}
		}
}

TEST_CASE("error conditions") {
	FiniteMetricSpace k2 = builtin_space("K2");
	CHECK_THROWS_AS(magnitude_at(k2, Rational(0)), PreconditionError);
	CHECK_THROWS_AS(magnitude_at(k2, Rational(1)), PreconditionError);
	CHECK_THROWS_AS(magnitude_at(k2, Rational(3, 2)), PreconditionError);
	CHECK_THROWS_AS(magnitude_at(k2, Rational(-1, 2)), PreconditionError);

	SUBCASE("distances must be integers") {
		FiniteMetricSpace half = k2;
		half.d(0, 1) = Rational(1, 2);
		half.d(1, 0) = Rational(1, 2);
		REQUIRE(!validate_space(half));
		CHECK_THROWS_AS(magnitude_at(half, Rational(1, 2)), PreconditionError);
	}
	SUBCASE("distances must be finite") {
		FiniteMetricSpace split = k2;
		split.d(0, 1) = XRational::infinity();
		split.d(1, 0) = XRational::infinity();
		split.flavor = Flavor::ExtendedMetric;
		REQUIRE(!validate_space(split));
		CHECK_THROWS_AS(magnitude_at(split, Rational(1, 2)), PreconditionError);
	}
	SUBCASE("the space itself must be valid") {
		FiniteMetricSpace bad = k2;
		bad.d(0, 1) = Rational(2);
		CHECK_THROWS_AS(magnitude_at(bad, Rational(1, 2)), PreconditionError);
	}
	SUBCASE("identical points still admit a weighting") {
		// the similarity matrix is singular but the weighting system
		// stays consistent, and any weighting sums to 1
		for (const auto &q : kSamples)
			CHECK(magnitude_at(collapsed_pair(), q) == Rational(1));
	}
	SUBCASE("no weighting exists at a bad scale") {
		// K_{2,5} at q = 1/2: the similarity matrix has a null vector
		// supported as -2 on the small side and 1 on the large side,
		// whose entries sum to 1, so no weighting can exist
		FiniteMetricSpace k25 = shortest_path_metric(complete_bipartite_graph(2, 5));
		CHECK_THROWS_AS(magnitude_at(k25, Rational(1, 2)), SingularMatrixError);
		CHECK(magnitude_at(k25, Rational(1, 3)) == magnitude_oracle(k25, Rational(1, 3)));
		CHECK(magnitude_at(k25, Rational(7, 9)) == magnitude_oracle(k25, Rational(7, 9)));
	}
}

TEST_CASE("product reports") {
	SUBCASE("the bipartite total multiplies over base and fiber") {
		MetricFibration k33 = k33_fibration();
		ProductReport r = check_product(k33.total, builtin_space("K3"), builtin_space("K2"),
		                                kSamples);
		CHECK(r.all_equal);
		REQUIRE(r.samples.size() == kSamples.size());
		for (const auto &s : r.samples) {
			CHECK(!s.skipped);
			CHECK(s.equal);
			CHECK(s.total_value == s.base_value * s.fiber_value);
		}
	}
	SUBCASE("the prism multiplies over base and fiber") {
		ProductReport r = check_product(builtin_space("prism"), builtin_space("K3"),
		                                builtin_space("K2"), kSamples);
		CHECK(r.all_equal);
	}
	SUBCASE("unrelated spaces do not multiply") {
		ProductReport r = check_product(builtin_space("C5"), builtin_space("K2"),
		                                builtin_space("K2"), kSamples);
		CHECK(!r.all_equal);
		CHECK(!r.samples[0].equal);
	}
	SUBCASE("samples without a weighting are skipped without failing the report") {
		FiniteMetricSpace k25 = shortest_path_metric(complete_bipartite_graph(2, 5));
		FiniteMetricSpace pt;
		pt.labels = {"p"};
		pt.dist = {XRational(0)};
		ProductReport r = check_product(k25, k25, pt, kSamples);
		CHECK(r.all_equal);
		REQUIRE(r.samples.size() == kSamples.size());
		CHECK(r.samples[2].skipped); // q = 1/2
		for (size_t i = 0; i < r.samples.size(); ++i) {
			CHECK(r.samples[i].skipped == (i == 2));
			if (!r.samples[i].skipped)
				CHECK(r.samples[i].equal);
		}
	}
}
