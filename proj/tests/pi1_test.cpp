#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "metfib/builtins.hpp"
#include "metfib/pi1.hpp"
#include "metfib/principal.hpp"

#include <algorithm>
#include <numeric>

using namespace metfib;

namespace {

BigInt int_det(std::vector<std::vector<BigInt>> m) {
	int n = static_cast<int>(m.size());
	BigInt sign = 1, prev = 1;
	for (int k = 0; k < n; ++k) {
		if (m[k][k] == 0) {
			int swap = -1;
			for (int i = k + 1; i < n; ++i)
				if (m[i][k] != 0)
					swap = i;
			if (swap < 0)
				return 0;
			std::swap(m[k], m[swap]);
			sign = -sign;
		}
		for (int i = k + 1; i < n; ++i)
			for (int j = k + 1; j < n; ++j)
				m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
		prev = m[k][k];
	}
	return sign * m[n - 1][n - 1];
}

// gcd-of-minors oracle for invariant factors: d_k = g_k / g_{k-1} with g_k
// the gcd of all k x k minors.
std::vector<BigInt> invariant_factors(const std::vector<std::vector<BigInt>> &m) {
	int rows = static_cast<int>(m.size());
	int cols = rows ? static_cast<int>(m[0].size()) : 0;
	std::vector<BigInt> gcds = {1};
	for (int k = 1; k <= std::min(rows, cols); ++k) {
		BigInt g = 0;
		std::vector<int> ri(k), ci(k);
		std::iota(ri.begin(), ri.end(), 0);
		bool more_rows = true;
		while (more_rows && g != 1) {
			std::iota(ci.begin(), ci.end(), 0);
			bool more_cols = true;
			while (more_cols && g != 1) {
				std::vector<std::vector<BigInt>> minor(k, std::vector<BigInt>(k));
				for (int i = 0; i < k; ++i)
					for (int j = 0; j < k; ++j)
						minor[i][j] = m[ri[i]][ci[j]];
				g = boost::multiprecision::gcd(g, int_det(minor));
				more_cols = false;
				for (int i = k - 1; i >= 0; --i)
					if (ci[i] < cols - (k - i)) {
						++ci[i];
						for (int j = i + 1; j < k; ++j)
							ci[j] = ci[j - 1] + 1;
						more_cols = true;
						break;
					}
			}
			more_rows = false;
			for (int i = k - 1; i >= 0; --i)
				if (ri[i] < rows - (k - i)) {
					++ri[i];
					for (int j = i + 1; j < k; ++j)
						ri[j] = ri[j - 1] + 1;
					more_rows = true;
					break;
				}
		}
		if (g == 0)
			break;
		gcds.push_back(g);
	}
	std::vector<BigInt> factors;
	for (size_t k = 1; k < gcds.size(); ++k)
		factors.push_back(gcds[k] / gcds[k - 1]);
	return factors;
}

std::vector<std::vector<BigInt>> exponent_matrix(const GroupPresentation &p) {
	std::vector<std::vector<BigInt>> m;
	for (const auto &rel : p.relators) {
		std::vector<BigInt> row(p.generators.size(), 0);
		for (int letter : rel) {
			if (letter > 0)
				row[letter - 1] += 1;
			else
				row[-letter - 1] -= 1;
		}
		m.push_back(row);
	}
	return m;
}

void check_against_minor_oracle(const GroupPresentation &p) {
	Abelianization ab = abelianization(p);
	std::vector<BigInt> factors = invariant_factors(exponent_matrix(p));
	int rank = static_cast<int>(factors.size());
	CHECK(ab.free_rank == static_cast<int>(p.generators.size()) - rank);
	std::vector<BigInt> torsion;
	for (const auto &f : factors)
		if (f > 1)
			torsion.push_back(f);
	CHECK(ab.torsion == torsion);
}

GroupPresentation presentation_of(const std::string &name, int x0 = 0) {
	return pi1_presentation(coline_complex(builtin_space(name)), x0);
}

GroupPresentation synthetic(int gens, std::vector<std::vector<int>> relators) {
	GroupPresentation p;
	for (int i = 0; i < gens; ++i)
		p.generators.push_back(std::string(1, static_cast<char>('a' + i)));
	p.relators = std::move(relators);
	return p;
}

} // namespace

TEST_CASE("coline complexes of the builtin spaces") {
	CHECK(coline_complex(builtin_space("C4")).triangles.size() == 4);
	CHECK(coline_complex(builtin_space("C5")).triangles.size() == 5);
	CHECK(coline_complex(builtin_space("C6")).triangles.size() == 18);
	CHECK(coline_complex(builtin_space("K3")).triangles.empty());
	CHECK(coline_complex(builtin_space("K4")).triangles.empty());

	// C5 fills exactly the consecutive triples
	auto t = coline_complex(builtin_space("C5")).triangles;
	std::vector<std::array<int, 3>> want = {
	    {0, 1, 2}, {0, 1, 4}, {0, 3, 4}, {1, 2, 3}, {2, 3, 4}};
	std::sort(t.begin(), t.end());
	CHECK(t == want);
}

TEST_CASE("presentations of cycles and complete graphs") {
	GroupPresentation k3 = presentation_of("K3");
	CHECK(k3.generators.size() == 1);
	CHECK(k3.relators.empty());

	GroupPresentation k4 = presentation_of("K4");
	CHECK(k4.generators.size() == 3);
	CHECK(k4.relators.empty());

	GroupPresentation c5 = presentation_of("C5");
	CHECK(c5.generators.size() == 6);
	CHECK(c5.relators.size() == 5);

	// every triangle through the basepoint kills one generator outright
	GroupPresentation c4 = presentation_of("C4");
	CHECK(c4.generators.size() == 3);
	int unit_relators = 0;
	for (const auto &r : c4.relators)
		if (r.size() == 1)
			++unit_relators;
	CHECK(unit_relators == 3);
}

TEST_CASE("abelianizations of the builtin spaces") {
	CHECK(abelianization(presentation_of("C4")).trivial());
	CHECK(abelianization(presentation_of("C6")).trivial());
	CHECK(abelianization(presentation_of("C5")).to_string() == "Z");
	CHECK(abelianization(presentation_of("C7")).to_string() == "Z");
	CHECK(abelianization(presentation_of("K3")).to_string() == "Z");
	CHECK(abelianization(presentation_of("K4")).to_string() == "Z x Z x Z");
}

TEST_CASE("abelianization matches the gcd-of-minors oracle") {
	for (const char *name : {"C4", "C5", "C7", "K3", "K4"})
		check_against_minor_oracle(presentation_of(name));

	// synthetic presentations with torsion
	check_against_minor_oracle(synthetic(1, {{1, 1}}));                   // Z/2
	check_against_minor_oracle(synthetic(2, {{1, 1}, {2, 2, 2}}));        // Z/2 x Z/3-ish
	check_against_minor_oracle(synthetic(2, {{1, 1, 2, 2}, {1, -2}}));    // mixed
	check_against_minor_oracle(synthetic(3, {{1, 1, 2, -3}, {2, 2}}));    // free part left
	check_against_minor_oracle(synthetic(2, {{1, 2, -1, -2}}));           // commutator
	check_against_minor_oracle(synthetic(3, {{1, 1, 1, 1}, {2, 2, 2, 2}, {3}}));
}

TEST_CASE("abelianization string forms") {
	CHECK(abelianization(synthetic(1, {{1, 1}})).to_string() == "Z/2");
	CHECK(abelianization(synthetic(2, {{1, 1}})).to_string() == "Z x Z/2");
	CHECK(abelianization(synthetic(2, {})).to_string() == "Z x Z");
	CHECK(abelianization(synthetic(0, {})).to_string() == "trivial");
	Abelianization ab = abelianization(synthetic(2, {{1, 1}, {2, 2, 2, 2, 2, 2}}));
	CHECK(ab.free_rank == 0);
	// invariant factors stay in divisibility order
	REQUIRE(ab.torsion.size() == 2);
	CHECK(ab.torsion[1] % ab.torsion[0] == 0);
}

TEST_CASE("triviality verdicts") {
	CHECK(is_trivial_group(presentation_of("C4")).verdict == Triviality::Trivial);
	CHECK(is_trivial_group(presentation_of("C6")).verdict == Triviality::Trivial);
	CHECK(is_trivial_group(presentation_of("C5")).verdict == Triviality::Nontrivial);
	CHECK(is_trivial_group(presentation_of("K3")).verdict == Triviality::Nontrivial);

	SUBCASE("coset enumeration handles perfect nontrivial groups") {
		// (ab)^2 = a^3 = b^5, trivial abelianization, order 120
		GroupPresentation p = synthetic(
		    2, {{1, 2, 1, 2, -1, -1, -1}, {1, 1, 1, -2, -2, -2, -2, -2}});
		CHECK(abelianization(p).trivial());
		TrivialityResult r = is_trivial_group(p);
		CHECK(r.verdict == Triviality::Nontrivial);
		CHECK(r.detail.find("120") != std::string::npos);
	}
	SUBCASE("balanced presentation of the trivial group needs enumeration") {
		// b a b^-1 = a^2, a b a^-1 = b^2
		GroupPresentation p =
		    synthetic(2, {{2, 1, -2, -1, -1}, {1, 2, -1, -2, -2}});
		CHECK(abelianization(p).trivial());
		CHECK(is_trivial_group(p).verdict == Triviality::Trivial);
	}
	SUBCASE("tiny work bounds give up") {
		GroupPresentation p = synthetic(
		    2, {{1, 2, 1, 2, -1, -1, -1}, {1, 1, 1, -2, -2, -2, -2, -2}});
		CHECK(is_trivial_group(p, 50).verdict == Triviality::Unknown);
	}
	SUBCASE("free groups are caught by the abelianization") {
		TrivialityResult r = is_trivial_group(synthetic(1, {}));
		CHECK(r.verdict == Triviality::Nontrivial);
		CHECK(r.detail.find("Z") != std::string::npos);
	}
}

TEST_CASE("abelianization is basepoint independent") {
	for (const char *name : {"C5", "C6", "prism"}) {
		ColineComplex c = coline_complex(builtin_space(name));
		Abelianization at0 = abelianization(pi1_presentation(c, 0));
		for (int x0 = 1; x0 < c.space.n(); ++x0) {
			Abelianization at = abelianization(pi1_presentation(c, x0));
			CHECK(at.free_rank == at0.free_rank);
			CHECK(at.torsion == at0.torsion);
		}
	}
}

TEST_CASE("loop norm upper bounds on cycles") {
	FiniteMetricSpace c4 = builtin_space("C4");
	FiniteMetricSpace c5 = builtin_space("C5");
	FiniteMetricSpace c7 = builtin_space("C7");

	LoopClass const4 = {0, {0, 0}};
	CHECK(loop_norm_upper_bound(c4, const4, 6) == XRational(Rational(0)));

	LoopClass full4 = {0, {0, 1, 2, 3, 0}};
	CHECK(loop_norm_upper_bound(c4, full4, 6) == XRational(Rational(0)));

	LoopClass full5 = {0, {0, 1, 2, 3, 4, 0}};
	CHECK(loop_norm_upper_bound(c5, full5, 7) == XRational(Rational(1)));
	CHECK(loop_norm_upper_bound(c5, full5, 8) == XRational(Rational(1)));

	LoopClass full7 = {0, {0, 1, 2, 3, 4, 5, 6, 0}};
	CHECK(loop_norm_upper_bound(c7, full7, 8) == XRational(Rational(1)));

	SUBCASE("larger search bounds never increase the result") {
		XRational prev = XRational::infinity();
		for (int bound = 2; bound <= 8; ++bound) {
			XRational cur = loop_norm_upper_bound(c5, full5, bound);
			CHECK(cur <= prev);
			prev = cur;
		}
	}
	SUBCASE("concatenation is subadditive where the values are exact") {
		// starts longer than the bound are allowed; deletions stay available
		LoopClass doubled = {0, {0, 1, 2, 3, 4, 0, 1, 2, 3, 4, 0}};
		CHECK(loop_norm_upper_bound(c5, doubled, 9) == XRational(Rational(2)));
		LoopClass doubled4 = {0, {0, 1, 2, 3, 0, 1, 2, 3, 0}};
		CHECK(loop_norm_upper_bound(c4, doubled4, 9) == XRational(Rational(0)));
	}
}

TEST_CASE("hom class counts") {
	GroupPresentation c5 = presentation_of("C5");
	CHECK(hom_classes_to(c5, builtin_group("Z2")).size() == 2);
	CHECK(hom_classes_to(presentation_of("C4"), builtin_group("S3")).size() == 1);
	CHECK(hom_classes_to(presentation_of("K3"), builtin_group("S3")).size() == 3);

	SUBCASE("hom classes match the classification engine on the corpus") {
		for (const char *base : {"C3", "C4", "C5", "C6", "K3", "K4"})
			for (const char *group : {"Z2", "Z3", "S3"}) {
				GroupPresentation p = presentation_of(base);
				FiniteNormedGroup g = builtin_group(group);
				INFO(base, " with ", group);
				CHECK(hom_classes_to(p, g).size() ==
				      enumerate_principal(builtin_space(base), g).size());
			}
	}
	SUBCASE("representatives are canonical and satisfy the relators") {
		GroupPresentation p = presentation_of("C5");
		FiniteNormedGroup s3 = builtin_group("S3");
		auto classes = hom_classes_to(p, s3);
		CHECK(classes.size() == 3);
		for (const auto &img : classes) {
			REQUIRE(img.size() == p.generators.size());
			CHECK(canonical_conjugate(s3, img) == img);
			for (const auto &rel : p.relators) {
				int acc = s3.unit;
				for (int letter : rel)
					acc = s3.mul(acc, letter > 0 ? img[letter - 1]
					                             : s3.inv(img[-letter - 1]));
				CHECK(acc == s3.unit);
			}
		}
	}
}
