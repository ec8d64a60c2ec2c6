#include "metfib/magnitude.hpp"

namespace metfib {

static BigInt int_pow(const BigInt &b, unsigned long e) {
	BigInt out = 1, base = b;
	while (e) {
		if (e & 1)
			out *= base;
		base *= base;
		e >>= 1;
	}
	return out;
}

// Particular solution of the augmented system a x = rhs, or nullopt when the
// system is inconsistent. Free variables are set to zero.
static std::optional<std::vector<Rational>> solve_particular(std::vector<std::vector<Rational>> a) {
	int n = static_cast<int>(a.size());
	std::vector<int> pivot_col;
	int rank = 0;
	for (int col = 0; col < n && rank < n; ++col) {
		int pivot = -1;
		for (int i = rank; i < n && pivot < 0; ++i)
			if (!(a[i][col] == Rational(0)))
				pivot = i;
		if (pivot < 0)
			continue;
		std::swap(a[rank], a[pivot]);
		for (int i = rank + 1; i < n; ++i) {
			if (a[i][col] == Rational(0))
				continue;
			Rational f = a[i][col] / a[rank][col];
			for (int j = col; j <= n; ++j)
				a[i][j] = a[i][j] - f * a[rank][j];
		}
		pivot_col.push_back(col);
		++rank;
	}
	for (int i = rank; i < n; ++i)
		if (!(a[i][n] == Rational(0)))
			return std::nullopt;
	std::vector<Rational> x(n, Rational(0));
	for (int i = rank - 1; i >= 0; --i) {
		Rational acc = a[i][n];
		for (int j = pivot_col[i] + 1; j < n; ++j)
			acc = acc - a[i][j] * x[j];
		x[pivot_col[i]] = acc / a[i][pivot_col[i]];
	}
	return x;
}

Rational magnitude_at(const FiniteMetricSpace &space, const Rational &q) {
	if (auto v = validate_space(space))
		throw PreconditionError("invalid space: " + v->message());
	if (!(Rational(0) < q && q < Rational(1)))
		throw PreconditionError("scale must lie strictly between 0 and 1");
	int n = space.n();
	std::vector<unsigned long> dist(static_cast<size_t>(n) * n);
	unsigned long dmax = 0;
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			const XRational &d = space.d(i, j);
			if (d.is_inf() || !d.finite().is_integer())
				throw PreconditionError("magnitude needs finite integer distances, got " +
				                        to_string(d) + " at (" + space.labels[i] + ", " +
				                        space.labels[j] + ")");
			BigInt v = d.finite().num;
			dist[static_cast<size_t>(i) * n + j] = v.convert_to<unsigned long>();
			dmax = std::max(dmax, dist[static_cast<size_t>(i) * n + j]);
		}
	if (n == 0)
		return Rational(0);

	// Weightings solve sum_j q^d(i,j) x_j = 1. Scaling by the common
	// denominator r^dmax makes every entry p^d r^(dmax-d) integral. The sum
	// of a weighting does not depend on which solution is picked, and a
	// solution of the transposed system forces the same sum from the left,
	// so the value is well defined once both systems are consistent.
	const BigInt &p = q.num, &r = q.den;
	Rational rhs = Rational(int_pow(r, dmax));
	bool symmetric = true;
	std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1, rhs));
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j) {
			unsigned long d = dist[static_cast<size_t>(i) * n + j];
			m[i][j] = Rational(int_pow(p, d) * int_pow(r, dmax - d));
			if (d != dist[static_cast<size_t>(j) * n + i])
				symmetric = false;
		}
	auto x = solve_particular(m);
	if (x && !symmetric) {
		std::vector<std::vector<Rational>> t(n, std::vector<Rational>(n + 1, rhs));
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j)
				t[i][j] = m[j][i];
		if (!solve_particular(t))
			x.reset();
	}
	if (!x)
		throw SingularMatrixError("the similarity matrix admits no weighting at q = " + to_string(q));
	Rational sum(0);
	for (const auto &xi : *x)
		sum = sum + xi;
	return sum;
}

ProductReport check_product(const FiniteMetricSpace &total, const FiniteMetricSpace &base,
                            const FiniteMetricSpace &fiber,
                            const std::vector<Rational> &q_samples) {
	ProductReport out;
	for (const auto &q : q_samples) {
		ProductSample s;
		s.q = q;
		try {
			s.total_value = magnitude_at(total, q);
			s.base_value = magnitude_at(base, q);
			s.fiber_value = magnitude_at(fiber, q);
			s.equal = (s.total_value == s.base_value * s.fiber_value);
			if (!s.equal)
				out.all_equal = false;
		} catch (const SingularMatrixError &) {
			s.skipped = true;
		}
		out.samples.push_back(std::move(s));
	}
	return out;
}

} // namespace metfib
