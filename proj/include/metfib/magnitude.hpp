#pragma once

#include "metfib/metric_space.hpp"

namespace metfib {

struct SingularMatrixError : Error {
	using Error::Error;
};

// Magnitude at scale q: the common sum of any weighting, where a weighting
// solves sum_j q^d(i,j) x_j = 1 for every i. Equal to the sum of the entries
// of the inverse similarity matrix whenever that matrix is invertible, but
// still defined at scales where the matrix is singular yet the weighting
// system stays solvable. Computed exactly over the rationals.
// Pre: valid space, finite integer distances, 0 < q < 1.
// Throws SingularMatrixError when no weighting exists at q.
Rational magnitude_at(const FiniteMetricSpace &space, const Rational &q);

struct ProductSample {
	Rational q;
	bool skipped = false; // no weighting at this q
	Rational total_value, base_value, fiber_value;
	bool equal = false;
};

struct ProductReport {
	std::vector<ProductSample> samples;
	bool all_equal = true; // over the samples that were not skipped
};

// Compares magnitude(total) with magnitude(base) * magnitude(fiber) at each
// sample; exact equality, singular samples skipped with notice.
ProductReport check_product(const FiniteMetricSpace &total, const FiniteMetricSpace &base,
                            const FiniteMetricSpace &fiber, const std::vector<Rational> &q_samples);

} // namespace metfib
