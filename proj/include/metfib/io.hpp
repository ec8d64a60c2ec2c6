#pragma once

#include "metfib/cech.hpp"
#include "metfib/fibration.hpp"
#include "metfib/group.hpp"
#include "metfib/metric_space.hpp"

#include <iosfwd>
#include <string>

namespace metfib {

// Malformed input file. The message carries "<file>:<line>:".
struct ParseError : Error {
	using Error::Error;
};

// Distance matrix: '#' comments, point count, optional "labels:" line, then
// n rows of n entries ("p", "p/q" or "inf"). Flavor is inferred from the
// entries; run validate_space to check the axioms.
FiniteMetricSpace read_dmat(std::istream &in, const std::string &name);
FiniteMetricSpace read_dmat_file(const std::string &path);
void write_dmat(std::ostream &out, const FiniteMetricSpace &x);

// Weighted graph: lines "v <name>" and "e <name1> <name2> [weight]".
WeightedGraph read_wg(std::istream &in, const std::string &name);
WeightedGraph read_wg_file(const std::string &path);
void write_wg(std::ostream &out, const WeightedGraph &g);

// Group: "elements:" line, "table:" plus n rows of n element names,
// "norm:" line aligned with the element list.
FiniteNormedGroup read_grp(std::istream &in, const std::string &name);
FiniteNormedGroup read_grp_file(const std::string &path);
void write_grp(std::ostream &out, const FiniteNormedGroup &g);

// Fibration: total-space matrix block, base matrix block, then
// "p <total_label> <base_label>" lines.
MetricFibration read_fib(std::istream &in, const std::string &name);
MetricFibration read_fib_file(const std::string &path);
void write_fib(std::ostream &out, const MetricFibration &f);

// Action: base matrix block, one fiber matrix block per base point, then
// "t <x> <x'> <a>-><b> ..." transport lines (labels). Every ordered pair of
// distinct base points needs a line; diagonal lines may be omitted and
// default to the identity.
MetricAction read_act(std::istream &in, const std::string &name);
MetricAction read_act_file(const std::string &path);
void write_act(std::ostream &out, const MetricAction &a);

// Cocycle: base matrix block, group block, then "a <i> <j> <k> <element>"
// lines with numeric point indices. Omitted triples are filled in from the
// given ones via the cocycle identity where that determines them, and
// default to the unit otherwise; a contradiction among given and derived
// values is a parse error.
Cocycle read_coc(std::istream &in, const std::string &name);
Cocycle read_coc_file(const std::string &path);
void write_coc(std::ostream &out, const Cocycle &c);

} // namespace metfib
