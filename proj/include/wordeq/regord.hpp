#pragma once

// Strictly regular-ordered equations with length and regular constraints.
//
// Write U = u_0 x_1 u_1 ... x_n u_n and V = v_0 x_1 v_1 ... x_n v_n. The
// offset between the two occurrences of x_i in a solution word is
// d_i = sum_{j<i} (|u_j| - |v_j|), independent of the solution. Reading the
// solution left to right, the longer side is ahead of the shorter by an
// overhang word o with |o| = |d_i|:
//   * d_i = 0: h(x_i) is unconstrained;
//   * d_i != 0: h(x_i) is a prefix of o o o ..., i.e. (alpha beta)^n alpha
//     with alpha beta = o, |alpha| = r < |o| and n >= 0. The overhang after
//     x_i is beta alpha whatever n is.
// Each choice of r per constrained variable that survives the terminal
// segments gives one parametric family; together the families describe every
// solution exactly.

#include "wordeq/automata.hpp"
#include "wordeq/core.hpp"

#include <map>
#include <string>
#include <vector>

namespace wordeq::regord {

/// Each variable occurs exactly once per side, in the same order.
bool check_strictly_regular_ordered(const Equation& e);

struct ParametricImage {
	enum class Kind : std::uint8_t { periodic, unconstrained };

	Kind kind = Kind::periodic;
	Word alpha;   // periodic: h(x) = (alpha beta)^n alpha, n >= 0
	Word beta;

	bool operator==(const ParametricImage&) const = default;
};

struct ParametricAssignment {
	std::vector<std::string> variables;
	std::map<std::string, ParametricImage> images;

	/// Periodic variables take their exponent, unconstrained ones the given word.
	Substitution instantiate(const std::map<std::string, std::size_t>& exponents,
							 const std::map<std::string, Word>& free_words = {}) const;

	bool operator==(const ParametricAssignment&) const = default;
};

/// All parametric families, ignoring length and regular constraints, in the
/// order of the search (variables left to right, r ascending).
std::vector<ParametricAssignment> enumerate_parametric_solutions(const Equation& e);

enum class Overlap : std::uint8_t { overlapping, non_overlapping, unconstrained };

struct RegordResult {
	SolveResult solve;
	/// Filled when sat.
	ParametricAssignment family;
	std::map<std::string, BigInt> exponents;   // periodic variables
	std::map<std::string, BigInt> lengths;
	std::map<std::string, Overlap> classification;
	bool identical_sides = false;
};

/// Complete decision. Variables of theta or of the regular constraints that
/// do not occur in e are unconstrained by it. A variable without a regular
/// constraint may take any word.
RegordResult solve_regular_ordered(const Equation& e, const LengthConstraintSystem& theta,
								   const std::map<std::string, automata::Dfa>& regular, const Alphabet& alphabet,
								   std::size_t max_expand = 4096);

} // namespace wordeq::regord
