#pragma once

// Existential solving of equation systems with length and regular
// constraints: exact where a complete procedure applies, bounded otherwise.
//
// Stages, in order:
//   1. simplification (common prefixes and suffixes, clashes, forced-empty variables);
//   2. Parikh-vector refutation over the non-negative integers;
//   3. the one-terminal procedure, when every equation uses at most one letter
//      and there are no regular constraints;
//   4. the regular-ordered procedure, for a single strictly regular-ordered equation;
//   5. bounded enumeration, which can only answer sat or unknown.

#include "wordeq/automata.hpp"
#include "wordeq/core.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wordeq::solver {

struct SystemProblem {
	std::vector<Equation> equations;   // positive
	LengthConstraintSystem lengths;
	std::map<std::string, automata::Dfa> regular;
	/// Variables to report; variables of the constraints are added.
	std::vector<std::string> variables;
};

struct SolverOptions {
	std::size_t oracle_bound = 5;
	std::uint64_t node_limit = 2'000'000;
	/// Longest image written into SolveResult::model.
	std::size_t max_expand = 4096;
};

SolveResult solve_system(const SystemProblem& problem, const Alphabet& alphabet, const SolverOptions& options = {});

} // namespace wordeq::solver
