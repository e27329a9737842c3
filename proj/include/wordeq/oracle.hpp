#pragma once

// Bounded brute-force evaluation of quantified formulas.
//
// Enumeration order, for a block of variables x_1..x_n in declaration order:
//   1. total image length |h(x_1)| + ... + |h(x_n)| ascending;
//   2. the length tuple (|h(x_1)|, ..., |h(x_n)|) in lexicographic order;
//   3. the concatenation h(x_1) ... h(x_n) in lexicographic order, letters
//      ranked by the declared alphabet order.
// The first witness (or violation) in this order is reported.
//
// Pruning never changes that answer: partial assignments are cut only when
// no completion can satisfy the formula. A variable whose letters take part
// in no undecided comparison gets its least admissible image once.

#include "wordeq/automata.hpp"
#include "wordeq/core.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace wordeq::oracle {

enum class BoundedKind : std::uint8_t {
	witness_found,
	violation_found,
	exhausted_no_witness,
	exhausted_no_violation,
	budget_exhausted,   // node_limit reached before a conclusion
};

std::string_view to_string(BoundedKind k);

struct BoundedVerdict {
	BoundedKind kind = BoundedKind::exhausted_no_witness;
	/// Witness: the existential block. Violation: the universal block.
	Substitution assignment;
	std::uint64_t nodes = 0;
};

struct OracleOptions {
	std::size_t bound = 0;
	/// Per-variable overrides of `bound`.
	std::map<std::string, std::size_t> variable_bounds;
	/// Bound for the universal block of an exists-forall prefix; defaults to `bound`.
	std::optional<std::size_t> universal_bound;
	/// Complete images must satisfy the filter.
	std::map<std::string, std::function<bool(std::string_view)>> domains;
	/// Images must be accepted by the automaton. Unlike `domains`, partial
	/// images that cannot be completed at the current length are cut early.
	std::map<std::string, automata::Dfa> regular;
	PredicateEvaluator predicates;
	/// Search nodes before giving up; 0 means unlimited.
	std::uint64_t node_limit = 0;
};

/// Prefix of at most two blocks: exists, forall, or exists-forall.
/// Throws Error for deeper prefixes.
BoundedVerdict bounded_check(const QuantifiedFormula& phi, const Alphabet& alphabet, const OracleOptions& options);
BoundedVerdict bounded_check(const QuantifiedFormula& phi, const Alphabet& alphabet, std::size_t bound);

/// First assignment of `vars` (in the documented order) satisfying `f`; the
/// formula's remaining free variables must be absent. Empty when there is
/// none within the bounds or the node limit is reached.
std::optional<Substitution> first_model(const Formula& f, const std::vector<std::string>& vars,
										const Alphabet& alphabet, const OracleOptions& options);

} // namespace wordeq::oracle
