#pragma once

// Exact feasibility for linear systems over the non-negative integers.

#include "wordeq/core.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wordeq::diophantine {

struct Constraint {
	std::vector<BigInt> coeffs;   // one per system variable
	Relation rel = Relation::eq;
	BigInt constant = 0;          // sum coeffs[i] * v_i  rel  constant
};

struct DiophantineSystem {
	std::vector<std::string> variables;
	std::vector<Constraint> constraints;

	DiophantineSystem() = default;
	explicit DiophantineSystem(std::vector<std::string> vars) : variables(std::move(vars)) {}

	std::size_t index_of(const std::string& var) const;
	/// Adds a constraint given by name; names must be declared.
	void add(const std::map<std::string, BigInt>& coeffs, Relation rel, BigInt constant);
	/// Adds a length constraint, declaring unseen variables at the end.
	void add(const LinearConstraint& c);

	bool satisfied_by(const std::vector<BigInt>& values) const;
};

struct Solution {
	bool sat = false;
	std::vector<BigInt> values;   // aligned with DiophantineSystem::variables

	std::map<std::string, BigInt> assignment(const DiophantineSystem& sys) const;
};

/// A-priori magnitude bound used to box the search.
///
/// The system is brought to equality form A z = b by one slack per inequality
/// (n' = n + #inequalities columns, m rows). With a = max(|A|, |b|, 1) a
/// feasible system has a non-negative solution with every entry at most
/// n' (m a)^(2m+1). The search minimizes a coordinate, which is bounded the
/// same way after adding the objective as one more row and column:
///
///     bound = (n' + 1) ((m + 1) a)^(2(m + 1) + 1)
BigInt solution_bound(const DiophantineSystem& sys);

/// Lexicographically least non-negative integer solution in the declared
/// variable order, or unsat. Complete; exponential in the worst case.
Solution solve_nonneg(const DiophantineSystem& sys);

} // namespace wordeq::diophantine
