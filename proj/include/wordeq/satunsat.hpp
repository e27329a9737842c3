#pragma once

// Systems of sat- and unsat-equations and their translations to and from
// exists-forall sentences.
//
// A system (S, U) over existential variables X and universal variables Y is
// satisfiable when some assignment of X solves every member of S and, for
// every assignment of Y, at least one member of U fails.

#include "wordeq/core.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wordeq::satunsat {

struct SatUnsatSystem {
	std::vector<Equation> sat_set;     // over X and letters
	std::vector<Equation> unsat_set;   // over X, Y and letters
	std::vector<std::string> x_vars;
	std::vector<std::string> y_vars;

	/// Throws when X and Y overlap, a sat equation mentions a variable outside
	/// X, an unsat equation one outside X and Y, or the alphabet has fewer
	/// than two letters.
	void validate(const Alphabet& alphabet) const;
};

struct SystemEncoding {
	QuantifiedFormula formula;
	/// True when the sat equations were merged into a single equation.
	bool collapsed = false;
};

/// exists X. forall Y. e and (not f_1 or ... or not f_p) with f_j the unsat
/// equations. A positive sat set (or, when empty, x = x for each x in X)
/// becomes the single equation e; otherwise the sat equations stay a
/// conjunction and `collapsed` is false.
SystemEncoding system_to_sigma2(const SatUnsatSystem& sys, const Alphabet& alphabet);

/// Inverse direction for sentences exists X. forall Y. e and D, where e is a
/// positive equation over X and D is a disjunction of equation atoms (a
/// single atom, or the empty disjunction). S = {e} plus x = x for each x,
/// U = the negations of the disjuncts. A matrix consisting of e alone gives
/// U = {"" != ""}, a member that fails under every assignment.
SatUnsatSystem sigma2_to_system(const QuantifiedFormula& phi);

enum class SystemVerdict : std::uint8_t { satisfiable, not_found };

struct BoundedSystemResult {
	SystemVerdict verdict = SystemVerdict::not_found;
	Substitution x_assignment;
};

/// Direct enumeration of the definition with every image of length at most
/// `bound` (both blocks).
BoundedSystemResult check_system_bounded(const SatUnsatSystem& sys, const Alphabet& alphabet, std::size_t bound);

/// exists vars(alpha). forall vars(beta). alpha != beta, which holds iff
/// L(alpha) is not contained in L(beta).
QuantifiedFormula encode_ipl(const Pattern& alpha, const Pattern& beta, const Alphabet& alphabet);

/// A single positive equation, satisfiable (after projecting away `fresh`)
/// by exactly the assignments satisfying the converted formula.
struct QfEquation {
	Equation equation;
	std::vector<std::string> fresh;
};

using QfToEquation = std::function<QfEquation(const Formula& f, const Alphabet& alphabet)>;

/// Handles a single positive equation (unchanged) and conjunctions of
/// positive equations (merged with the marker construction); throws for
/// anything else.
QfEquation default_qf_to_equation(const Formula& f, const Alphabet& alphabet);

/// exists X. forall Y. phi' as exists X. forall (Y and fresh). U != V, where
/// U = V is the conversion of not phi'.
QuantifiedFormula sigma2_collapse(const QuantifiedFormula& phi, const Alphabet& alphabet,
								  const QfToEquation& convert = default_qf_to_equation);

} // namespace wordeq::satunsat
