#pragma once

// Formulas whose equations use a single terminal letter.

#include "wordeq/combinators.hpp"
#include "wordeq/core.hpp"

#include <string>
#include <vector>

namespace wordeq::oneletter {

/// sum_x (|U|_x - |V|_x) |h(x)| = |V|_a - |U|_a. Every variable of the
/// equation keeps an entry, zero coefficients included.
/// Throws when a letter other than `a` occurs.
LinearConstraint length_abstraction(const Equation& e, char a);

/// The unique terminal of the equations in f, or the first alphabet letter
/// when there is none. Throws when two letters occur.
char designated_letter(const Formula& f, const Alphabet& alphabet);

/// Complete procedure for a positive Boolean combination of one-letter
/// equations and length atoms, together with theta. Models use only the
/// designated letter. Throws on negation or predicate atoms.
SolveResult solve_oneletter(const Formula& f, const LengthConstraintSystem& theta, const Alphabet& alphabet,
							std::size_t max_expand = 4096);

struct EncodedSystem {
	std::vector<Equation> equations;   // disequalities, U' = V', y_1 = a_1
	LengthConstraintSystem theta;
	std::vector<std::string> fresh;    // y_1 .. y_n, one per alphabet letter

	Formula formula() const;
};

/// Replaces each letter a_i by a fresh variable y_i, pins y_1 = a_1, keeps
/// the y_i pairwise distinct and gives y_2..y_n length one. The result is
/// satisfiable iff (E, theta) is; its only terminal is a_1.
EncodedSystem encode_general_as_oneletter(const Equation& e, const Alphabet& alphabet,
										  const LengthConstraintSystem& theta = {});

/// Exists-forall sentences over one-letter equations and Length(z1, z2)
/// atoms, where each z is a variable or a constant word. Complete; needs an
/// alphabet of at least two letters.
combinators::Sigma2Result decide_oneletter_sigma2(const QuantifiedFormula& phi, const Alphabet& alphabet);

} // namespace wordeq::oneletter
