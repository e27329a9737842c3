#pragma once

// Formula-to-equation constructions and the decision procedure for positive
// exists-forall sentences.

#include "wordeq/core.hpp"

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace wordeq::combinators {

/// U = V and U' = V' as one equation: U a U' U b U' = V a V' V b V'.
/// Solutions of the result are exactly the common solutions of the inputs.
Equation pair_conjunction(const Equation& e1, const Equation& e2, char a, char b);

/// Left fold of pair_conjunction over a nonempty list.
Equation collapse_conjunction(const std::vector<Equation>& es, char a, char b);

/// h(y_i) = a b^(k+i) a for the variables y_1..y_n of U V in order of first
/// occurrence, with k = |UV| + 1 and a, b the first two alphabet letters.
/// Then h(U) = h(V) iff U and V are the same symbol sequence.
Substitution distinguishing_substitution(const Pattern& u, const Pattern& v, const Alphabet& alphabet);
/// Same construction with an explicit k (the guarantee needs k > |UV|).
Substitution distinguishing_substitution(const Pattern& u, const Pattern& v, std::size_t k, char a, char b);

/// Longest image used by the construction for m variables: k + m + 2.
std::size_t distinguishing_image_bound(std::size_t k, std::size_t m);

/// Negation normal form with negations on atoms, then distribution.
/// Negated equations flip polarity; negated length atoms become the
/// complementary inequalities; negated predicate atoms stay wrapped.
Formula to_dnf(const Formula& f);
/// The disjuncts of to_dnf(f), each as a list of literals.
std::vector<std::vector<Formula>> dnf_clauses(const Formula& f);

struct TrivialityReport {
	bool skeleton_ok = false;
	/// u_k = v_k for the segments between universal-variable occurrences.
	std::vector<Equation> induced_system;
};

/// Splits both sides around the universal-variable occurrences
/// u_0 y_i1 u_1 ... y_ip u_p and v_0 y_j1 v_1 ... y_jq v_q. The skeleton
/// matches when p = q and i_k = j_k; then E becomes trivial under an
/// existential assignment exactly when it solves every u_k = v_k.
TrivialityReport triviality_analysis(const Equation& e, const std::set<std::string>& existential,
									 const std::set<std::string>& universal);

enum class Truth : std::uint8_t { true_, false_, unknown };

std::string_view to_string(Truth t);

/// Positive equations and length constraints over existential variables.
struct ExistentialSystem {
	std::vector<Equation> equations;
	LengthConstraintSystem lengths;
	std::vector<std::string> variables;
};

/// Decides an existential system. Must answer unknown rather than guess.
using SystemSolver = std::function<SolveResult(const ExistentialSystem&, const Alphabet&)>;

struct Sigma2Result {
	Truth truth = Truth::unknown;
	/// Existential assignment making the chosen disjunct trivial.
	Substitution witness;
	/// Index of the successful disjunct in the DNF, when true.
	std::size_t disjunct = 0;
	std::vector<std::string> notes;
};

struct Sigma2Options {
	SystemSolver solver;        // empty: the built-in solver chain
	char marker_a = 0;          // 0: first alphabet letter
	char marker_b = 0;          // 0: second alphabet letter
};

/// Truth of an exists-forall sentence whose matrix is a positive Boolean
/// combination of equations. Requires at least two letters.
Sigma2Result decide_sigma2_positive(const QuantifiedFormula& phi, const Alphabet& alphabet,
									const Sigma2Options& options = {});

} // namespace wordeq::combinators
