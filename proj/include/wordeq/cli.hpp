#pragma once

// Problem files: an s-expression syntax for word-equation problems, its
// parser and renderer, and the dispatcher that routes a problem to a solver.
//
//   (alphabet "ab")
//   (var x y)
//   (exists x) (forall y)                       optional prefix
//   (assert (= (cat x "a") (cat "a" x)))        also !=, and, or, not, pred
//   (assert-len (>= (+ (* 2 (len x)) 1) 5))
//   (assert-in x (dfa 2 0 (1) ((0 a 1) (1 b 0))))
//   (force regord)                              optional
//   (check-sat) | (decide) | (encode <name>) | (oracle <bound>)

#include "wordeq/core.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wordeq::cli {

class ParseError : public Error {
public:
	ParseError(const std::string& message, std::size_t line, std::size_t column);
	std::size_t line = 0;
	std::size_t column = 0;
};

struct DfaSpec {
	std::size_t states = 0;
	std::size_t initial = 0;
	std::vector<std::size_t> accepting;
	std::vector<std::tuple<std::size_t, char, std::size_t>> transitions;

	bool operator==(const DfaSpec&) const = default;
};

enum class DirectiveKind : std::uint8_t { check_sat, decide, encode, oracle };

struct Directive {
	DirectiveKind kind = DirectiveKind::check_sat;
	std::string name;        // encode
	std::size_t bound = 0;   // oracle

	bool operator==(const Directive&) const = default;
};

struct ProblemFile {
	Alphabet alphabet;
	std::vector<std::string> variables;
	std::vector<std::string> exists;
	std::vector<std::string> forall;
	std::vector<Formula> assertions;
	LengthConstraintSystem lengths;
	std::vector<std::pair<std::string, DfaSpec>> regular;
	std::optional<std::string> force;
	Directive directive;

	bool has_prefix() const { return !exists.empty() || !forall.empty(); }
	/// Conjunction of the assertions.
	Formula matrix() const;

	bool operator==(const ProblemFile&) const = default;
};

/// Throws ParseError for syntax errors, undeclared variables, letters outside
/// the alphabet, unknown predicates and a missing or repeated alphabet or
/// directive.
ProblemFile parse_problem(std::string_view text);

/// Canonical text; parse_problem(render_problem(p)) == p.
std::string render_problem(const ProblemFile& p);

/// Procedure names accepted by (force ...) and --force.
const std::vector<std::string>& procedures();

struct RunOptions {
	/// Overrides the file's (force ...).
	std::optional<std::string> force;
	std::size_t max_expand = 4096;
};

enum ExitCode : int {
	exit_positive = 0,    // SAT, TRUE, ENCODED
	exit_negative = 1,    // UNSAT, FALSE
	exit_unknown = 2,
	exit_no_procedure = 3,
	exit_bad_input = 4,
	exit_failure = 5,
};

struct Outcome {
	std::string verdict;   // SAT, UNSAT, TRUE, FALSE, UNKNOWN, ENCODED; empty on error
	std::vector<std::string> lines;
	/// Diagnostics for the error stream.
	std::vector<std::string> notes;
	std::string procedure;
	std::string error;
	int exit_code = exit_failure;

	/// Verdict line followed by `lines`.
	std::string render() const;
};

/// Routes by syntactic shape unless a procedure is forced. Throws Error when
/// no procedure applies.
Outcome dispatch(const ProblemFile& p, const RunOptions& options = {});

/// parse_problem then dispatch, with errors turned into exit codes.
Outcome run_text(std::string_view text, const RunOptions& options = {});

/// The verdict named by a "; expect: <VERDICT>" comment, if any.
std::optional<std::string> expected_verdict(std::string_view text);

/// A random small problem (one-letter, regular-ordered or exists-forall)
/// with a known route.
std::string generate_problem(std::mt19937_64& rng);

} // namespace wordeq::cli
