#pragma once

// Syntax and concrete semantics of patterns, word equations, quantified
// formulas and substitutions.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wordeq {

using BigInt = boost::multiprecision::cpp_int;
using Word = std::string;

class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Finite, ordered alphabet of terminal letters. The declaration order is the
/// enumeration order used by the oracle and by every lexicographic tie-break.
class Alphabet {
public:
	Alphabet() = default;
	explicit Alphabet(std::string_view letters);

	const std::string& letters() const noexcept { return letters_; }
	std::size_t size() const noexcept { return letters_.size(); }
	bool contains(char c) const noexcept { return letters_.find(c) != std::string::npos; }
	bool contains_word(std::string_view w) const noexcept;
	char operator[](std::size_t i) const { return letters_[i]; }
	std::size_t index_of(char c) const;

	bool operator==(const Alphabet&) const = default;

private:
	std::string letters_;
};

struct Symbol {
	enum class Kind : std::uint8_t { terminal, variable };

	Kind kind = Kind::terminal;
	std::string name;   // one letter for terminals

	static Symbol terminal(char c) { return {Kind::terminal, std::string(1, c)}; }
	static Symbol variable(std::string v);

	bool is_variable() const noexcept { return kind == Kind::variable; }
	bool is_terminal() const noexcept { return kind == Kind::terminal; }
	char letter() const { return name.front(); }

	auto operator<=>(const Symbol&) const = default;
};

class Pattern {
public:
	Pattern() = default;
	explicit Pattern(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

	/// A pattern consisting only of the letters of `w`.
	static Pattern word(std::string_view w);

	/// Whitespace-separated tokens; a token made only of alphabet letters is a
	/// run of terminals, anything else names a variable ("x a y", "x1 ab x2").
	static Pattern parse(std::string_view text, const Alphabet& alphabet);

	const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
	std::size_t size() const noexcept { return symbols_.size(); }
	bool empty() const noexcept { return symbols_.empty(); }
	const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
	auto begin() const noexcept { return symbols_.begin(); }
	auto end() const noexcept { return symbols_.end(); }

	/// Symbols [from, to).
	Pattern slice(std::size_t from, std::size_t to) const {
		return Pattern(std::vector<Symbol>(symbols_.begin() + from, symbols_.begin() + to));
	}

	Pattern& append(const Symbol& s) { symbols_.push_back(s); return *this; }
	Pattern& append(const Pattern& p);
	Pattern& append_word(std::string_view w);

	/// |p|_z for a terminal or variable z.
	std::size_t count(const Symbol& z) const noexcept;
	std::size_t count_variable(std::string_view name) const noexcept;
	std::size_t count_letter(char c) const noexcept;

	/// Variables in order of first occurrence.
	std::vector<std::string> variables() const;
	std::set<char> terminals() const;
	bool is_constant() const noexcept;
	/// Terminal content; only valid when is_constant().
	Word constant_word() const;

	std::string to_string() const;

	auto operator<=>(const Pattern&) const = default;
	bool operator==(const Pattern&) const = default;

private:
	std::vector<Symbol> symbols_;
};

Pattern operator+(Pattern lhs, const Pattern& rhs);

struct Equation {
	Pattern lhs;
	Pattern rhs;
	bool positive = true;

	Equation negated() const { return {lhs, rhs, !positive}; }
	std::vector<std::string> variables() const;
	std::set<char> terminals() const;
	std::string to_string() const;

	auto operator<=>(const Equation&) const = default;
	bool operator==(const Equation&) const = default;
};

enum class Relation : std::uint8_t { eq, le, ge };

/// sum_x coeffs[x] * |h(x)|  <rel>  constant
struct LinearConstraint {
	std::map<std::string, std::int64_t> coeffs;
	std::int64_t constant = 0;
	Relation rel = Relation::eq;

	bool holds(const std::map<std::string, std::int64_t>& lengths) const;
	std::string to_string() const;

	auto operator<=>(const LinearConstraint&) const = default;
	bool operator==(const LinearConstraint&) const = default;
};

using LengthConstraintSystem = std::vector<LinearConstraint>;

struct PredicateAtom {
	std::string name;
	std::vector<Pattern> args;

	auto operator<=>(const PredicateAtom&) const = default;
	bool operator==(const PredicateAtom&) const = default;
};

using Atom = std::variant<Equation, PredicateAtom, LinearConstraint>;

/// Boolean combination of atoms. An empty conjunction is true, an empty
/// disjunction is false.
struct Formula {
	enum class Kind : std::uint8_t { atom, conj, disj, neg };

	Kind kind = Kind::conj;
	std::optional<Atom> atom;
	std::vector<Formula> children;

	static Formula make_atom(Atom a);
	static Formula eq(Pattern lhs, Pattern rhs) { return make_atom(Equation{std::move(lhs), std::move(rhs), true}); }
	static Formula neq(Pattern lhs, Pattern rhs) { return make_atom(Equation{std::move(lhs), std::move(rhs), false}); }
	static Formula pred(std::string name, std::vector<Pattern> args);
	static Formula conj(std::vector<Formula> fs);
	static Formula disj(std::vector<Formula> fs);
	static Formula negate(Formula f);
	static Formula truth() { return conj({}); }
	static Formula falsity() { return disj({}); }

	bool is_atom() const noexcept { return kind == Kind::atom; }
	/// No negation node and no negative equation anywhere.
	bool positive() const;
	/// Free variables in order of first occurrence.
	std::vector<std::string> variables() const;
	/// All atoms in left-to-right order.
	std::vector<const Atom*> atoms() const;
	std::string to_string() const;

	bool operator==(const Formula&) const = default;
};

enum class Quantifier : std::uint8_t { exists, forall };

struct QuantifierBlock {
	Quantifier quantifier = Quantifier::exists;
	std::vector<std::string> variables;

	bool operator==(const QuantifierBlock&) const = default;
};

enum class Fragment : std::uint8_t {
	quantifier_free,
	sigma1,
	pi1,
	sigma2,
	sigma2_positive,
	other,
};

std::string_view to_string(Fragment f);

struct QuantifiedFormula {
	std::vector<QuantifierBlock> prefix;
	Formula matrix;

	static QuantifiedFormula exists(std::vector<std::string> xs, Formula matrix);
	static QuantifiedFormula exists_forall(std::vector<std::string> xs, std::vector<std::string> ys, Formula matrix);

	/// Throws when blocks overlap or a free variable of the matrix is unbound.
	void validate() const;
	Fragment fragment() const;
	std::vector<std::string> existential_variables() const;
	std::vector<std::string> universal_variables() const;
	std::string to_string() const;

	bool operator==(const QuantifiedFormula&) const = default;
};

class Substitution {
public:
	Substitution() = default;
	Substitution(std::initializer_list<std::pair<const std::string, Word>> init) : map_(init) {}
	explicit Substitution(std::map<std::string, Word> m) : map_(std::move(m)) {}

	const Word& at(const std::string& var) const;
	bool contains(const std::string& var) const { return map_.contains(var); }
	void set(const std::string& var, Word w) { map_[var] = std::move(w); }
	const std::map<std::string, Word>& bindings() const noexcept { return map_; }
	std::size_t size() const noexcept { return map_.size(); }
	std::map<std::string, std::int64_t> lengths() const;
	std::string to_string() const;

	bool operator==(const Substitution&) const = default;

private:
	std::map<std::string, Word> map_;
};

/// Throws Error naming the first unbound variable.
Word apply(const Pattern& p, const Substitution& h);

/// Evaluates a predicate atom on fully substituted arguments. Expected to throw
/// for names it does not know.
using PredicateEvaluator = std::function<bool(const std::string& name, const std::vector<Word>& args)>;

bool eval_atom(const Atom& a, const Substitution& h, const PredicateEvaluator& pred_eval);
bool eval_formula(const Formula& f, const Substitution& h, const PredicateEvaluator& pred_eval = {});

/// Replaces the given variables by constant words everywhere in f.
Pattern substitute(const Pattern& p, const Substitution& partial);
Equation substitute(const Equation& e, const Substitution& partial);
Formula substitute(const Formula& f, const Substitution& partial);

struct Commutation {
	Word root;   // primitive unless both inputs are empty
	std::size_t p = 0;
	std::size_t q = 0;

	bool operator==(const Commutation&) const = default;
};

/// uv = vu iff u = w^p and v = w^q for a common primitive w.
std::optional<Commutation> commutation_check(std::string_view u, std::string_view v);

/// Shortest w with s = w^k.
Word primitive_root(std::string_view s);

/// Words of length <= max_len in length-lexicographic order over the alphabet.
std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t max_len);

enum class Verdict : std::uint8_t { sat, unsat, unknown };

std::string_view to_string(Verdict v);

/// h(x) = (alpha beta)^exponent alpha
struct CompressedImage {
	Word alpha;
	Word beta;
	BigInt exponent = 0;

	BigInt length() const;
	/// Expands when the result has at most `ceiling` letters.
	std::optional<Word> expand(std::size_t ceiling) const;
	std::string to_string() const;
};

struct SolveResult {
	Verdict verdict = Verdict::unknown;
	/// Concrete images; variables whose image exceeds the expansion ceiling
	/// appear only in `compressed`.
	Substitution model;
	std::map<std::string, CompressedImage> compressed;
	std::vector<std::string> notes;

	bool sat() const noexcept { return verdict == Verdict::sat; }
};

} // namespace wordeq
