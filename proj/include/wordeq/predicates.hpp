#pragma once

// Extra string relations beyond word equations, and formula templates that
// define one relation from another.
//
// Numeric arguments (strnum, P) are words read by their length.

#include "wordeq/core.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace wordeq::predicates {

struct CatalogEntry {
	std::size_t arity = 0;
	bool (*evaluate)(const std::vector<Word>& args) = nullptr;
};

/// Eq_a, Eq_b, Length, Abelian, Shuffle, Projection, Subword, Morphism,
/// Insert, Erase, Onlyas, Onlybs, strnum, P.
const std::map<std::string, CatalogEntry>& catalog();

/// Throws on an unknown name or an arity mismatch.
bool eval_predicate(const std::string& name, const std::vector<Word>& args);

/// Adapter for eval_formula and the oracle.
PredicateEvaluator catalog_evaluator();

bool shuffle(std::string_view x, std::string_view y, std::string_view z);
bool subword(std::string_view x, std::string_view y);
bool projection(std::string_view x, std::string_view y);
/// Some letter-to-word morphism h has h(x) = y. Exponential in the number of
/// distinct letters of x in the worst case.
bool morphism(std::string_view x, std::string_view y);
/// x = u0 y u1 ... y uk and z = u0 u1 ... uk for some k >= 0.
bool erase(std::string_view x, std::string_view y, std::string_view z);
/// Canonical binary numeral of n: "0", "1", "10", ...
Word binary(std::size_t n);

/// Formula with parameter slots. Fresh variables are existentially
/// quantified on instantiation.
struct FormulaTemplate {
	std::string name;
	std::vector<std::string> parameters;
	std::vector<std::string> fresh_vars;
	Formula body;
	/// Search bound for fresh variables without an entry in `bounds`.
	std::size_t default_bound = 5;
	std::map<std::string, std::size_t> bounds;

	/// exists (argument variables, fresh). body[parameters := args]. Fresh
	/// variables clashing with argument variables or `avoid` are renamed.
	QuantifiedFormula instantiate(const std::vector<Pattern>& args, const std::set<std::string>& avoid = {}) const;

	std::size_t bound_of(const std::string& fresh) const;
};

struct TemplateSearch {
	/// Added to every fresh-variable bound.
	std::size_t slack = 0;
	std::uint64_t node_limit = 50'000'000;
};

/// Bounded search for fresh-variable images making the body true with the
/// parameters bound to `args`. Equations with one open variable are solved
/// directly, so only the remaining fresh variables are enumerated. Throws
/// when the node limit is reached.
std::optional<Substitution> evaluate_template(const FormulaTemplate& t, const std::vector<Word>& args,
											  const Alphabet& alphabet, const TemplateSearch& search = {});

/// Templates defining `target` (Onlyas, Onlybs, Eq_a or Eq_b) from `source`.
/// Supported: Eq_a/Eq_b to Onlyas/Onlybs, Onlyas/Onlybs to Eq_a/Eq_b, and
/// Abelian to Eq_x, Shuffle, Projection, Subword, Erase, Insert to Only_xs.
/// The alphabet must contain the target letter.
FormulaTemplate encode_counting(const std::string& source, const std::string& target, const Alphabet& alphabet);

/// Multiply2(x, y, z) from Morphism: true iff x = a^i b, y = a^j b,
/// z = a^(ij) b and ij >= 2. Needs letters a, b, c.
FormulaTemplate encode_multiply(const Alphabet& alphabet);

/// P(p, x, y) from strnum over {0, 1}: p = x * 2^y. The last conjunct
/// also accepts p = x = 0.
FormulaTemplate encode_power_binary();

/// (Onlyas from Eq_a, Eq_a from Onlyas).
std::pair<FormulaTemplate, FormulaTemplate> mutual_onlyas_eqa();

} // namespace wordeq::predicates
