#include "support.hpp"
#include "wordeq/predicates.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace wordeq;
using namespace wordeq::predicates;

namespace {

const Alphabet ab("ab");

// Every word obtained from x by removing some set of non-overlapping
// occurrences of y.
void erasures(const Word& x, const Word& y, std::size_t from, Word kept, std::set<Word>& out) {
	if (from == x.size()) {
		out.insert(kept);
		return;
	}
	erasures(x, y, from + 1, kept + x[from], out);
	if (!y.empty() && x.compare(from, y.size(), y) == 0) erasures(x, y, from + y.size(), kept, out);
}

bool brute_shuffle(const Word& x, const Word& y, const Word& z) {
	if (z.empty()) return x.empty() && y.empty();
	return (!x.empty() && x[0] == z[0] && brute_shuffle(x.substr(1), y, z.substr(1))) ||
		   (!y.empty() && y[0] == z[0] && brute_shuffle(x, y.substr(1), z.substr(1)));
}

bool brute_morphism(const Word& x, const Word& y) {
	std::vector<char> letters;
	for (char c : x) {
		if (std::find(letters.begin(), letters.end(), c) == letters.end()) letters.push_back(c);
	}
	const auto images = words_up_to(ab, y.size());
	std::vector<std::size_t> idx(letters.size(), 0);
	for (;;) {
		std::map<char, Word> h;
		for (std::size_t i = 0; i < letters.size(); ++i) h[letters[i]] = images[idx[i]];
		Word w;
		for (char c : x) w += h[c];
		if (w == y) return true;
		std::size_t i = 0;
		while (i < idx.size() && ++idx[i] == images.size()) idx[i++] = 0;
		if (i == idx.size()) return false;
	}
}

bool holds(const FormulaTemplate& t, const std::vector<Word>& args, const Alphabet& alphabet, std::size_t slack = 0) {
	const auto witness = evaluate_template(t, args, alphabet, TemplateSearch{.slack = slack});
	if (witness) {
		Substitution h = *witness;
		for (std::size_t i = 0; i < args.size(); ++i) h.set(t.parameters[i], args[i]);
		REQUIRE(eval_formula(t.body, h, catalog_evaluator()));
	}
	return witness.has_value();
}

Word unary(std::size_t n) { return Word(n, '1'); }

} // namespace

TEST_CASE("catalog") {
	std::set<std::string> names;
	for (const auto& [name, e] : catalog()) names.insert(name);
	CHECK(names == std::set<std::string>{"Eq_a", "Eq_b", "Length", "Abelian", "Shuffle", "Projection", "Subword",
										 "Morphism", "Insert", "Erase", "Onlyas", "Onlybs", "strnum", "P"});
	CHECK_THROWS_AS(eval_predicate("Abelian", {"a"}), Error);
	CHECK_THROWS_AS(eval_predicate("Nope", {}), Error);
}

TEST_CASE("eval_predicate examples") {
	CHECK(eval_predicate("Abelian", {"ab", "ba"}));
	CHECK(eval_predicate("Shuffle", {"ab", "cd", "acbd"}));
	CHECK_FALSE(eval_predicate("Shuffle", {"ab", "cd", "adbc"}));
	CHECK(eval_predicate("Morphism", {"ab", "bb"}));
	CHECK_FALSE(eval_predicate("Morphism", {"aa", "ab"}));
	CHECK(eval_predicate("Eq_a", {"aab", "bbaa"}));
	CHECK_FALSE(eval_predicate("Eq_b", {"aab", "bbaa"}));
	CHECK(eval_predicate("Length", {"ab", "ba"}));
	CHECK(eval_predicate("Projection", {"abcab", "bb"}));
	CHECK_FALSE(eval_predicate("Projection", {"abab", "ba"}));
	CHECK(eval_predicate("Projection", {"ab", ""}));
	CHECK(eval_predicate("Subword", {"ab", "baab"}));
	CHECK_FALSE(eval_predicate("Subword", {"aa", "ba"}));
	CHECK(eval_predicate("Erase", {"abab", "ab", ""}));
	CHECK(eval_predicate("Erase", {"abab", "ab", "ab"}));
	CHECK(eval_predicate("Erase", {"aaa", "aa", "a"}));
	CHECK_FALSE(eval_predicate("Erase", {"aaa", "aa", ""}));
	CHECK(eval_predicate("Insert", {"a", "b", "bab"}));
	CHECK(eval_predicate("Onlyas", {"abab", "aa"}));
	CHECK_FALSE(eval_predicate("Onlyas", {"abab", "a"}));
	CHECK(eval_predicate("Onlybs", {"abab", "bb"}));
	CHECK(eval_predicate("strnum", {"101", unary(5)}));
	CHECK(eval_predicate("strnum", {"0", ""}));
	CHECK_FALSE(eval_predicate("strnum", {"0101", unary(5)}));
	CHECK_FALSE(eval_predicate("strnum", {"", ""}));
	CHECK(eval_predicate("P", {unary(12), unary(3), unary(2)}));
	CHECK_FALSE(eval_predicate("P", {unary(6), unary(2), unary(1)}));
	CHECK(binary(0) == "0");
	CHECK(binary(6) == "110");
}

TEST_CASE("relation cross-checks over short words") {
	std::size_t triples = 0;
	for (const auto& x : words_up_to(ab, 9)) {
		for (const auto& y : words_up_to(ab, 9 - x.size())) {
			std::set<Word> erased;
			erasures(x, y, 0, "", erased);
			for (const auto& z : words_up_to(ab, 9 - x.size() - y.size())) {
				++triples;
				const bool e = erase(x, y, z);
				REQUIRE(e == erased.contains(z));
				REQUIRE(eval_predicate("Insert", {z, y, x}) == e);
			}
			if (x.size() + y.size() <= 7) {
				REQUIRE((!subword(x, y) || x.size() <= y.size()));
				REQUIRE((!eval_predicate("Abelian", {x, y}) || x.size() == y.size()));
			}
		}
	}
	CHECK(triples > 10000);
}

TEST_CASE("shuffle, morphism and projection against brute force") {
	for (const auto& x : words_up_to(ab, 3)) {
		for (const auto& y : words_up_to(ab, 4)) {
			INFO(x << " " << y);
			REQUIRE(morphism(x, y) == brute_morphism(x, y));
			bool proj = false;
			for (const std::string kept : {"", "a", "b", "ab"}) {
				Word w;
				for (char c : x) {
					if (kept.find(c) != std::string::npos) w += c;
				}
				proj = proj || w == y;
			}
			REQUIRE(projection(x, y) == proj);
			for (const auto& z : words_up_to(ab, 5)) {
				REQUIRE(predicates::shuffle(x, y, z) == brute_shuffle(x, y, z));
			}
		}
	}
}

TEST_CASE("instantiate") {
	const auto t = encode_counting("Subword", "Onlyas", ab);
	const auto q = t.instantiate({Pattern::parse("z a", ab), Pattern::word("aa")});
	CHECK(q.existential_variables() == std::vector<std::string>{"z", "z_"});
	CHECK(q.fragment() == Fragment::sigma1);
	CHECK_THROWS_AS(t.instantiate({Pattern::word("a")}), Error);

	const auto p = encode_power_binary().instantiate({Pattern::word("1111"), Pattern::word("11"), Pattern::word("1")});
	const auto* lc = std::get_if<LinearConstraint>(&*p.matrix.children[2].atom);
	REQUIRE(lc);
	CHECK(lc->constant == 1);
}

TEST_CASE("counting encoder examples") {
	const auto t = encode_counting("Eq_a", "Onlyas", ab);
	CHECK(t.body == Formula::conj({Formula::eq(Pattern::parse("y a", ab), Pattern::parse("a y", ab)),
								   Formula::pred("Eq_a", {Pattern::parse("x", ab), Pattern::parse("y", ab)})}));

	const auto sub = encode_counting("Subword", "Onlyas", ab);
	CHECK(holds(sub, {"aba", "aa"}, ab));
	CHECK_FALSE(holds(sub, {"aba", "a"}, ab));

	const auto er = encode_counting("Erase", "Onlyas", ab);
	CHECK(holds(er, {"ab", "a"}, ab));
	CHECK_FALSE(holds(er, {"ab", "ab"}, ab));

	const auto [only, eq] = mutual_onlyas_eqa();
	CHECK(holds(eq, {"aba", "baa"}, ab));
	CHECK(evaluate_template(eq, {"aba", "baa"}, ab)->at("z") == "aa");
	CHECK_FALSE(holds(eq, {"a", "bb"}, ab));
	CHECK(evaluate_template(eq, {"", ""}, ab)->at("z") == "");
	CHECK(holds(only, {"bab", "a"}, Alphabet("a")));

	CHECK_THROWS_AS(encode_counting("Morphism", "Onlyas", ab), Error);
	CHECK_THROWS_AS(encode_counting("Abelian", "Onlyas", ab), Error);
	CHECK_THROWS_AS(encode_counting("Shuffle", "Onlybs", Alphabet("a")), Error);
}

TEST_CASE("counting encoders are exact on short arguments") {
	const std::vector<std::pair<std::string, std::string>> cases{
		{"Eq_a", "Onlyas"},		  {"Onlyas", "Eq_a"},	  {"Abelian", "Eq_a"}, {"Shuffle", "Onlyas"},
		{"Projection", "Onlyas"}, {"Subword", "Onlyas"}, {"Erase", "Onlyas"}, {"Insert", "Onlyas"},
		{"Eq_b", "Onlybs"},		  {"Abelian", "Eq_b"},	  {"Shuffle", "Onlybs"}, {"Erase", "Onlybs"},
	};
	for (const auto& [source, target] : cases) {
		const auto t = encode_counting(source, target, ab);
		for (const auto& x : words_up_to(ab, 3)) {
			for (const auto& y : words_up_to(ab, 3)) {
				INFO(t.name << " on " << x << ", " << y);
				const bool expected = eval_predicate(target, {x, y});
				REQUIRE(holds(t, {x, y}, ab) == expected);
				REQUIRE(holds(t, {x, y}, ab, 2) == expected);
			}
		}
	}
}

TEST_CASE("counting encoders over three letters") {
	const Alphabet abc("abc");
	for (const std::string source : {"Shuffle", "Erase", "Insert", "Projection"}) {
		const auto t = encode_counting(source, "Onlyas", abc);
		for (const auto& x : words_up_to(abc, 2)) {
			for (const auto& y : words_up_to(Alphabet("ab"), 2)) {
				INFO(t.name << " on " << x << ", " << y);
				REQUIRE(holds(t, {x, y}, abc) == eval_predicate("Onlyas", {x, y}));
			}
		}
	}
	const auto abelian = encode_counting("Abelian", "Eq_a", abc);
	CHECK(holds(abelian, {"acb", "bba"}, abc));
	CHECK_FALSE(holds(abelian, {"aca", "cab"}, abc));
}

TEST_CASE("Multiply2 examples") {
	const Alphabet abc("abc");
	const auto t = encode_multiply(abc);
	CHECK(holds(t, {"ab", "aab", "aab"}, abc));
	CHECK_FALSE(holds(t, {"ab", "aab", "aaab"}, abc));
	CHECK_FALSE(holds(t, {"ab", "ab", "ab"}, abc));
	CHECK(holds(t, {"aab", "aaab", "aaaaaab"}, abc));
	CHECK(holds(t, {"aab", "aab", "aaaab"}, abc, 2));
	CHECK_FALSE(holds(t, {"bab", "aab", "aab"}, abc));
	CHECK_THROWS_AS(encode_multiply(ab), Error);
	const auto w = evaluate_template(t, {"ab", "aab", "aab"}, abc);
	REQUIRE(w);
	CHECK(w->at("xpp") == "abab");
	CHECK(w->at("u") == "ababccababaccb");
	CHECK(w->at("v") == "aaccaaacc");
}

TEST_CASE("power encoding") {
	const Alphabet bits("01");
	const auto t = encode_power_binary();
	const auto w = evaluate_template(t, {unary(8), unary(2), unary(2)}, bits);
	REQUIRE(w);
	CHECK(w->at("xs") == "10");
	CHECK(w->at("z") == "00");
	CHECK(holds(t, {unary(5), unary(5), ""}, bits));
	CHECK_FALSE(holds(t, {unary(6), unary(2), unary(1)}, bits));
	for (std::size_t x = 0; x <= 6; ++x) {
		for (std::size_t y = 0; y <= 2; ++y) {
			for (std::size_t p = 0; p <= 12; ++p) {
				REQUIRE(holds(t, {unary(p), unary(x), unary(y)}, bits) == (p == x << y));
			}
		}
	}
}
