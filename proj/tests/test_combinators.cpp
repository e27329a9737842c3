#include "sigma2_check.hpp"
#include "support.hpp"
#include "wordeq/combinators.hpp"
#include "wordeq/oracle.hpp"

#include <catch_amalgamated.hpp>

#include <unordered_map>

using namespace wordeq;
using namespace wordeq::combinators;
using wordeq::testing::eqn;
using wordeq::testing::pat;

namespace {

const Alphabet ab("ab");

bool solves(const Equation& e, const Substitution& h) { return apply(e.lhs, h) == apply(e.rhs, h); }

std::vector<Substitution> all_substitutions(const std::vector<std::string>& vars, std::size_t bound) {
	const auto words = words_up_to(ab, bound);
	std::vector<Substitution> out{Substitution{}};
	for (const auto& v : vars) {
		std::vector<Substitution> next;
		for (const auto& h : out) {
			for (const auto& w : words) {
				Substitution g = h;
				g.set(v, w);
				next.push_back(std::move(g));
			}
		}
		out = std::move(next);
	}
	return out;
}

} // namespace

TEST_CASE("pair_conjunction builds the paired equation") {
	const Equation z = pair_conjunction(eqn("x", "y"), eqn("u", "v"), 'a', 'b');
	CHECK(z == eqn("x a u x b u", "y a v y b v"));
	CHECK(z.variables() == std::vector<std::string>{"x", "u", "y", "v"});
}

TEST_CASE("pair_conjunction examples") {
	const Equation t = pair_conjunction(eqn("x", "x"), eqn("a", "a"), 'a', 'b');
	for (const auto& h : all_substitutions({"x"}, 3)) {
		CHECK(solves(t, h));
	}
	const Equation u = pair_conjunction(eqn("x", "a"), eqn("x", "b"), 'a', 'b');
	for (const auto& h : all_substitutions({"x"}, 5)) {
		CHECK_FALSE(solves(u, h));
	}
}

TEST_CASE("pair_conjunction errors") {
	CHECK_THROWS_AS(pair_conjunction(eqn("x", "y").negated(), eqn("x", "y"), 'a', 'b'), Error);
	CHECK_THROWS_AS(pair_conjunction(eqn("x", "y"), eqn("x", "y"), 'a', 'a'), Error);
}

TEST_CASE("pair_conjunction is exact on small patterns") {
	// For fixed h, h(Z1) = h(Z2) compares F(h(U), h(U')) with F(h(V), h(V'))
	// where F(p, p') = p a p' p b p'. The equivalence over every quadruple is
	// the injectivity of F on the pairs that occur.
	const auto patterns = wordeq::testing::patterns_up_to(ab, {"x", "y"}, 3);
	REQUIRE(patterns.size() == 85);
	for (const auto& h : all_substitutions({"x", "y"}, 3)) {
		std::unordered_map<std::string, std::pair<Word, Word>> seen;
		bool injective = true;
		for (const auto& u : patterns) {
			for (const auto& u2 : patterns) {
				const Equation z = pair_conjunction(Equation{u, u, true}, Equation{u2, u2, true}, 'a', 'b');
				std::pair<Word, Word> comp{apply(u, h), apply(u2, h)};
				auto [it, fresh] = seen.try_emplace(apply(z.lhs, h), comp);
				injective = injective && (fresh || it->second == comp);
			}
		}
		REQUIRE(injective);
	}
	std::mt19937 rng(7);
	std::uniform_int_distribution<std::size_t> pick(0, patterns.size() - 1);
	const auto hs = all_substitutions({"x", "y"}, 3);
	for (int t = 0; t < 20000; ++t) {
		const Equation e1{patterns[pick(rng)], patterns[pick(rng)], true};
		const Equation e2{patterns[pick(rng)], patterns[pick(rng)], true};
		const Equation z = pair_conjunction(e1, e2, 'a', 'b');
		const auto& h = hs[t % hs.size()];
		REQUIRE(solves(z, h) == (solves(e1, h) && solves(e2, h)));
	}
}

TEST_CASE("collapse_conjunction examples") {
	CHECK(collapse_conjunction({eqn("x", "y")}, 'a', 'b') == eqn("x", "y"));
	CHECK_THROWS_AS(collapse_conjunction({}, 'a', 'b'), Error);

	const Equation c = collapse_conjunction({eqn("x a", "a x"), eqn("x b", "b x")}, 'a', 'b');
	for (const auto& h : all_substitutions({"x"}, 4)) {
		CHECK(solves(c, h) == h.at("x").empty());
	}
	const Equation d = collapse_conjunction({eqn("x", "a"), eqn("y", "b"), eqn("x", "y")}, 'a', 'b');
	for (const auto& h : all_substitutions({"x", "y"}, 3)) {
		CHECK_FALSE(solves(d, h));
	}
}

TEST_CASE("distinguishing_substitution examples") {
	const auto h = distinguishing_substitution(pat("x y"), pat("y x"), ab);
	CHECK(h.at("x") == "abbbbbba");
	CHECK(h.at("y") == "abbbbbbba");
	CHECK(apply(pat("x y"), h) != apply(pat("y x"), h));

	const auto same = distinguishing_substitution(pat("x a y"), pat("x a y"), ab);
	CHECK(apply(pat("x a y"), same) == apply(pat("x a y"), same));

	const auto k3 = distinguishing_substitution(pat("a x"), pat("x a"), 3, 'a', 'b');
	CHECK(k3.at("x") == "abbbba");
	const Word l = apply(pat("a x"), k3);
	const Word r = apply(pat("x a"), k3);
	CHECK(l[0] == r[0]);
	CHECK(l[1] != r[1]);

	CHECK_THROWS_AS(distinguishing_substitution(pat("x", "a"), pat("x", "a"), Alphabet("a")), Error);
	CHECK(distinguishing_image_bound(5, 2) == 9);
}

TEST_CASE("distinguishing_substitution separates exactly the distinct pairs") {
	std::size_t pairs = 0;
	wordeq::testing::for_each_canonical_pair(ab, 5, [&](const Pattern& u, const Pattern& v) {
		++pairs;
		const auto h = distinguishing_substitution(u, v, ab);
		for (const auto& [x, w] : h.bindings()) {
			REQUIRE(w.size() <= distinguishing_image_bound(u.size() + v.size() + 1, h.size()));
		}
		REQUIRE((apply(u, h) == apply(v, h)) == (u == v));
	});
	// Sequences up to renaming: 1, 3, 10, 37, 151, 674 of lengths 0..5, each split L+1 ways.
	CHECK(pairs == 4984);
}

TEST_CASE("to_dnf") {
	const Formula a = Formula::eq(pat("x"), pat("a"));
	const Formula b = Formula::eq(pat("y"), pat("b"));
	const Formula c = Formula::eq(pat("x"), pat("y"));
	CHECK(to_dnf(Formula::conj({Formula::disj({a, b}), c})) ==
		  Formula::disj({Formula::conj({a, c}), Formula::conj({b, c})}));
	CHECK(to_dnf(Formula::negate(a)) == Formula::neq(pat("x"), pat("a")));
	CHECK(to_dnf(a) == a);

	const Formula p = Formula::pred("Abelian", {pat("x"), pat("y")});
	CHECK(to_dnf(Formula::negate(p)) == Formula::negate(p));

	const Formula len = Formula::make_atom(LinearConstraint{{{"x", 1}}, 2, Relation::eq});
	const auto clauses = dnf_clauses(Formula::negate(len));
	REQUIRE(clauses.size() == 2);
	CHECK(std::get<LinearConstraint>(*clauses[0][0].atom) == LinearConstraint{{{"x", 1}}, 1, Relation::le});
	CHECK(std::get<LinearConstraint>(*clauses[1][0].atom) == LinearConstraint{{{"x", 1}}, 3, Relation::ge});

	// De Morgan through nested negation.
	const Formula nested = Formula::negate(Formula::disj({a, Formula::negate(b)}));
	CHECK(to_dnf(nested) == Formula::conj({Formula::neq(pat("x"), pat("a")), b}));
}

TEST_CASE("to_dnf preserves truth") {
	std::mt19937 rng(11);
	const Formula atoms[] = {Formula::eq(pat("x"), pat("a")), Formula::eq(pat("x y"), pat("y x")),
							 Formula::eq(pat("y"), pat("b b"))};
	std::uniform_int_distribution<int> pick(0, 2);
	std::function<Formula(int)> gen = [&](int depth) -> Formula {
		if (depth == 0) return atoms[pick(rng)];
		switch (pick(rng)) {
		case 0: return Formula::negate(gen(depth - 1));
		case 1: return Formula::conj({gen(depth - 1), gen(depth - 1)});
		default: return Formula::disj({gen(depth - 1), gen(depth - 1)});
		}
	};
	const auto hs = all_substitutions({"x", "y"}, 2);
	for (int t = 0; t < 100; ++t) {
		const Formula f = gen(3);
		const Formula d = to_dnf(f);
		for (const auto& h : hs) {
			REQUIRE(eval_formula(f, h) == eval_formula(d, h));
		}
	}
}

TEST_CASE("triviality_analysis examples") {
	auto r1 = triviality_analysis(eqn("x y", "y x"), {"x"}, {"y"});
	CHECK(r1.skeleton_ok);
	CHECK(r1.induced_system == std::vector<Equation>{eqn("x", ""), eqn("", "x")});

	// The skeletons agree; the segment system x a = e, e = a x has no solution.
	auto r2 = triviality_analysis(eqn("x a y", "y a x"), {"x"}, {"y"});
	CHECK(r2.skeleton_ok);
	CHECK(r2.induced_system == std::vector<Equation>{eqn("x a", ""), eqn("", "a x")});

	auto r3 = triviality_analysis(eqn("y1 y2", "y1 y2"), {}, {"y1", "y2"});
	CHECK(r3.skeleton_ok);
	CHECK(r3.induced_system == std::vector<Equation>(3, eqn("", "")));

	auto r4 = triviality_analysis(eqn("y1 y2", "y2 y1"), {}, {"y1", "y2"});
	CHECK_FALSE(r4.skeleton_ok);
	CHECK(r4.induced_system.empty());

	auto r5 = triviality_analysis(eqn("x a", "a x"), {"x"}, {});
	CHECK(r5.skeleton_ok);
	CHECK(r5.induced_system == std::vector<Equation>{eqn("x a", "a x")});

	CHECK_THROWS_AS(triviality_analysis(eqn("x", "z"), {"x"}, {}), Error);
}

TEST_CASE("decide_sigma2_positive examples") {
	auto r1 = decide_sigma2_positive(QuantifiedFormula::exists_forall({"x"}, {"y"}, Formula::eq(pat("x y"), pat("y x"))), ab);
	CHECK(r1.truth == Truth::true_);
	CHECK(r1.witness.at("x").empty());

	auto r2 = decide_sigma2_positive(
		QuantifiedFormula::exists_forall({"x"}, {"y"}, Formula::eq(pat("x a y"), pat("y a x"))), ab);
	CHECK(r2.truth == Truth::false_);

	auto r3 = decide_sigma2_positive(
		QuantifiedFormula::exists_forall({"x1", "x2"}, {"y"},
										 Formula::conj({Formula::eq(pat("x1"), pat("ab")),
														Formula::eq(pat("x1 y"), pat("x2 y"))})),
		ab);
	CHECK(r3.truth == Truth::true_);
	CHECK(r3.witness.at("x1") == "ab");
	CHECK(r3.witness.at("x2") == "ab");
}

TEST_CASE("decide_sigma2_positive errors and options") {
	CHECK_THROWS_AS(decide_sigma2_positive(QuantifiedFormula::exists_forall({"x"}, {"y"}, Formula::neq(pat("x"), pat("y"))), ab),
					Error);
	CHECK_THROWS_AS(decide_sigma2_positive(QuantifiedFormula::exists_forall({"x"}, {"y"}, Formula::eq(pat("x"), pat("y"))),
										   Alphabet("a")),
					Error);

	Sigma2Options undecided;
	undecided.solver = [](const ExistentialSystem&, const Alphabet&) { return SolveResult{}; };
	auto r = decide_sigma2_positive(QuantifiedFormula::exists_forall({"x"}, {"y"}, Formula::eq(pat("x y"), pat("y x"))),
									ab, undecided);
	CHECK(r.truth == Truth::unknown);

	// A disjunct whose skeleton fails needs no solver call.
	auto r4 = decide_sigma2_positive(QuantifiedFormula::exists_forall({"x"}, {"y1", "y2"}, Formula::eq(pat("y1 y2"), pat("y2 y1"))),
									 ab, undecided);
	CHECK(r4.truth == Truth::false_);

	// Disjunction: the second disjunct is trivial.
	auto r5 = decide_sigma2_positive(
		QuantifiedFormula::exists_forall({"x"}, {"y"}, Formula::disj({Formula::eq(pat("y"), pat("a")),
																	   Formula::eq(pat("x y"), pat("y"))})),
		ab);
	CHECK(r5.truth == Truth::true_);
	CHECK(r5.disjunct == 1);
}

TEST_CASE("decide_sigma2_positive agrees with the bounded oracle") {
	std::mt19937 rng(2024);
	int true_count = 0;
	for (int t = 0; t < 60; ++t) {
		const auto phi = wordeq::testing::random_sigma2_positive(rng);
		const auto r = decide_sigma2_positive(phi, ab);
		std::string why;
		const bool agree = wordeq::testing::sigma2_agrees_with_oracle(phi, ab, r, why);
		INFO(phi.to_string() << ": " << why);
		CHECK(agree);
		true_count += r.truth == Truth::true_;
	}
	CHECK(true_count > 0);
}
