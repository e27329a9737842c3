#include "support.hpp"
#include "wordeq/oracle.hpp"
#include "wordeq/regord.hpp"

#include <catch_amalgamated.hpp>

using namespace wordeq;
using namespace wordeq::regord;
using wordeq::testing::eqn;
using wordeq::testing::pat;

namespace {

const Alphabet ab("ab");

bool solves(const Equation& e, const Substitution& h) { return apply(e.lhs, h) == apply(e.rhs, h); }

/// DFA of (bb)* over {a, b}.
automata::Dfa even_bs() {
	return automata::Dfa::from_partial(ab, 2, 0, {0}, {{0, 'b', 1}, {1, 'b', 0}});
}

bool is_instance(const ParametricImage& img, const Word& w) {
	if (img.kind == ParametricImage::Kind::unconstrained) return true;
	const std::size_t period = img.alpha.size() + img.beta.size();
	if (w.size() < img.alpha.size() || (w.size() - img.alpha.size()) % period != 0) return false;
	Word built;
	for (std::size_t n = (w.size() - img.alpha.size()) / period; n > 0; --n) built += img.alpha + img.beta;
	return built + img.alpha == w;
}

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

TEST_CASE("check_strictly_regular_ordered examples") {
	CHECK(check_strictly_regular_ordered(eqn("x1 a x2 x3 b", "x1 a x2 b x3")));
	CHECK_FALSE(check_strictly_regular_ordered(eqn("x1 a", "x1 x2")));
	CHECK_FALSE(check_strictly_regular_ordered(eqn("x1 a x3 x2 b", "x1 a x2 b x3")));
	CHECK_FALSE(check_strictly_regular_ordered(eqn("x x", "x x")));
	CHECK(check_strictly_regular_ordered(eqn("a b", "a b")));
}

TEST_CASE("enumerate_parametric_solutions examples") {
	const auto fams = enumerate_parametric_solutions(eqn("a x", "x a"));
	REQUIRE(fams.size() == 1);
	CHECK(fams[0].images.at("x") == ParametricImage{ParametricImage::Kind::periodic, "", "a"});
	CHECK(fams[0].instantiate({{"x", 0}}).at("x") == "");
	CHECK(fams[0].instantiate({{"x", 3}}).at("x") == "aaa");

	const auto same = enumerate_parametric_solutions(eqn("x", "x"));
	REQUIRE(same.size() == 1);
	CHECK(same[0].images.at("x").kind == ParametricImage::Kind::unconstrained);
	CHECK(solves(eqn("x", "x"), same[0].instantiate({}, {{"x", "abba"}})));

	CHECK(enumerate_parametric_solutions(eqn("x a", "b x")).empty());
	CHECK(enumerate_parametric_solutions(eqn("x b", "a x")).empty());
	CHECK_THROWS_AS(enumerate_parametric_solutions(eqn("x y", "y x")), Error);

	// a b x = x a b: x = (ab)^n.
	const auto conj = enumerate_parametric_solutions(eqn("a b x", "x a b"));
	REQUIRE(conj.size() == 1);
	CHECK(conj[0].images.at("x") == ParametricImage{ParametricImage::Kind::periodic, "", "ab"});

	// a b x = x b a has the family x = (ab)^n a.
	const auto odd = enumerate_parametric_solutions(eqn("a b x", "x b a"));
	REQUIRE(odd.size() == 1);
	CHECK(odd[0].images.at("x") == ParametricImage{ParametricImage::Kind::periodic, "a", "b"});
}

TEST_CASE("every family instance is a solution") {
	std::mt19937 rng(3);
	std::size_t families = 0;
	for (int t = 0; t < 200; ++t) {
		const Equation e = wordeq::testing::random_regular_ordered(rng);
		for (const auto& fam : enumerate_parametric_solutions(e)) {
			++families;
			for (std::size_t n = 0; n <= 3; ++n) {
				std::map<std::string, std::size_t> ex;
				std::map<std::string, Word> free;
				for (const auto& x : fam.variables) {
					ex[x] = (n + x.size()) % 4;
					free[x] = wordeq::testing::random_word(rng, ab, 3);
				}
				INFO(e.to_string());
				REQUIRE(solves(e, fam.instantiate(ex, free)));
			}
		}
	}
	CHECK(families > 40);
}

TEST_CASE("every small solution belongs to a family") {
	std::mt19937 rng(8);
	std::size_t solutions = 0;
	for (int t = 0; t < 150; ++t) {
		const Equation e = wordeq::testing::random_regular_ordered(rng, 2, 8);
		const auto fams = enumerate_parametric_solutions(e);
		for (const auto& h : all_substitutions(e.variables(), 3)) {
			if (!solves(e, h)) continue;
			++solutions;
			const bool covered = std::any_of(fams.begin(), fams.end(), [&](const ParametricAssignment& f) {
				return std::all_of(f.variables.begin(), f.variables.end(),
								   [&](const std::string& x) { return is_instance(f.images.at(x), h.at(x)); });
			});
			INFO(e.to_string() << " with " << h.to_string());
			REQUIRE(covered);
		}
	}
	CHECK(solutions > 100);
}

TEST_CASE("solve_regular_ordered examples") {
	const Equation e1 = eqn("x1 a x2 x3 b", "x1 a x2 b x3");
	auto r1 = solve_regular_ordered(e1, {LinearConstraint{{{"x3", 1}}, 2, Relation::ge}}, {{"x3", even_bs()}}, ab);
	REQUIRE(r1.solve.sat());
	CHECK(r1.solve.model.at("x1") == "");
	CHECK(r1.solve.model.at("x2") == "");
	CHECK(r1.solve.model.at("x3") == "bb");
	CHECK(r1.classification.at("x3") == Overlap::overlapping);
	CHECK(r1.classification.at("x1") == Overlap::unconstrained);

	auto r2 = solve_regular_ordered(eqn("x b", "a x"), {}, {}, ab);
	CHECK(r2.solve.verdict == Verdict::unsat);

	auto r3 = solve_regular_ordered(eqn("a x", "x a"), {LinearConstraint{{{"x", 1}}, 3, Relation::eq}}, {}, ab);
	REQUIRE(r3.solve.sat());
	CHECK(r3.solve.model.at("x") == "aaa");
	CHECK(r3.exponents.at("x") == 3);
	CHECK(r3.solve.compressed.at("x").to_string() == "(\"a\")^n \"\", n = 3");

	auto r4 = solve_regular_ordered(eqn("a x", "x a"), {}, {}, ab);
	REQUIRE(r4.solve.sat());
	CHECK(r4.solve.model.at("x") == "");
	CHECK(r4.classification.at("x") == Overlap::non_overlapping);
}

TEST_CASE("solve_regular_ordered errors and metadata") {
	CHECK_THROWS_AS(solve_regular_ordered(eqn("x y", "y x"), {}, {}, ab), Error);
	CHECK_THROWS_AS(solve_regular_ordered(eqn("a x", "x a").negated(), {}, {}, ab), Error);
	CHECK_THROWS_AS(solve_regular_ordered(eqn("a x", "x a"), {}, {{"x", automata::Dfa::universal(Alphabet("abc"))}}, ab),
					Error);

	auto same = solve_regular_ordered(eqn("x", "x"), {LinearConstraint{{{"x", 1}}, 2, Relation::eq}},
									  {{"x", even_bs()}}, ab);
	REQUIRE(same.solve.sat());
	CHECK(same.identical_sides);
	CHECK(same.solve.model.at("x") == "bb");

	// Variables outside the equation follow theta and their automaton.
	auto extra = solve_regular_ordered(Equation{}, {LinearConstraint{{{"z", 1}}, 3, Relation::ge}}, {{"z", even_bs()}}, ab);
	REQUIRE(extra.solve.sat());
	CHECK(extra.solve.model.at("z") == "bbbb");

	auto none = solve_regular_ordered(eqn("a x", "x a"), {}, {{"x", automata::Dfa::empty(ab)}}, ab);
	CHECK(none.solve.verdict == Verdict::unsat);
}

TEST_CASE("solve_regular_ordered compresses huge exponents") {
	auto r = solve_regular_ordered(eqn("a b x", "x a b"), {LinearConstraint{{{"x", 1}}, 2'000'000, Relation::eq}}, {}, ab,
								   64);
	REQUIRE(r.solve.sat());
	CHECK_FALSE(r.solve.model.contains("x"));
	CHECK(r.exponents.at("x") == 1'000'000);
	CHECK(r.solve.compressed.at("x").to_string() == "(\"ab\")^n \"\", n = 1000000");
	CHECK(r.lengths.at("x") == 2'000'000);
}

TEST_CASE("solve_regular_ordered mixes length and regular constraints") {
	// x = (ab)^n, y free but of odd length, |x| = |y| + 3.
	const Alphabet abc("abc");
	const auto odd = automata::Dfa::from_partial(abc, 2, 0, {1},
												 {{0, 'a', 1}, {0, 'b', 1}, {0, 'c', 1}, {1, 'a', 0}, {1, 'b', 0}, {1, 'c', 0}});
	auto r = solve_regular_ordered(eqn("a b x c y", "x a b c y", "abc"),
								   {LinearConstraint{{{"x", 1}, {"y", -1}}, 3, Relation::eq}}, {{"y", odd}}, abc);
	REQUIRE(r.solve.sat());
	CHECK(r.solve.model.at("x") == "abab");
	CHECK(r.solve.model.at("y") == "a");
	CHECK(r.classification.at("y") == Overlap::unconstrained);

	auto u = solve_regular_ordered(eqn("a b x", "x a b"), {LinearConstraint{{{"x", 1}}, 5, Relation::eq}}, {}, ab);
	CHECK(u.solve.verdict == Verdict::unsat);
}

TEST_CASE("solve_regular_ordered agrees with the bounded oracle") {
	std::mt19937 rng(31);
	std::uniform_int_distribution<int> coef(-2, 2), constant(0, 6), rel(0, 2);
	std::bernoulli_distribution coin(0.5);
	int sat = 0, unsat = 0;
	const std::size_t bound = 8;
	for (int t = 0; t < 60; ++t) {
		const Equation e = wordeq::testing::random_regular_ordered(rng);
		const auto vars = e.variables();
		std::map<std::string, automata::Dfa> regular;
		for (const auto& x : vars) {
			if (coin(rng)) regular.emplace(x, wordeq::testing::random_dfa(rng, ab, 3));
		}
		LengthConstraintSystem theta;
		if (coin(rng)) {
			LinearConstraint c;
			for (const auto& x : vars) c.coeffs[x] = coef(rng);
			c.rel = static_cast<Relation>(rel(rng));
			c.constant = constant(rng);
			theta.push_back(c);
		}
		const auto r = solve_regular_ordered(e, theta, regular, ab);
		std::vector<Formula> fs{Formula::make_atom(e)};
		for (const auto& c : theta) fs.push_back(Formula::make_atom(c));
		const Formula full = Formula::conj(fs);
		oracle::OracleOptions o;
		o.regular = regular;
		INFO(e.to_string());
		if (r.solve.sat()) {
			++sat;
			REQUIRE(eval_formula(full, r.solve.model));
			for (const auto& [x, m] : regular) REQUIRE(m.accepts(r.solve.model.at(x)));
			std::size_t longest = 0;
			for (const auto& [x, w] : r.solve.model.bindings()) longest = std::max(longest, w.size());
			if (longest <= bound) {
				o.bound = longest;
				CHECK(oracle::first_model(full, vars, ab, o).has_value());
			}
		} else {
			++unsat;
			o.bound = bound;
			CHECK_FALSE(oracle::first_model(full, vars, ab, o).has_value());
		}
	}
	CHECK(sat > 10);
	CHECK(unsat > 10);
}
