#include "wordeq/cli.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wordeq;
using namespace wordeq::cli;

namespace {

std::vector<std::filesystem::path> corpus_files() {
	std::vector<std::filesystem::path> out;
	for (const auto& e : std::filesystem::directory_iterator(WORDEQ_CORPUS_DIR)) {
		if (e.path().extension() == ".wq") out.push_back(e.path());
	}
	std::sort(out.begin(), out.end());
	return out;
}

std::string slurp(const std::filesystem::path& p) {
	std::ifstream in(p);
	std::ostringstream s;
	s << in.rdbuf();
	return s.str();
}

std::string verdict_or_exit(const Outcome& o) {
	return o.verdict.empty() ? "EXIT" + std::to_string(o.exit_code) : o.verdict;
}

const char* const one_letter = R"((alphabet "ab") (var x) (assert (= (cat x "a") (cat "a" x))) (check-sat))";

} // namespace

TEST_CASE("well-formed existential problem", "[cli][parse]") {
	const ProblemFile p = parse_problem(one_letter);
	CHECK(p.alphabet.letters() == "ab");
	CHECK(p.variables == std::vector<std::string>{"x"});
	REQUIRE(p.assertions.size() == 1);
	const auto& e = std::get<Equation>(*p.assertions[0].atom);
	CHECK(e.positive);
	CHECK(e.lhs == Pattern({Symbol::variable("x"), Symbol::terminal('a')}));
	CHECK(e.rhs == Pattern({Symbol::terminal('a'), Symbol::variable("x")}));
	CHECK(p.directive.kind == DirectiveKind::check_sat);
	CHECK_FALSE(p.has_prefix());
}

TEST_CASE("parse errors", "[cli][parse]") {
	CHECK_THROWS_AS(parse_problem("(var x) (check-sat)"), ParseError);
	CHECK_THROWS_AS(parse_problem(R"((alphabet "a") (alphabet "b") (check-sat))"), ParseError);
	CHECK_THROWS_AS(parse_problem(R"((alphabet "ab") (var x) (assert (= x y)) (check-sat))"), ParseError);
	CHECK_THROWS_AS(parse_problem(R"((alphabet "ab") (var x) (assert (= x "c")) (check-sat))"), ParseError);
	CHECK_THROWS_AS(parse_problem(R"((alphabet "ab") (var x) (assert (= x x)))"), ParseError);
	CHECK_THROWS_AS(parse_problem(R"((alphabet "ab") (var x) (check-sat) (decide))"), ParseError);
	CHECK_THROWS_AS(parse_problem(R"((alphabet "ab") (var x) (assert (pred Nope x)) (check-sat))"), ParseError);
	CHECK_THROWS_AS(parse_problem(R"((alphabet "ab") (var x) (assert (pred Length x)) (check-sat))"), ParseError);
	CHECK_THROWS_AS(parse_problem(R"((alphabet "ab") (var x) (force magic) (check-sat))"), ParseError);
	CHECK_THROWS_AS(parse_problem(R"((alphabet "ab") (var x) (assert (= x x)) (check-sat))"
								  "\n(oracle -1)"),
					ParseError);
}

TEST_CASE("parse errors carry positions", "[cli][parse]") {
	try {
		parse_problem("(alphabet \"ab\")\n(var x)\n(assert (= x\n   (cat y)))\n(check-sat)");
		FAIL("no error");
	} catch (const ParseError& e) {
		CHECK(e.line == 4);
		CHECK(e.column == 9);
	}
	try {
		parse_problem("(alphabet \"ab\")\n(var x\n");
		FAIL("no error");
	} catch (const ParseError& e) {
		CHECK(e.line == 2);
		CHECK(e.column == 1);
	}
}

TEST_CASE("dfa constraint attaches to its variable", "[cli][parse]") {
	const ProblemFile p = parse_problem(
		R"((alphabet "ab") (var x) (assert-in x (dfa 2 0 (1) ((0 a 1) (0 b 0) (1 a 0) (1 b 0)))) (check-sat))");
	REQUIRE(p.regular.size() == 1);
	CHECK(p.regular[0].first == "x");
	const DfaSpec& d = p.regular[0].second;
	CHECK(d.states == 2);
	CHECK(d.initial == 0);
	CHECK(d.accepting == std::vector<std::size_t>{1});
	CHECK(d.transitions.size() == 4);
	CHECK(d.transitions[0] == std::tuple<std::size_t, char, std::size_t>{0, 'a', 1});
	CHECK_THROWS_AS(parse_problem(R"((alphabet "ab") (var x) (assert-in x (dfa 2 0 (1) ((0 a 2)))) (check-sat))"),
					ParseError);
	CHECK_THROWS_AS(parse_problem(R"((alphabet "ab") (var x) (assert-in x (dfa 2 0 (1) ((0 c 1)))) (check-sat))"),
					ParseError);
}

TEST_CASE("length constraints normalise to one side", "[cli][parse]") {
	const ProblemFile p =
		parse_problem(R"((alphabet "a") (var x y) (assert-len (<= (+ (* 2 (len x)) 3) (+ (len y) 7))) (check-sat))");
	REQUIRE(p.lengths.size() == 1);
	const LinearConstraint& c = p.lengths[0];
	CHECK(c.rel == Relation::le);
	CHECK(c.coeffs.at("x") == 2);
	CHECK(c.coeffs.at("y") == -1);
	CHECK(c.constant == 4);
	CHECK(c.holds({{"x", 2}, {"y", 0}}));
	CHECK_FALSE(c.holds({{"x", 3}, {"y", 0}}));
}

TEST_CASE("one-letter example", "[cli][dispatch]") {
	const Outcome o =
		run_text(R"((alphabet "ab") (var x) (assert (= (cat x "a") (cat "a" x))) (assert-len (= (len x) 2)) (check-sat))");
	CHECK(o.verdict == "SAT");
	CHECK(o.procedure == "oneletter");
	CHECK(o.exit_code == exit_positive);
	CHECK(o.lines == std::vector<std::string>{"x = \"aa\""});
	CHECK(o.render() == "SAT\nx = \"aa\"\n");
}

TEST_CASE("regular-ordered example", "[cli][dispatch]") {
	const Outcome o = run_text(slurp(std::filesystem::path(WORDEQ_CORPUS_DIR) / "05_regord_example.wq"));
	CHECK(o.verdict == "SAT");
	CHECK(o.procedure == "regord");
	CHECK(std::find(o.lines.begin(), o.lines.end(), "x3 = \"bb\"") != o.lines.end());
}

TEST_CASE("no complete procedure", "[cli][dispatch]") {
	const Outcome o = run_text(R"((alphabet "ab") (var x y)
		(assert (not (= (cat x "a" y) (cat y "b" x)))) (assert (= (cat x y) (cat y "ab"))) (check-sat))");
	CHECK(o.exit_code == exit_no_procedure);
	CHECK(o.verdict.empty());
	CHECK(o.error.starts_with("no complete procedure; try (oracle <bound>)"));
	CHECK(o.error.find("negation") != std::string::npos);
}

TEST_CASE("routing", "[cli][dispatch]") {
	const auto route = [](const std::string& text) { return run_text(text).procedure; };
	CHECK(route(one_letter) == "oneletter");
	CHECK(route(R"((alphabet "ab") (var x y) (assert (= (cat "ab" x y) (cat x "ab" y))) (check-sat))") == "regord");
	CHECK(route(R"((alphabet "ab") (var x) (assert (= (cat x "b") (cat "b" x))) (assert (= x "a")) (check-sat))") ==
		  "system");
	CHECK(route(R"((alphabet "ab") (var x y) (exists x) (forall y) (assert (= (cat x y) (cat y x))) (decide))") ==
		  "oneletter-sigma2");
	CHECK(route(R"((alphabet "ab") (var x y) (exists x) (forall y) (assert (= (cat x "ab" y) (cat x "ab" y))) (decide))") ==
		  "sigma2");
	CHECK(route(R"((alphabet "ab") (var x) (assert (= x "ab")) (oracle 2))") == "oracle");
	CHECK(route(R"((alphabet "ab") (var x) (assert (= (cat x "a") (cat "a" x))) (force system) (check-sat))") ==
		  "system");
	RunOptions forced;
	forced.force = "regord";
	CHECK(run_text(one_letter, forced).procedure == "regord");
	forced.force = "magic";
	CHECK(run_text(one_letter, forced).exit_code == exit_no_procedure);
}

TEST_CASE("oracle verdicts", "[cli][dispatch]") {
	CHECK(run_text(R"((alphabet "ab") (var x) (assert (= (cat x "a") (cat "b" x))) (oracle 3))").verdict == "UNKNOWN");
	CHECK(run_text(R"((alphabet "ab") (var y) (forall y) (assert (= (cat y "a") (cat "a" y))) (oracle 2))").verdict ==
		  "FALSE");
	CHECK(run_text(R"((alphabet "ab") (var y) (forall y) (assert (= (cat y y) (cat y y))) (oracle 2))").verdict ==
		  "UNKNOWN");
	const Outcome o = run_text(R"((alphabet "ab") (var x) (assert (pred Onlyas "bab" x)) (oracle 2))");
	CHECK(o.verdict == "SAT");
	CHECK(o.lines == std::vector<std::string>{"x = \"a\""});
}

TEST_CASE("model expansion ceiling", "[cli][dispatch]") {
	const std::string text = R"((alphabet "a") (var x) (assert (= (cat x "a") (cat "a" x))) (assert-len (= (len x) 50)) (check-sat))";
	RunOptions small;
	small.max_expand = 10;
	const Outcome o = run_text(text, small);
	CHECK(o.verdict == "SAT");
	REQUIRE(o.lines.size() == 1);
	CHECK(o.lines[0].find("^n") != std::string::npos);
	CHECK(run_text(text).lines[0] == "x = \"" + std::string(50, 'a') + "\"");
}

TEST_CASE("encoders", "[cli][encode]") {
	const Outcome c = run_text(R"((alphabet "ab") (var x) (assert (= x "a")) (assert (= x x)) (encode conjunction))");
	CHECK(c.verdict == "ENCODED");
	const ProblemFile q = parse_problem(c.render().substr(c.verdict.size() + 1));
	CHECK(q.assertions.size() == 1);
	CHECK(run_text(q.assertions.empty() ? "" : render_problem(q)).verdict == "SAT");

	const Outcome p = run_text(R"((alphabet "ab") (var x) (assert (pred Onlyas "ab" x)) (encode Onlyas-from-Projection))");
	REQUIRE(p.verdict == "ENCODED");
	const ProblemFile r = parse_problem(p.render().substr(p.verdict.size() + 1));
	CHECK(r.directive.kind == DirectiveKind::oracle);
	CHECK(r.variables == std::vector<std::string>{"x"});
	REQUIRE(r.assertions.size() == 1);
	CHECK(render_problem(r).find("(pred Projection") != std::string::npos);

	CHECK(run_text(R"((alphabet "ab") (var x) (assert (not (pred Onlyas "ab" x))) (encode Onlyas-from-Projection))")
			  .exit_code == exit_no_procedure);
	CHECK(run_text(R"((alphabet "ab") (var x) (assert (= x x)) (encode nothing))").exit_code == exit_no_procedure);
}

TEST_CASE("predicate rewrite avoids variable clashes", "[cli][encode]") {
	const Outcome o = run_text(R"((alphabet "ab") (var z x) (assert (pred Onlyas x z)) (encode Onlyas-from-Subword))");
	REQUIRE(o.verdict == "ENCODED");
	const ProblemFile q = parse_problem(o.render().substr(o.verdict.size() + 1));
	std::set<std::string> names(q.variables.begin(), q.variables.end());
	CHECK(names.size() == q.variables.size());
	CHECK(q.variables.size() == 3);
}

TEST_CASE("expected verdict comments", "[cli]") {
	CHECK(expected_verdict("; expect: SAT\n(alphabet \"a\")") == "SAT");
	CHECK(expected_verdict("; note\n;   expect:   EXIT3  \n") == std::nullopt);
	CHECK(expected_verdict("; expect:   EXIT3  \n") == "EXIT3");
	CHECK_FALSE(expected_verdict("(alphabet \"a\")"));
}

TEST_CASE("corpus round trip and exit codes", "[cli][corpus]") {
	const auto files = corpus_files();
	REQUIRE(files.size() >= 25);
	std::set<std::string> procedures_seen;
	std::set<DirectiveKind> directives_seen;
	for (const auto& f : files) {
		INFO(f.filename().string());
		const std::string text = slurp(f);
		const Outcome o = run_text(text);
		const auto want = expected_verdict(text);
		REQUIRE(want);
		CHECK(verdict_or_exit(o) == *want);
		static const std::map<std::string, int> codes{{"SAT", 0},     {"TRUE", 0},   {"ENCODED", 0}, {"UNSAT", 1},
													  {"FALSE", 1},   {"UNKNOWN", 2}};
		if (!o.verdict.empty()) CHECK(o.exit_code == codes.at(o.verdict));
		if (o.exit_code == exit_bad_input) continue;
		const ProblemFile p = parse_problem(text);
		directives_seen.insert(p.directive.kind);
		const ProblemFile again = parse_problem(render_problem(p));
		CHECK(again == p);
		CHECK(render_problem(again) == render_problem(p));
		if (!o.procedure.empty()) procedures_seen.insert(o.procedure);
	}
	CHECK(directives_seen.size() == 4);
	for (const auto& name : procedures()) {
		INFO(name);
		CHECK(procedures_seen.contains(name));
	}
}

TEST_CASE("generated problems route and reparse", "[cli][generate]") {
	std::mt19937_64 rng(11);
	for (int i = 0; i < 40; ++i) {
		const std::string text = generate_problem(rng);
		INFO(text);
		const ProblemFile p = parse_problem(text);
		CHECK(parse_problem(render_problem(p)) == p);
		const Outcome o = run_text(text);
		CHECK(o.exit_code <= exit_unknown);
	}
}
