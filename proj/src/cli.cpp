#include "wordeq/cli.hpp"

#include "wordeq/automata.hpp"
#include "wordeq/combinators.hpp"
#include "wordeq/oneletter.hpp"
#include "wordeq/oracle.hpp"
#include "wordeq/predicates.hpp"
#include "wordeq/regord.hpp"
#include "wordeq/satunsat.hpp"
#include "wordeq/solver.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace wordeq::cli {

ParseError::ParseError(const std::string& message, std::size_t l, std::size_t c)
	: Error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + message), line(l), column(c) {}

namespace {

// --- reader ----------------------------------------------------------------

struct SExpr {
	enum class Kind : std::uint8_t { atom, string, list };
	Kind kind = Kind::atom;
	std::string text;
	std::vector<SExpr> items;
	std::size_t line = 1;
	std::size_t column = 1;

	bool is_list() const { return kind == Kind::list; }
	bool is_atom() const { return kind == Kind::atom; }
	bool is_string() const { return kind == Kind::string; }
	[[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line, column); }
	const std::string& head() const {
		if (!is_list() || items.empty() || !items.front().is_atom()) fail("expected a form starting with a keyword");
		return items.front().text;
	}
};

class Reader {
public:
	explicit Reader(std::string_view text) : text_(text) {}

	std::vector<SExpr> read_all() {
		std::vector<SExpr> out;
		for (skip(); pos_ < text_.size(); skip()) {
			out.push_back(read());
		}
		return out;
	}

private:
	void advance() {
		if (text_[pos_] == '\n') {
			++line_;
			column_ = 1;
		} else {
			++column_;
		}
		++pos_;
	}

	void skip() {
		while (pos_ < text_.size()) {
			if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
				advance();
			} else if (text_[pos_] == ';') {
				while (pos_ < text_.size() && text_[pos_] != '\n') advance();
			} else {
				break;
			}
		}
	}

	SExpr read() {
		SExpr e;
		e.line = line_;
		e.column = column_;
		const char c = text_[pos_];
		if (c == ')') throw ParseError("unexpected ')'", line_, column_);
		if (c == '(') {
			advance();
			e.kind = SExpr::Kind::list;
			for (skip(); pos_ < text_.size() && text_[pos_] != ')'; skip()) {
				e.items.push_back(read());
			}
			if (pos_ == text_.size()) throw ParseError("unclosed '('", e.line, e.column);
			advance();
		} else if (c == '"') {
			advance();
			e.kind = SExpr::Kind::string;
			while (pos_ < text_.size() && text_[pos_] != '"') {
				if (text_[pos_] == '\n') throw ParseError("unterminated string", e.line, e.column);
				e.text += text_[pos_];
				advance();
			}
			if (pos_ == text_.size()) throw ParseError("unterminated string", e.line, e.column);
			advance();
		} else {
			while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
				   text_[pos_] != ')' && text_[pos_] != '"' && text_[pos_] != ';') {
				e.text += text_[pos_];
				advance();
			}
		}
		return e;
	}

	std::string_view text_;
	std::size_t pos_ = 0;
	std::size_t line_ = 1;
	std::size_t column_ = 1;
};

bool is_identifier(std::string_view s) {
	if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
	return std::all_of(s.begin(), s.end(),
					   [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; });
}

const std::set<std::string> keywords{"cat", "len", "and", "or", "not", "pred", "dfa"};

std::optional<std::int64_t> integer(const SExpr& e) {
	if (!e.is_atom()) return std::nullopt;
	std::int64_t v = 0;
	const char* first = e.text.data();
	const char* last = first + e.text.size();
	const auto [ptr, ec] = std::from_chars(first, last, v);
	if (ec != std::errc{} || ptr != last) return std::nullopt;
	return v;
}

std::size_t natural(const SExpr& e, const std::string& what) {
	const auto v = integer(e);
	if (!v || *v < 0) e.fail(what + " must be a non-negative integer");
	return static_cast<std::size_t>(*v);
}

// --- problem parser ----------------------------------------------------------

class ProblemParser {
public:
	ProblemFile parse(std::string_view text) {
		const auto forms = Reader(text).read_all();
		bool alphabet_seen = false;
		for (const auto& f : forms) {
			const std::string& h = f.head();
			if (h == "alphabet") {
				if (alphabet_seen) f.fail("duplicate alphabet declaration");
				if (f.items.size() != 2 || !f.items[1].is_string()) f.fail("expected (alphabet \"<letters>\")");
				const std::string& letters = f.items[1].text;
				if (letters.empty()) f.fail("the alphabet must be nonempty");
				for (std::size_t i = 0; i < letters.size(); ++i) {
					if (std::isspace(static_cast<unsigned char>(letters[i])) || letters.find(letters[i]) != i) {
						f.fail("alphabet letters must be distinct non-space characters");
					}
				}
				p_.alphabet = Alphabet(letters);
				alphabet_seen = true;
			} else if (h == "var") {
				for (std::size_t i = 1; i < f.items.size(); ++i) {
					const auto& v = f.items[i];
					if (!v.is_atom() || !is_identifier(v.text) || keywords.contains(v.text)) v.fail("invalid variable name");
					if (declared_.contains(v.text)) v.fail("variable " + v.text + " declared twice");
					declared_.insert(v.text);
					p_.variables.push_back(v.text);
				}
			}
		}
		if (!alphabet_seen) throw ParseError("missing (alphabet ...) declaration", 1, 1);
		bool directive_seen = false;
		for (const auto& f : forms) {
			const std::string& h = f.head();
			if (h == "alphabet" || h == "var") continue;
			if (h == "exists" || h == "forall") {
				auto& block = h == "exists" ? p_.exists : p_.forall;
				if (!block.empty()) f.fail("duplicate (" + h + ") block");
				if (f.items.size() < 2) f.fail("(" + h + ") needs at least one variable");
				for (std::size_t i = 1; i < f.items.size(); ++i) {
					const std::string v = variable(f.items[i]);
					if (in_prefix_.contains(v)) f.items[i].fail("variable " + v + " quantified twice");
					in_prefix_.insert(v);
					block.push_back(v);
				}
			} else if (h == "assert") {
				if (f.items.size() != 2) f.fail("expected (assert <form>)");
				p_.assertions.push_back(formula(f.items[1]));
			} else if (h == "assert-len") {
				if (f.items.size() != 2) f.fail("expected (assert-len (<rel> <lin> <lin>))");
				const auto c = linear_constraint(f.items[1]);
				if (!c) f.items[1].fail("expected (<rel> <lin> <lin>) with <rel> one of = <= >=");
				p_.lengths.push_back(*c);
			} else if (h == "assert-in") {
				if (f.items.size() != 3) f.fail("expected (assert-in <var> (dfa ...))");
				const std::string v = variable(f.items[1]);
				for (const auto& r : p_.regular) {
					if (r.first == v) f.items[1].fail("variable " + v + " already has a regular constraint");
				}
				p_.regular.emplace_back(v, dfa(f.items[2]));
			} else if (h == "force") {
				if (p_.force) f.fail("duplicate (force ...)");
				if (f.items.size() != 2 || !f.items[1].is_atom()) f.fail("expected (force <procedure>)");
				const auto& names = procedures();
				if (std::find(names.begin(), names.end(), f.items[1].text) == names.end()) {
					f.items[1].fail("unknown procedure " + f.items[1].text);
				}
				p_.force = f.items[1].text;
			} else if (h == "check-sat" || h == "decide" || h == "encode" || h == "oracle") {
				if (directive_seen) f.fail("more than one directive");
				directive_seen = true;
				p_.directive = directive(f);
			} else {
				f.fail("unknown form (" + h + " ...)");
			}
		}
		if (!directive_seen) throw ParseError("missing directive (check-sat, decide, encode or oracle)", 1, 1);
		return p_;
	}

private:
	std::string variable(const SExpr& e) const {
		if (!e.is_atom() || !is_identifier(e.text)) e.fail("expected a variable name");
		if (!declared_.contains(e.text)) e.fail("undeclared variable " + e.text);
		return e.text;
	}

	void append_literal(Pattern& p, const SExpr& e) const {
		for (char c : e.text) {
			if (!p_.alphabet.contains(c)) e.fail(std::string("letter '") + c + "' is not in the alphabet");
		}
		p.append_word(e.text);
	}

	Pattern pattern(const SExpr& e) const {
		Pattern p;
		if (e.is_string()) {
			append_literal(p, e);
		} else if (e.is_atom()) {
			p.append(Symbol::variable(variable(e)));
		} else {
			if (e.head() != "cat") e.fail("expected a pattern (cat ...)");
			for (std::size_t i = 1; i < e.items.size(); ++i) {
				const auto& item = e.items[i];
				if (item.is_string()) {
					append_literal(p, item);
				} else {
					p.append(Symbol::variable(variable(item)));
				}
			}
		}
		return p;
	}

	static bool looks_linear(const SExpr& e) {
		if (integer(e)) return true;
		return e.is_list() && !e.items.empty() && e.items[0].is_atom() &&
			   (e.items[0].text == "+" || e.items[0].text == "*" || e.items[0].text == "len");
	}

	void linear(const SExpr& e, std::int64_t sign, std::map<std::string, std::int64_t>& coeffs,
				std::int64_t& constant) const {
		if (const auto k = integer(e)) {
			constant += sign * *k;
			return;
		}
		const std::string& h = e.head();
		if (h == "+") {
			for (std::size_t i = 1; i < e.items.size(); ++i) linear(e.items[i], sign, coeffs, constant);
		} else if (h == "len") {
			if (e.items.size() != 2) e.fail("expected (len <var>)");
			coeffs[variable(e.items[1])] += sign;
		} else if (h == "*") {
			const auto k = e.items.size() == 3 ? integer(e.items[1]) : std::nullopt;
			if (!k) e.fail("expected (* <integer> (len <var>))");
			linear(e.items[2], sign * *k, coeffs, constant);
		} else {
			e.fail("expected a linear term");
		}
	}

	std::optional<LinearConstraint> linear_constraint(const SExpr& e) const {
		if (!e.is_list() || e.items.size() != 3 || !e.items[0].is_atom()) return std::nullopt;
		static const std::map<std::string, Relation> rels{{"=", Relation::eq}, {"<=", Relation::le}, {">=", Relation::ge}};
		const auto it = rels.find(e.items[0].text);
		if (it == rels.end()) return std::nullopt;
		LinearConstraint c;
		c.rel = it->second;
		std::int64_t constant = 0;
		linear(e.items[1], 1, c.coeffs, constant);
		linear(e.items[2], -1, c.coeffs, constant);
		c.constant = -constant;
		return c;
	}

	Formula formula(const SExpr& e) const {
		const std::string& h = e.head();
		if (h == "=" || h == "!=" || h == "<=" || h == ">=") {
			if (e.items.size() != 3) e.fail("(" + h + ") takes two arguments");
			if (h != "!=" && (looks_linear(e.items[1]) || looks_linear(e.items[2]) || h != "=")) {
				const auto c = linear_constraint(e);
				if (!c) e.fail("malformed length constraint");
				return Formula::make_atom(*c);
			}
			return Formula::make_atom(Equation{pattern(e.items[1]), pattern(e.items[2]), h == "="});
		}
		if (h == "and" || h == "or") {
			std::vector<Formula> cs;
			for (std::size_t i = 1; i < e.items.size(); ++i) cs.push_back(formula(e.items[i]));
			return h == "and" ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
		}
		if (h == "not") {
			if (e.items.size() != 2) e.fail("(not) takes one argument");
			return Formula::negate(formula(e.items[1]));
		}
		if (h == "pred") {
			if (e.items.size() < 2 || !e.items[1].is_atom()) e.fail("expected (pred <Name> <pat>...)");
			const std::string& name = e.items[1].text;
			const auto& cat = predicates::catalog();
			const auto it = cat.find(name);
			if (it == cat.end()) e.items[1].fail("unknown predicate " + name);
			if (it->second.arity != e.items.size() - 2) {
				e.fail("predicate " + name + " takes " + std::to_string(it->second.arity) + " arguments");
			}
			std::vector<Pattern> args;
			for (std::size_t i = 2; i < e.items.size(); ++i) args.push_back(pattern(e.items[i]));
			return Formula::pred(name, std::move(args));
		}
		e.fail("unknown formula (" + h + " ...)");
	}

	DfaSpec dfa(const SExpr& e) const {
		if (e.head() != "dfa" || e.items.size() != 5 || !e.items[3].is_list() || !e.items[4].is_list()) {
			e.fail("expected (dfa <nstates> <init> (<accepting>...) ((<state> <letter> <state>)...))");
		}
		DfaSpec d;
		d.states = natural(e.items[1], "the state count");
		if (d.states == 0) e.items[1].fail("a DFA needs at least one state");
		auto state = [&](const SExpr& s) {
			const std::size_t q = natural(s, "a state");
			if (q >= d.states) s.fail("state " + std::to_string(q) + " out of range");
			return q;
		};
		d.initial = state(e.items[2]);
		for (const auto& s : e.items[3].items) d.accepting.push_back(state(s));
		std::set<std::pair<std::size_t, char>> seen;
		for (const auto& t : e.items[4].items) {
			if (!t.is_list() || t.items.size() != 3 || t.items[1].is_list() || t.items[1].text.size() != 1) {
				t.fail("expected (<state> <letter> <state>)");
			}
			const char c = t.items[1].text[0];
			if (!p_.alphabet.contains(c)) t.items[1].fail(std::string("letter '") + c + "' is not in the alphabet");
			const std::size_t from = state(t.items[0]);
			if (!seen.emplace(from, c).second) t.fail("duplicate transition");
			d.transitions.emplace_back(from, c, state(t.items[2]));
		}
		return d;
	}

	Directive directive(const SExpr& f) const {
		Directive d;
		const std::string& h = f.head();
		if (h == "check-sat" || h == "decide") {
			if (f.items.size() != 1) f.fail("(" + h + ") takes no arguments");
			d.kind = h == "decide" ? DirectiveKind::decide : DirectiveKind::check_sat;
		} else if (h == "encode") {
			if (f.items.size() != 2 || !f.items[1].is_atom()) f.fail("expected (encode <name>)");
			d.kind = DirectiveKind::encode;
			d.name = f.items[1].text;
		} else {
			if (f.items.size() != 2) f.fail("expected (oracle <bound>)");
			d.kind = DirectiveKind::oracle;
			d.bound = natural(f.items[1], "the oracle bound");
		}
		return d;
	}

	ProblemFile p_;
	std::set<std::string> declared_;
	std::set<std::string> in_prefix_;
};

// --- renderer ----------------------------------------------------------------

std::string render_pattern(const Pattern& p) {
	std::string out = "(cat";
	bool in_literal = false;
	for (const auto& s : p) {
		if (s.is_terminal()) {
			if (!in_literal) out += " \"";
			in_literal = true;
			out += s.letter();
		} else {
			if (in_literal) out += '"';
			in_literal = false;
			out += ' ' + s.name;
		}
	}
	if (in_literal) out += '"';
	return out + ")";
}

std::string render_linear(const LinearConstraint& c) {
	static const std::map<Relation, std::string> rels{{Relation::eq, "="}, {Relation::le, "<="}, {Relation::ge, ">="}};
	std::string out = "(" + rels.at(c.rel) + " (+";
	for (const auto& [v, k] : c.coeffs) out += " (* " + std::to_string(k) + " (len " + v + "))";
	return out + ") " + std::to_string(c.constant) + ")";
}

std::string render_formula(const Formula& f) {
	switch (f.kind) {
	case Formula::Kind::atom:
		return std::visit(
			[](const auto& a) -> std::string {
				using T = std::decay_t<decltype(a)>;
				if constexpr (std::is_same_v<T, Equation>) {
					return std::string(a.positive ? "(= " : "(!= ") + render_pattern(a.lhs) + " " + render_pattern(a.rhs) + ")";
				} else if constexpr (std::is_same_v<T, PredicateAtom>) {
					std::string out = "(pred " + a.name;
					for (const auto& p : a.args) out += " " + render_pattern(p);
					return out + ")";
				} else {
					return render_linear(a);
				}
			},
			*f.atom);
	case Formula::Kind::neg:
		return "(not " + render_formula(f.children.front()) + ")";
	case Formula::Kind::conj:
	case Formula::Kind::disj: {
		std::string out = f.kind == Formula::Kind::conj ? "(and" : "(or";
		for (const auto& c : f.children) out += " " + render_formula(c);
		return out + ")";
	}
	}
	return {};
}

std::string join(const std::vector<std::string>& xs) {
	std::string out;
	for (const auto& x : xs) out += " " + x;
	return out;
}

// --- dispatch helpers ----------------------------------------------------------

std::string quoted(const Word& w) { return "\"" + w + "\""; }

struct Shape {
	std::vector<Formula> parts;   // top-level conjuncts that are not length atoms
	LengthConstraintSystem lengths;
	bool positive = true;
	bool predicates = false;
	bool only_length_predicates = true;
	std::set<char> letters;
	std::vector<Equation> equations;   // when every part is a positive equation
	bool all_equations = true;
};

void flatten(const Formula& f, std::vector<Formula>& out) {
	if (f.kind == Formula::Kind::conj) {
		for (const auto& c : f.children) flatten(c, out);
	} else {
		out.push_back(f);
	}
}

Shape shape_of(const ProblemFile& p) {
	Shape s;
	s.lengths = p.lengths;
	std::vector<Formula> flat;
	for (const auto& a : p.assertions) flatten(a, flat);
	for (auto& f : flat) {
		if (f.is_atom() && std::holds_alternative<LinearConstraint>(*f.atom)) {
			s.lengths.push_back(std::get<LinearConstraint>(*f.atom));
			continue;
		}
		const auto* e = f.is_atom() ? std::get_if<Equation>(&*f.atom) : nullptr;
		if (e && e->positive) {
			s.equations.push_back(*e);
		} else {
			s.all_equations = false;
		}
		s.parts.push_back(std::move(f));
	}
	const Formula m = Formula::conj(s.parts);
	s.positive = m.positive();
	for (const Atom* a : m.atoms()) {
		if (const auto* e = std::get_if<Equation>(a)) {
			const auto t = e->terminals();
			s.letters.insert(t.begin(), t.end());
		} else if (const auto* q = std::get_if<PredicateAtom>(a)) {
			s.predicates = true;
			if (q->name != "Length") s.only_length_predicates = false;
			for (const auto& arg : q->args) {
				const auto t = arg.terminals();
				s.letters.insert(t.begin(), t.end());
			}
		}
	}
	return s;
}

bool nested_lengths(const Shape& s) {
	for (const auto& f : s.parts) {
		for (const Atom* a : f.atoms()) {
			if (std::holds_alternative<LinearConstraint>(*a)) return true;
		}
	}
	return false;
}

std::map<std::string, automata::Dfa> automata_of(const ProblemFile& p) {
	std::map<std::string, automata::Dfa> out;
	for (const auto& [v, d] : p.regular) {
		std::vector<automata::Dfa::Transition> ts;
		for (const auto& [from, c, to] : d.transitions) ts.push_back({from, c, to});
		out.emplace(v, automata::Dfa::from_partial(p.alphabet, d.states, d.initial, d.accepting, ts));
	}
	return out;
}

void model_lines(const ProblemFile& p, const SolveResult& r, Outcome& out) {
	for (const auto& v : p.variables) {
		if (r.model.contains(v)) {
			out.lines.push_back(v + " = " + quoted(r.model.at(v)));
		} else if (const auto it = r.compressed.find(v); it != r.compressed.end()) {
			out.lines.push_back(v + " = " + it->second.to_string());
		}
	}
}

void assignment_lines(const std::vector<std::string>& vars, const Substitution& h, Outcome& out) {
	for (const auto& v : vars) {
		if (h.contains(v)) out.lines.push_back(v + " = " + quoted(h.at(v)));
	}
}

Outcome from_solve(const ProblemFile& p, const SolveResult& r, std::string procedure) {
	Outcome out;
	out.procedure = std::move(procedure);
	out.notes = r.notes;
	switch (r.verdict) {
	case Verdict::sat:
		out.verdict = "SAT";
		out.exit_code = exit_positive;
		model_lines(p, r, out);
		break;
	case Verdict::unsat:
		out.verdict = "UNSAT";
		out.exit_code = exit_negative;
		break;
	case Verdict::unknown:
		out.verdict = "UNKNOWN";
		out.exit_code = exit_unknown;
		break;
	}
	return out;
}

std::string diagnosis(const Shape& s, bool universal) {
	std::vector<std::string> why;
	if (s.predicates) why.emplace_back("predicate atoms");
	if (!s.positive) why.emplace_back("negation");
	if (s.letters.size() > 1) why.push_back(std::to_string(s.letters.size()) + " terminal letters");
	if (!universal) {
		if (!s.all_equations) why.emplace_back("not a conjunction of equations");
		if (s.equations.size() != 1 || !regord::check_strictly_regular_ordered(s.equations.front())) {
			why.emplace_back("not a single strictly regular-ordered equation");
		}
	}
	std::string out = "no complete procedure; try (oracle <bound>)";
	if (!why.empty()) {
		out += ":";
		for (std::size_t i = 0; i < why.size(); ++i) out += (i ? ", " : " ") + why[i];
	}
	return out;
}

Outcome check_sat(const ProblemFile& p, const std::optional<std::string>& force, std::size_t max_expand) {
	const Shape s = shape_of(p);
	const auto dfas = automata_of(p);
	const bool plain = !s.predicates && !nested_lengths(s);
	std::string route;
	if (force) {
		route = *force;
	} else if (plain && s.positive && s.letters.size() <= 1 && dfas.empty()) {
		route = "oneletter";
	} else if (plain && s.all_equations && s.equations.size() <= 1 &&
			   (s.equations.empty() || regord::check_strictly_regular_ordered(s.equations.front()))) {
		route = "regord";
	} else if (plain && s.all_equations) {
		route = "system";
	} else {
		throw Error(diagnosis(s, false));
	}
	if (route == "oneletter") {
		if (!dfas.empty()) throw Error("oneletter does not accept regular constraints");
		return from_solve(p, oneletter::solve_oneletter(Formula::conj(s.parts), s.lengths, p.alphabet, max_expand), route);
	}
	if (route == "regord") {
		if (!s.all_equations || s.equations.size() > 1) throw Error("regord needs a single positive equation");
		const Equation e = s.equations.empty() ? Equation{} : s.equations.front();
		return from_solve(p, regord::solve_regular_ordered(e, s.lengths, dfas, p.alphabet, max_expand).solve, route);
	}
	if (route == "system") {
		if (!s.all_equations) throw Error("system needs a conjunction of positive equations");
		solver::SystemProblem sp{s.equations, s.lengths, dfas, p.variables};
		solver::SolverOptions o;
		o.max_expand = max_expand;
		return from_solve(p, solver::solve_system(sp, p.alphabet, o), route);
	}
	throw Error("procedure " + route + " does not apply to (check-sat)");
}

QuantifiedFormula sentence(const ProblemFile& p, const Formula& matrix) {
	std::vector<std::string> xs;
	for (const auto& v : p.variables) {
		if (std::find(p.forall.begin(), p.forall.end(), v) == p.forall.end() &&
			std::find(p.exists.begin(), p.exists.end(), v) == p.exists.end()) {
			xs.push_back(v);
		}
	}
	xs.insert(xs.end(), p.exists.begin(), p.exists.end());
	if (p.forall.empty()) return QuantifiedFormula::exists(xs, matrix);
	if (xs.empty()) return QuantifiedFormula{{QuantifierBlock{Quantifier::forall, p.forall}}, matrix};
	return QuantifiedFormula::exists_forall(xs, p.forall, matrix);
}

Outcome decide(const ProblemFile& p, const std::optional<std::string>& force, std::size_t max_expand) {
	if (p.forall.empty()) {
		Outcome out = check_sat(p, force, max_expand);
		if (out.verdict == "SAT") out.verdict = "TRUE";
		if (out.verdict == "UNSAT") out.verdict = "FALSE";
		return out;
	}
	const Shape s = shape_of(p);
	if (!s.lengths.empty() || !p.regular.empty()) {
		throw Error("length and regular constraints are not supported with a universal block; try (oracle <bound>)");
	}
	std::string route;
	if (force) {
		route = *force;
	} else if (s.positive && s.letters.size() <= 1 && s.only_length_predicates) {
		route = "oneletter-sigma2";
	} else if (s.positive && !s.predicates) {
		route = "sigma2";
	} else {
		throw Error(diagnosis(s, true));
	}
	const QuantifiedFormula phi = sentence(p, p.matrix());
	combinators::Sigma2Result r;
	if (route == "oneletter-sigma2") {
		r = oneletter::decide_oneletter_sigma2(phi, p.alphabet);
	} else if (route == "sigma2") {
		r = combinators::decide_sigma2_positive(phi, p.alphabet);
	} else {
		throw Error("procedure " + route + " does not apply to (decide)");
	}
	Outcome out;
	out.procedure = route;
	out.notes = r.notes;
	switch (r.truth) {
	case combinators::Truth::true_:
		out.verdict = "TRUE";
		out.exit_code = exit_positive;
		assignment_lines(phi.existential_variables(), r.witness, out);
		break;
	case combinators::Truth::false_:
		out.verdict = "FALSE";
		out.exit_code = exit_negative;
		break;
	case combinators::Truth::unknown:
		out.verdict = "UNKNOWN";
		out.exit_code = exit_unknown;
		break;
	}
	return out;
}

Outcome oracle_run(const ProblemFile& p) {
	std::vector<Formula> parts = p.assertions;
	for (const auto& c : p.lengths) parts.push_back(Formula::make_atom(c));
	const QuantifiedFormula phi = sentence(p, Formula::conj(std::move(parts)));
	oracle::OracleOptions o;
	o.bound = p.directive.bound;
	o.regular = automata_of(p);
	o.predicates = predicates::catalog_evaluator();
	o.node_limit = 50'000'000;
	const auto v = oracle::bounded_check(phi, p.alphabet, o);
	Outcome out;
	out.procedure = "oracle";
	out.verdict = "UNKNOWN";
	out.exit_code = exit_unknown;
	const bool universal = !p.forall.empty();
	const bool existential = !phi.existential_variables().empty() || !universal;
	const std::string bound = std::to_string(p.directive.bound);
	if (!universal && v.kind == oracle::BoundedKind::witness_found) {
		out.verdict = "SAT";
		out.exit_code = exit_positive;
		assignment_lines(p.variables, v.assignment, out);
	} else if (!existential && v.kind == oracle::BoundedKind::violation_found) {
		out.verdict = "FALSE";
		out.exit_code = exit_negative;
		assignment_lines(p.forall, v.assignment, out);
	} else {
		out.notes.push_back("bounded search up to length " + bound + ": " + std::string(oracle::to_string(v.kind)));
		if (v.kind == oracle::BoundedKind::witness_found) {
			out.notes.push_back("candidate " + v.assignment.to_string() + " survives every universal image up to length " +
								bound);
		}
	}
	return out;
}

// --- encoders --------------------------------------------------------------------

ProblemFile header_of(const ProblemFile& p) {
	ProblemFile q;
	q.alphabet = p.alphabet;
	q.variables = p.variables;
	return q;
}

void declare(ProblemFile& q, const std::vector<std::string>& vars) {
	for (const auto& v : vars) {
		if (std::find(q.variables.begin(), q.variables.end(), v) == q.variables.end()) q.variables.push_back(v);
	}
}

Formula rewrite(const Formula& f, const std::string& target, const predicates::FormulaTemplate& t,
				std::set<std::string>& taken, std::vector<std::string>& fresh, bool negated) {
	if (f.kind != Formula::Kind::atom) {
		Formula g = f;
		for (auto& c : g.children) c = rewrite(c, target, t, taken, fresh, negated || f.kind == Formula::Kind::neg);
		return g;
	}
	const auto* q = std::get_if<PredicateAtom>(&*f.atom);
	if (!q || q->name != target) return f;
	if (negated) throw Error("cannot rewrite " + target + " below a negation");
	const auto inst = t.instantiate(q->args, taken);
	const auto vars = inst.existential_variables();
	for (std::size_t i = vars.size() - t.fresh_vars.size(); i < vars.size(); ++i) {
		taken.insert(vars[i]);
		fresh.push_back(vars[i]);
	}
	return inst.matrix;
}

Outcome encode(const ProblemFile& p) {
	const std::string& name = p.directive.name;
	ProblemFile q = header_of(p);
	const Shape s = shape_of(p);
	if (name == "conjunction") {
		if (!s.all_equations || s.equations.empty() || !p.forall.empty()) {
			throw Error("conjunction needs positive equations and no universal block");
		}
		if (p.alphabet.size() < 2) throw Error("conjunction needs at least two letters");
		q.exists = p.exists;
		q.assertions = {Formula::make_atom(combinators::collapse_conjunction(s.equations, p.alphabet[0], p.alphabet[1]))};
		q.lengths = s.lengths;
		q.regular = p.regular;
		q.directive = {DirectiveKind::check_sat, "", 0};
	} else if (name == "oneletter") {
		if (!s.all_equations || s.equations.size() != 1 || !p.regular.empty() || !p.forall.empty()) {
			throw Error("oneletter needs exactly one positive equation and no regular constraints");
		}
		const auto enc = oneletter::encode_general_as_oneletter(s.equations.front(), p.alphabet, s.lengths);
		declare(q, enc.fresh);
		for (const auto& e : enc.equations) q.assertions.push_back(Formula::make_atom(e));
		q.lengths = enc.theta;
		q.directive = {DirectiveKind::oracle, "", 4};
	} else if (name == "sigma2-collapse") {
		if (p.forall.empty()) throw Error("sigma2-collapse needs a (forall ...) block");
		const auto psi = satunsat::sigma2_collapse(sentence(p, p.matrix()), p.alphabet);
		declare(q, psi.universal_variables());
		q.exists = psi.existential_variables();
		q.forall = psi.universal_variables();
		q.assertions = {psi.matrix};
		q.directive = {DirectiveKind::decide, "", 0};
	} else if (name == "ipl") {
		if (s.equations.size() != 1 || !s.all_equations || p.has_prefix()) {
			throw Error("ipl needs a single assertion (= alpha beta) and no quantifier prefix");
		}
		const auto phi = satunsat::encode_ipl(s.equations.front().lhs, s.equations.front().rhs, p.alphabet);
		q.exists = phi.existential_variables();
		q.forall = phi.universal_variables();
		q.assertions = {phi.matrix};
		q.directive = {DirectiveKind::decide, "", 0};
	} else if (const auto pos = name.find("-from-"); pos != std::string::npos) {
		const std::string target = name.substr(0, pos);
		const std::string source = name.substr(pos + 6);
		const auto t = target == "P" && source == "strnum" ? predicates::encode_power_binary()
														   : predicates::encode_counting(source, target, p.alphabet);
		std::set<std::string> taken(p.variables.begin(), p.variables.end());
		std::vector<std::string> fresh;
		q = p;
		for (auto& a : q.assertions) a = rewrite(a, target, t, taken, fresh, false);
		declare(q, fresh);
		if (!q.forall.empty() && !fresh.empty()) {
			q.exists.insert(q.exists.end(), fresh.begin(), fresh.end());
		}
		q.directive = {DirectiveKind::oracle, "", 4};
	} else {
		throw Error("unknown encoder " + name +
					"; available: conjunction, oneletter, sigma2-collapse, ipl, <Target>-from-<Source>");
	}
	Outcome out;
	out.procedure = "encode " + name;
	out.verdict = "ENCODED";
	out.exit_code = exit_positive;
	std::istringstream in(render_problem(q));
	for (std::string line; std::getline(in, line);) out.lines.push_back(line);
	return out;
}

} // namespace

Formula ProblemFile::matrix() const {
	if (assertions.size() == 1) return assertions.front();
	return Formula::conj(assertions);
}

ProblemFile parse_problem(std::string_view text) { return ProblemParser().parse(text); }

std::string render_problem(const ProblemFile& p) {
	std::ostringstream out;
	out << "(alphabet \"" << p.alphabet.letters() << "\")\n";
	if (!p.variables.empty()) out << "(var" << join(p.variables) << ")\n";
	if (!p.exists.empty()) out << "(exists" << join(p.exists) << ")\n";
	if (!p.forall.empty()) out << "(forall" << join(p.forall) << ")\n";
	for (const auto& a : p.assertions) out << "(assert " << render_formula(a) << ")\n";
	for (const auto& c : p.lengths) out << "(assert-len " << render_linear(c) << ")\n";
	for (const auto& [v, d] : p.regular) {
		out << "(assert-in " << v << " (dfa " << d.states << " " << d.initial << " (";
		for (std::size_t i = 0; i < d.accepting.size(); ++i) out << (i ? " " : "") << d.accepting[i];
		out << ") (";
		for (std::size_t i = 0; i < d.transitions.size(); ++i) {
			const auto& [from, c, to] = d.transitions[i];
			const bool bare = std::isalnum(static_cast<unsigned char>(c)) != 0;
			out << (i ? " " : "") << "(" << from << " " << (bare ? std::string(1, c) : quoted(std::string(1, c))) << " "
				<< to << ")";
		}
		out << ")))\n";
	}
	if (p.force) out << "(force " << *p.force << ")\n";
	switch (p.directive.kind) {
	case DirectiveKind::check_sat:
		out << "(check-sat)\n";
		break;
	case DirectiveKind::decide:
		out << "(decide)\n";
		break;
	case DirectiveKind::encode:
		out << "(encode " << p.directive.name << ")\n";
		break;
	case DirectiveKind::oracle:
		out << "(oracle " << p.directive.bound << ")\n";
		break;
	}
	return out.str();
}

const std::vector<std::string>& procedures() {
	static const std::vector<std::string> names{"oneletter", "regord", "system", "sigma2", "oneletter-sigma2"};
	return names;
}

std::string Outcome::render() const {
	std::string out = verdict + "\n";
	for (const auto& l : lines) out += l + "\n";
	return out;
}

Outcome dispatch(const ProblemFile& p, const RunOptions& options) {
	const std::optional<std::string> force = options.force ? options.force : p.force;
	if (force) {
		const auto& names = procedures();
		if (std::find(names.begin(), names.end(), *force) == names.end()) throw Error("unknown procedure " + *force);
	}
	switch (p.directive.kind) {
	case DirectiveKind::check_sat:
		if (!p.forall.empty()) throw Error("(check-sat) is for existential problems; use (decide)");
		return check_sat(p, force, options.max_expand);
	case DirectiveKind::decide:
		return decide(p, force, options.max_expand);
	case DirectiveKind::encode:
		return encode(p);
	case DirectiveKind::oracle:
		return oracle_run(p);
	}
	throw Error("unknown directive");
}

Outcome run_text(std::string_view text, const RunOptions& options) {
	Outcome out;
	ProblemFile p;
	try {
		p = parse_problem(text);
	} catch (const Error& e) {
		out.error = e.what();
		out.exit_code = exit_bad_input;
		return out;
	}
	try {
		return dispatch(p, options);
	} catch (const Error& e) {
		out.error = e.what();
		out.exit_code = std::string_view(e.what()).starts_with("internal") ? exit_failure : exit_no_procedure;
	} catch (const std::exception& e) {
		out.error = e.what();
		out.exit_code = exit_failure;
	}
	return out;
}

std::optional<std::string> expected_verdict(std::string_view text) {
	static constexpr std::string_view marker = "; expect:";
	const auto pos = text.find(marker);
	if (pos == std::string_view::npos) return std::nullopt;
	std::size_t i = pos + marker.size();
	while (i < text.size() && text[i] == ' ') ++i;
	std::size_t j = i;
	while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
	return std::string(text.substr(i, j - i));
}

std::string generate_problem(std::mt19937_64& rng) {
	std::uniform_int_distribution<int> kind(0, 2), len(0, 3), coef(-2, 2), constant(0, 6);
	auto side = [&](const std::vector<std::string>& vars, const std::string& letters) {
		std::string out = "(cat";
		for (int n = len(rng) + 1; n > 0; --n) {
			std::uniform_int_distribution<std::size_t> pick(0, vars.size() + letters.size() - 1);
			const std::size_t k = pick(rng);
			out += k < vars.size() ? " " + vars[k] : std::string(" \"") + letters[k - vars.size()] + "\"";
		}
		return out + ")";
	};
	std::ostringstream out;
	switch (kind(rng)) {
	case 0:
		out << "(alphabet \"ab\")\n(var x y)\n(assert (= " << side({"x", "y"}, "a") << " " << side({"x", "y"}, "a")
			<< "))\n(assert-len (>= (+ (* " << coef(rng) << " (len x)) (* " << coef(rng) << " (len y))) "
			<< constant(rng) << "))\n(check-sat)\n";
		break;
	case 1: {
		// x w1 y w2 = w3 x w4 y keeps every variable once per side, in order.
		std::uniform_int_distribution<int> letter(0, 1);
		auto word = [&] {
			std::string w;
			for (int n = len(rng); n > 0; --n) w += "ab"[letter(rng)];
			return w;
		};
		out << "(alphabet \"ab\")\n(var x y)\n(assert (= (cat \"" << word() << "\" x \"" << word() << "\" y) (cat x \""
			<< word() << "\" y \"" << word() << "\")))\n(assert-len (= (+ (* 1 (len x)) (* 1 (len y))) " << constant(rng)
			<< "))\n(check-sat)\n";
		break;
	}
	default:
		out << "(alphabet \"ab\")\n(var x y)\n(exists x)\n(forall y)\n(assert (= " << side({"x", "y"}, "ab") << " "
			<< side({"x", "y"}, "ab") << "))\n(decide)\n";
		break;
	}
	return out.str();
}

} // namespace wordeq::cli
