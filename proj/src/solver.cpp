#include "wordeq/solver.hpp"

#include "wordeq/diophantine.hpp"
#include "wordeq/oneletter.hpp"
#include "wordeq/oracle.hpp"
#include "wordeq/regord.hpp"

#include <algorithm>
#include <set>

namespace wordeq::solver {

namespace {

void declare(std::vector<std::string>& vars, const std::string& v) {
	if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
		vars.push_back(v);
	}
}

Pattern erase_variables(const Pattern& p, const std::set<std::string>& gone) {
	Pattern q;
	for (const auto& s : p) {
		if (!(s.is_variable() && gone.contains(s.name))) {
			q.append(s);
		}
	}
	return q;
}

struct Simplified {
	bool clash = false;
	std::string reason;
	std::vector<Equation> equations;
	std::set<std::string> empty_vars;
};

/// Cancels common prefixes and suffixes and propagates variables forced to
/// the empty word, to a fixpoint.
Simplified simplify(const std::vector<Equation>& input) {
	Simplified out;
	std::vector<Equation> es = input;
	bool changed = true;
	while (changed) {
		changed = false;
		std::vector<Equation> next;
		for (const auto& e0 : es) {
			Pattern u = erase_variables(e0.lhs, out.empty_vars);
			Pattern v = erase_variables(e0.rhs, out.empty_vars);
			std::size_t i = 0;
			while (i < u.size() && i < v.size() && u[i] == v[i]) ++i;
			std::size_t j = 0;
			while (j < u.size() - i && j < v.size() - i && u[u.size() - 1 - j] == v[v.size() - 1 - j]) ++j;
			Pattern lu = u.slice(i, u.size() - j);
			Pattern lv = v.slice(i, v.size() - j);
			if (lu.empty() && lv.empty()) {
				continue;
			}
			auto terminal_clash = [&](const Symbol& x, const Symbol& y) {
				return x.is_terminal() && y.is_terminal() && x.letter() != y.letter();
			};
			if (!lu.empty() && !lv.empty() &&
				(terminal_clash(lu[0], lv[0]) || terminal_clash(lu[lu.size() - 1], lv[lv.size() - 1]))) {
				out.clash = true;
				out.reason = "terminal clash in " + e0.to_string();
				return out;
			}
			if (lu.empty() || lv.empty()) {
				const Pattern& rest = lu.empty() ? lv : lu;
				for (const auto& s : rest) {
					if (s.is_terminal()) {
						out.clash = true;
						out.reason = "a side reduces to the empty word in " + e0.to_string();
						return out;
					}
					out.empty_vars.insert(s.name);
				}
				changed = true;
				continue;
			}
			next.push_back(Equation{lu, lv, true});
		}
		es = std::move(next);
	}
	out.equations = std::move(es);
	return out;
}

/// Letter counts of h(x) as unknowns; sound relaxation of the equations.
bool parikh_refutes(const std::vector<Equation>& es, const LengthConstraintSystem& theta,
					const std::vector<std::string>& vars, const Alphabet& alphabet) {
	std::vector<std::string> unknowns;
	auto name = [](const std::string& x, char c) { return x + "#" + c; };
	for (const auto& x : vars) {
		for (char c : alphabet.letters()) {
			unknowns.push_back(name(x, c));
		}
	}
	diophantine::DiophantineSystem sys(unknowns);
	for (const auto& e : es) {
		for (char c : alphabet.letters()) {
			std::map<std::string, BigInt> coeffs;
			for (const auto& x : e.variables()) {
				coeffs[name(x, c)] = BigInt(static_cast<long long>(e.lhs.count_variable(x))) -
									 BigInt(static_cast<long long>(e.rhs.count_variable(x)));
			}
			BigInt rhs = BigInt(static_cast<long long>(e.rhs.count_letter(c))) -
						 BigInt(static_cast<long long>(e.lhs.count_letter(c)));
			sys.add(coeffs, Relation::eq, rhs);
		}
	}
	for (const auto& lc : theta) {
		std::map<std::string, BigInt> coeffs;
		for (const auto& [x, k] : lc.coeffs) {
			for (char c : alphabet.letters()) {
				coeffs[name(x, c)] += k;
			}
		}
		sys.add(coeffs, lc.rel, lc.constant);
	}
	return !diophantine::solve_nonneg(sys).sat;
}

bool one_letter_system(const std::vector<Equation>& es) {
	std::set<char> letters;
	for (const auto& e : es) {
		for (char c : e.terminals()) letters.insert(c);
	}
	return letters.size() <= 1;
}

BigInt constraint_sum(const LinearConstraint& c, const std::map<std::string, BigInt>& lengths) {
	BigInt s = 0;
	for (const auto& [x, k] : c.coeffs) {
		auto it = lengths.find(x);
		if (it != lengths.end()) s += BigInt(k) * it->second;
	}
	return s;
}

bool holds(const LinearConstraint& c, const std::map<std::string, BigInt>& lengths) {
	const BigInt s = constraint_sum(c, lengths);
	switch (c.rel) {
	case Relation::eq: return s == c.constant;
	case Relation::le: return s <= c.constant;
	case Relation::ge: return s >= c.constant;
	}
	return false;
}

void verify(const SystemProblem& p, const SolveResult& r) {
	std::map<std::string, BigInt> lengths;
	for (const auto& [x, w] : r.model.bindings()) lengths[x] = BigInt(w.size());
	for (const auto& [x, ci] : r.compressed) lengths[x] = ci.length();
	for (const auto& c : p.lengths) {
		if (!holds(c, lengths)) {
			throw Error("internal: model violates " + c.to_string());
		}
	}
	if (!r.compressed.empty()) {
		return;
	}
	for (const auto& e : p.equations) {
		if (apply(e.lhs, r.model) != apply(e.rhs, r.model)) {
			throw Error("internal: model does not solve " + e.to_string());
		}
	}
	for (const auto& [x, m] : p.regular) {
		if (!m.accepts(r.model.at(x))) {
			throw Error("internal: image of " + x + " is rejected by its automaton");
		}
	}
}

} // namespace

SolveResult solve_system(const SystemProblem& problem, const Alphabet& alphabet, const SolverOptions& options) {
	std::vector<std::string> vars = problem.variables;
	for (const auto& e : problem.equations) {
		if (!e.positive) {
			throw Error("solve_system expects positive equations");
		}
		for (const auto& x : e.variables()) declare(vars, x);
		for (char c : e.terminals()) {
			if (!alphabet.contains(c)) {
				throw Error(std::string("letter '") + c + "' is not in the alphabet");
			}
		}
	}
	for (const auto& c : problem.lengths) {
		for (const auto& [x, k] : c.coeffs) declare(vars, x);
	}
	for (const auto& [x, m] : problem.regular) {
		declare(vars, x);
		if (!(m.alphabet() == alphabet)) {
			throw Error("the automaton for " + x + " uses a different alphabet");
		}
	}

	SolveResult result;
	auto finish = [&](SolveResult r, const std::string& stage) {
		if (r.verdict == Verdict::sat) {
			for (const auto& x : vars) {
				if (!r.model.contains(x) && !r.compressed.contains(x)) {
					r.model.set(x, Word{});
				}
			}
			verify(problem, r);
		}
		r.notes.insert(r.notes.begin(), "stage: " + stage);
		return r;
	};

	Simplified s = simplify(problem.equations);
	if (s.clash) {
		result.verdict = Verdict::unsat;
		result.notes.push_back(s.reason);
		return finish(result, "simplification");
	}
	LengthConstraintSystem theta = problem.lengths;
	for (const auto& x : s.empty_vars) {
		auto it = problem.regular.find(x);
		if (it != problem.regular.end() && !it->second.accepts("")) {
			result.verdict = Verdict::unsat;
			result.notes.push_back(x + " must be empty but its automaton rejects the empty word");
			return finish(result, "simplification");
		}
		theta.push_back(LinearConstraint{{{x, 1}}, 0, Relation::eq});
	}

	if (parikh_refutes(s.equations, theta, vars, alphabet)) {
		result.verdict = Verdict::unsat;
		result.notes.push_back("letter counts admit no solution");
		return finish(result, "parikh");
	}

	if (problem.regular.empty() && one_letter_system(s.equations)) {
		std::vector<Formula> fs;
		for (const auto& e : s.equations) fs.push_back(Formula::make_atom(e));
		SolveResult r = oneletter::solve_oneletter(Formula::conj(std::move(fs)), theta, alphabet, options.max_expand);
		return finish(r, "one-letter");
	}

	if (s.equations.size() <= 1) {
		const Equation e = s.equations.empty() ? Equation{} : s.equations.front();
		if (regord::check_strictly_regular_ordered(e)) {
			auto r = regord::solve_regular_ordered(e, theta, problem.regular, alphabet, options.max_expand);
			return finish(r.solve, "regular-ordered");
		}
	}

	std::vector<Formula> fs;
	for (const auto& e : s.equations) fs.push_back(Formula::make_atom(e));
	for (const auto& c : theta) fs.push_back(Formula::make_atom(c));
	oracle::OracleOptions o;
	o.bound = options.oracle_bound;
	o.node_limit = options.node_limit;
	o.regular = problem.regular;
	auto model = oracle::first_model(Formula::conj(std::move(fs)), vars, alphabet, o);
	if (model) {
		result.verdict = Verdict::sat;
		result.model = *model;
		return finish(result, "bounded search");
	}
	result.verdict = Verdict::unknown;
	result.notes.push_back("no complete procedure applies and bounded search up to length " +
						   std::to_string(options.oracle_bound) + " found no solution");
	return finish(result, "bounded search");
}

} // namespace wordeq::solver
