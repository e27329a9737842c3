#include "wordeq/oneletter.hpp"

#include "wordeq/diophantine.hpp"

#include <algorithm>
#include <set>

namespace wordeq::oneletter {

LinearConstraint length_abstraction(const Equation& e, char a) {
	for (char c : e.terminals()) {
		if (c != a) {
			throw Error(std::string("length abstraction expects only the letter '") + a + "', found '" + c + "'");
		}
	}
	LinearConstraint lc;
	lc.rel = Relation::eq;
	for (const auto& x : e.variables()) {
		lc.coeffs[x] = static_cast<std::int64_t>(e.lhs.count_variable(x)) -
					   static_cast<std::int64_t>(e.rhs.count_variable(x));
	}
	lc.constant = static_cast<std::int64_t>(e.rhs.count_letter(a)) - static_cast<std::int64_t>(e.lhs.count_letter(a));
	return lc;
}

char designated_letter(const Formula& f, const Alphabet& alphabet) {
	std::set<char> letters;
	for (const Atom* a : f.atoms()) {
		if (const auto* e = std::get_if<Equation>(a)) {
			auto t = e->terminals();
			letters.insert(t.begin(), t.end());
		}
	}
	if (letters.size() > 1) {
		throw Error("equations use more than one terminal letter");
	}
	const char d = letters.empty() ? (alphabet.size() ? alphabet[0] : 'a') : *letters.begin();
	if (!alphabet.contains(d)) {
		throw Error(std::string("letter '") + d + "' is not in the alphabet");
	}
	return d;
}

namespace {

void declare(std::vector<std::string>& vars, const std::string& v) {
	if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
		vars.push_back(v);
	}
}

} // namespace

SolveResult solve_oneletter(const Formula& f, const LengthConstraintSystem& theta, const Alphabet& alphabet,
							std::size_t max_expand) {
	if (!f.positive()) {
		throw Error("negation is outside the one-letter fragment; with negation the problem is as hard as "
					"general word equations with length constraints");
	}
	for (const Atom* a : f.atoms()) {
		if (std::holds_alternative<PredicateAtom>(*a)) {
			throw Error("predicate atoms are outside the one-letter fragment");
		}
	}
	const char d = designated_letter(f, alphabet);

	std::vector<std::string> vars = f.variables();
	for (const auto& c : theta) {
		for (const auto& [v, k] : c.coeffs) {
			declare(vars, v);
		}
	}

	SolveResult result;
	result.verdict = Verdict::unsat;
	const auto clauses = combinators::dnf_clauses(f);
	for (std::size_t i = 0; i < clauses.size(); ++i) {
		diophantine::DiophantineSystem sys(vars);
		for (const auto& lit : clauses[i]) {
			if (const auto* e = std::get_if<Equation>(&*lit.atom)) {
				sys.add(length_abstraction(*e, d));
			} else {
				sys.add(std::get<LinearConstraint>(*lit.atom));
			}
		}
		for (const auto& c : theta) {
			sys.add(c);
		}
		auto sol = diophantine::solve_nonneg(sys);
		if (!sol.sat) {
			continue;
		}
		result.verdict = Verdict::sat;
		for (std::size_t k = 0; k < vars.size(); ++k) {
			const BigInt& len = sol.values[k];
			if (len <= max_expand) {
				result.model.set(vars[k], Word(len.convert_to<std::size_t>(), d));
			} else {
				result.compressed[vars[k]] = CompressedImage{"", std::string(1, d), len};
			}
		}
		result.notes.push_back("disjunct " + std::to_string(i) + " of " + std::to_string(clauses.size()));
		return result;
	}
	return result;
}

Formula EncodedSystem::formula() const {
	std::vector<Formula> fs;
	for (const auto& e : equations) {
		fs.push_back(Formula::make_atom(e));
	}
	for (const auto& c : theta) {
		fs.push_back(Formula::make_atom(c));
	}
	return Formula::conj(std::move(fs));
}

EncodedSystem encode_general_as_oneletter(const Equation& e, const Alphabet& alphabet,
										  const LengthConstraintSystem& theta) {
	if (!e.positive) {
		throw Error("encode_general_as_oneletter needs a positive equation");
	}
	if (alphabet.size() == 0) {
		throw Error("empty alphabet");
	}
	std::set<std::string> taken;
	for (const auto& v : e.variables()) {
		taken.insert(v);
	}
	for (const auto& c : theta) {
		for (const auto& [v, k] : c.coeffs) {
			taken.insert(v);
		}
	}
	const std::size_t n = alphabet.size();
	std::string stem = "y";
	auto clashes = [&] {
		for (std::size_t i = 1; i <= n; ++i) {
			if (taken.contains(stem + std::to_string(i))) {
				return true;
			}
		}
		return false;
	};
	while (clashes()) {
		stem += "_";
	}
	EncodedSystem out;
	for (std::size_t i = 1; i <= n; ++i) {
		out.fresh.push_back(stem + std::to_string(i));
	}
	auto var = [&](std::size_t i) { return Pattern({Symbol::variable(out.fresh[i])}); };
	for (std::size_t i = 0; i < n; ++i) {
		for (std::size_t j = i + 1; j < n; ++j) {
			out.equations.push_back(Equation{var(i), var(j), false});
		}
	}
	auto replace = [&](const Pattern& p) {
		Pattern q;
		for (const auto& s : p) {
			if (s.is_terminal()) {
				q.append(Symbol::variable(out.fresh[alphabet.index_of(s.letter())]));
			} else {
				q.append(s);
			}
		}
		return q;
	};
	out.equations.push_back(Equation{replace(e.lhs), replace(e.rhs), true});
	out.equations.push_back(Equation{var(0), Pattern::word(std::string(1, alphabet[0])), true});
	out.theta = theta;
	for (std::size_t i = 1; i < n; ++i) {
		out.theta.push_back(LinearConstraint{{{out.fresh[i], 1}}, 1, Relation::eq});
	}
	return out;
}

// ---------------------------------------------------------------------------

namespace {

bool is_length_arg(const Pattern& p) {
	return p.is_constant() || (p.size() == 1 && p[0].is_variable());
}

/// |p1| = |p2| as a constraint over variable lengths.
LinearConstraint length_equality(const Pattern& p1, const Pattern& p2) {
	LinearConstraint lc;
	lc.rel = Relation::eq;
	for (const auto& s : p1) {
		if (s.is_variable()) ++lc.coeffs[s.name]; else --lc.constant;
	}
	for (const auto& s : p2) {
		if (s.is_variable()) --lc.coeffs[s.name]; else ++lc.constant;
	}
	std::erase_if(lc.coeffs, [](const auto& kv) { return kv.second == 0; });
	return lc;
}

} // namespace

combinators::Sigma2Result decide_oneletter_sigma2(const QuantifiedFormula& phi, const Alphabet& alphabet) {
	using combinators::Truth;
	phi.validate();
	const Fragment fr = phi.fragment();
	if (fr == Fragment::other) {
		throw Error("the prefix must be exists-forall");
	}
	if (!phi.matrix.positive()) {
		throw Error("the matrix must be positive");
	}
	if (alphabet.size() < 2) {
		throw Error("the exists-forall one-letter procedure needs an alphabet with at least two letters");
	}
	for (const Atom* a : phi.matrix.atoms()) {
		if (const auto* p = std::get_if<PredicateAtom>(a)) {
			if (p->name != "Length" || p->args.size() != 2 || !is_length_arg(p->args[0]) || !is_length_arg(p->args[1])) {
				throw Error("only Length(z1, z2) with variables or constant words is allowed besides equations");
			}
		} else if (!std::holds_alternative<Equation>(*a)) {
			throw Error("length constraints are not part of this fragment; use Length atoms");
		}
	}
	designated_letter(phi.matrix, alphabet);

	const auto ex_list = phi.existential_variables();
	const auto un_list = phi.universal_variables();
	const std::set<std::string> ex(ex_list.begin(), ex_list.end());
	const std::set<std::string> un(un_list.begin(), un_list.end());

	combinators::Sigma2Result result;
	const auto clauses = combinators::dnf_clauses(phi.matrix);
	for (std::size_t i = 0; i < clauses.size(); ++i) {
		std::vector<Formula> system;
		LengthConstraintSystem theta;
		bool discarded = false;
		for (const auto& lit : clauses[i]) {
			if (const auto* e = std::get_if<Equation>(&*lit.atom)) {
				if (e->lhs == e->rhs) {
					continue;
				}
				auto rep = combinators::triviality_analysis(*e, ex, un);
				if (!rep.skeleton_ok) {
					discarded = true;
					break;
				}
				for (const auto& s : rep.induced_system) {
					if (s.lhs != s.rhs) {
						system.push_back(Formula::make_atom(s));
					}
				}
				continue;
			}
			const auto& p = std::get<PredicateAtom>(*lit.atom);
			if (p.args[0] == p.args[1]) {
				continue;
			}
			auto mentions_universal = [&](const Pattern& q) {
				return std::any_of(q.begin(), q.end(), [&](const Symbol& s) { return s.is_variable() && un.contains(s.name); });
			};
			if (mentions_universal(p.args[0]) || mentions_universal(p.args[1])) {
				discarded = true;
				break;
			}
			theta.push_back(length_equality(p.args[0], p.args[1]));
		}
		if (discarded) {
			result.notes.push_back("disjunct " + std::to_string(i) + ": cannot become trivial");
			continue;
		}
		SolveResult r = solve_oneletter(Formula::conj(system), theta, alphabet);
		if (r.sat()) {
			result.truth = Truth::true_;
			result.disjunct = i;
			for (const auto& x : ex_list) {
				result.witness.set(x, r.model.contains(x) ? r.model.at(x) : Word{});
			}
			return result;
		}
		result.notes.push_back("disjunct " + std::to_string(i) + ": existential system unsatisfiable");
	}
	result.truth = Truth::false_;
	return result;
}

} // namespace wordeq::oneletter
