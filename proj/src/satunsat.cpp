#include "wordeq/satunsat.hpp"

#include "wordeq/combinators.hpp"

#include <algorithm>
#include <set>

namespace wordeq::satunsat {

namespace {

bool all_in(const std::vector<std::string>& vars, const std::set<std::string>& allowed) {
	return std::all_of(vars.begin(), vars.end(), [&](const std::string& v) { return allowed.contains(v); });
}

Formula any_fails(const std::vector<Equation>& unsat) {
	std::vector<Formula> ds;
	for (const auto& f : unsat) {
		ds.push_back(Formula::make_atom(f.negated()));
	}
	return ds.size() == 1 ? ds.front() : Formula::disj(std::move(ds));
}

std::vector<std::vector<Word>> assignments(const std::vector<Word>& words, std::size_t n) {
	std::vector<std::vector<Word>> out{{}};
	for (std::size_t i = 0; i < n; ++i) {
		std::vector<std::vector<Word>> next;
		for (const auto& a : out) {
			for (const auto& w : words) {
				auto b = a;
				b.push_back(w);
				next.push_back(std::move(b));
			}
		}
		out = std::move(next);
	}
	return out;
}

bool holds(const Equation& e, const Substitution& h) {
	return (apply(e.lhs, h) == apply(e.rhs, h)) == e.positive;
}

} // namespace

void SatUnsatSystem::validate(const Alphabet& alphabet) const {
	if (alphabet.size() < 2) {
		throw Error("systems of sat- and unsat-equations need at least two letters");
	}
	const std::set<std::string> xs(x_vars.begin(), x_vars.end());
	std::set<std::string> both = xs;
	for (const auto& y : y_vars) {
		if (!both.insert(y).second) {
			throw Error("variable " + y + " is both existential and universal");
		}
	}
	for (const auto& e : sat_set) {
		if (!all_in(e.variables(), xs)) {
			throw Error("sat equation " + e.to_string() + " uses a variable outside X");
		}
	}
	for (const auto& e : unsat_set) {
		if (!all_in(e.variables(), both)) {
			throw Error("unsat equation " + e.to_string() + " uses an undeclared variable");
		}
	}
}

SystemEncoding system_to_sigma2(const SatUnsatSystem& sys, const Alphabet& alphabet) {
	sys.validate(alphabet);
	std::vector<Equation> sat = sys.sat_set;
	if (sat.empty()) {
		for (const auto& x : sys.x_vars) {
			const Pattern p({Symbol::variable(x)});
			sat.push_back(Equation{p, p, true});
		}
	}
	SystemEncoding out;
	std::vector<Formula> parts;
	const bool positive = std::all_of(sat.begin(), sat.end(), [](const Equation& e) { return e.positive; });
	if (positive) {
		out.collapsed = true;
		parts.push_back(Formula::make_atom(sat.empty() ? Equation{} : combinators::collapse_conjunction(sat, alphabet[0], alphabet[1])));
	} else {
		for (const auto& e : sat) {
			parts.push_back(Formula::make_atom(e));
		}
	}
	parts.push_back(any_fails(sys.unsat_set));
	out.formula = QuantifiedFormula::exists_forall(sys.x_vars, sys.y_vars, Formula::conj(std::move(parts)));
	return out;
}

SatUnsatSystem sigma2_to_system(const QuantifiedFormula& phi) {
	phi.validate();
	SatUnsatSystem sys;
	sys.x_vars = phi.existential_variables();
	sys.y_vars = phi.universal_variables();
	const Fragment fr = phi.fragment();
	if (fr != Fragment::sigma2 && fr != Fragment::sigma2_positive && fr != Fragment::sigma1 &&
		fr != Fragment::quantifier_free) {
		throw Error("expected an exists-forall sentence");
	}
	const std::set<std::string> xs(sys.x_vars.begin(), sys.x_vars.end());
	auto as_equation = [](const Formula& f) -> const Equation* {
		return f.is_atom() ? std::get_if<Equation>(&*f.atom) : nullptr;
	};
	const Formula& m = phi.matrix;
	const Formula* head = &m;
	const Formula* rest = nullptr;
	if (m.kind == Formula::Kind::conj && m.children.size() == 2) {
		head = &m.children[0];
		rest = &m.children[1];
	}
	const Equation* e = as_equation(*head);
	if (!e || !e->positive || !all_in(e->variables(), xs)) {
		throw Error("the matrix must start with a positive equation over the existential variables");
	}
	sys.sat_set.push_back(*e);
	for (const auto& x : sys.x_vars) {
		const Pattern p({Symbol::variable(x)});
		sys.sat_set.push_back(Equation{p, p, true});
	}
	if (!rest) {
		sys.unsat_set.push_back(Equation{{}, {}, false});
		return sys;
	}
	std::vector<const Formula*> disjuncts;
	if (rest->kind == Formula::Kind::disj) {
		for (const auto& c : rest->children) disjuncts.push_back(&c);
	} else {
		disjuncts.push_back(rest);
	}
	for (const Formula* d : disjuncts) {
		const Equation* f = as_equation(*d);
		if (!f) {
			throw Error("the second conjunct must be a disjunction of equations");
		}
		sys.unsat_set.push_back(f->negated());
	}
	return sys;
}

BoundedSystemResult check_system_bounded(const SatUnsatSystem& sys, const Alphabet& alphabet, std::size_t bound) {
	sys.validate(alphabet);
	const auto words = words_up_to(alphabet, bound);
	const auto ys = assignments(words, sys.y_vars.size());
	BoundedSystemResult out;
	for (const auto& xa : assignments(words, sys.x_vars.size())) {
		Substitution h;
		for (std::size_t i = 0; i < xa.size(); ++i) h.set(sys.x_vars[i], xa[i]);
		if (!std::all_of(sys.sat_set.begin(), sys.sat_set.end(), [&](const Equation& e) { return holds(e, h); })) {
			continue;
		}
		bool every_y = true;
		for (const auto& ya : ys) {
			Substitution g = h;
			for (std::size_t i = 0; i < ya.size(); ++i) g.set(sys.y_vars[i], ya[i]);
			if (std::all_of(sys.unsat_set.begin(), sys.unsat_set.end(), [&](const Equation& e) { return holds(e, g); })) {
				every_y = false;
				break;
			}
		}
		if (every_y) {
			out.verdict = SystemVerdict::satisfiable;
			out.x_assignment = std::move(h);
			return out;
		}
	}
	return out;
}

QuantifiedFormula encode_ipl(const Pattern& alpha, const Pattern& beta, const Alphabet& alphabet) {
	if (alphabet.size() < 2) {
		throw Error("pattern inclusion needs at least two letters");
	}
	const auto xs = alpha.variables();
	const auto ys = beta.variables();
	for (const auto& x : xs) {
		if (std::find(ys.begin(), ys.end(), x) != ys.end()) {
			throw Error("variable " + x + " occurs in both patterns");
		}
	}
	return QuantifiedFormula::exists_forall(xs, ys, Formula::neq(alpha, beta));
}

QfEquation default_qf_to_equation(const Formula& f, const Alphabet& alphabet) {
	const auto clauses = combinators::dnf_clauses(f);
	if (clauses.size() == 1) {
		std::vector<Equation> es;
		for (const auto& lit : clauses.front()) {
			const Equation* e = lit.is_atom() ? std::get_if<Equation>(&*lit.atom) : nullptr;
			if (!e || !e->positive) {
				es.clear();
				break;
			}
			es.push_back(*e);
		}
		if (es.size() == 1) {
			return QfEquation{es.front(), {}};
		}
		if (!es.empty()) {
			if (alphabet.size() < 2) {
				throw Error("merging equations needs at least two letters");
			}
			return QfEquation{combinators::collapse_conjunction(es, alphabet[0], alphabet[1]), {}};
		}
	}
	throw Error("no built-in conversion of " + f.to_string() +
				" into a single equation; supply a converter for disjunctions and negations");
}

QuantifiedFormula sigma2_collapse(const QuantifiedFormula& phi, const Alphabet& alphabet, const QfToEquation& convert) {
	phi.validate();
	const Fragment fr = phi.fragment();
	if (fr == Fragment::other) {
		throw Error("expected an exists-forall sentence");
	}
	const auto xs = phi.existential_variables();
	auto ys = phi.universal_variables();
	const QfEquation q = convert(Formula::negate(phi.matrix), alphabet);
	if (!q.equation.positive) {
		throw Error("the converter must return a positive equation");
	}
	for (const auto& z : q.fresh) {
		if (std::find(xs.begin(), xs.end(), z) != xs.end() || std::find(ys.begin(), ys.end(), z) != ys.end()) {
			throw Error("fresh variable " + z + " clashes with a quantified variable");
		}
		ys.push_back(z);
	}
	return QuantifiedFormula::exists_forall(xs, ys, Formula::make_atom(q.equation.negated()));
}

} // namespace wordeq::satunsat
