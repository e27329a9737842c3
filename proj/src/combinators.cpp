#include "wordeq/combinators.hpp"

#include "wordeq/solver.hpp"

#include <algorithm>

namespace wordeq::combinators {

Equation pair_conjunction(const Equation& e1, const Equation& e2, char a, char b) {
	if (!e1.positive || !e2.positive) {
		throw Error("pair_conjunction needs positive equations");
	}
	if (a == b) {
		throw Error("pair_conjunction needs two distinct marker letters");
	}
	auto side = [&](const Pattern& u, const Pattern& u2) {
		Pattern z = u;
		z.append(Symbol::terminal(a)).append(u2).append(u).append(Symbol::terminal(b)).append(u2);
		return z;
	};
	return Equation{side(e1.lhs, e2.lhs), side(e1.rhs, e2.rhs), true};
}

Equation collapse_conjunction(const std::vector<Equation>& es, char a, char b) {
	if (es.empty()) {
		throw Error("collapse_conjunction needs at least one equation");
	}
	Equation acc = es.front();
	if (!acc.positive) {
		throw Error("collapse_conjunction needs positive equations");
	}
	for (std::size_t i = 1; i < es.size(); ++i) {
		acc = pair_conjunction(acc, es[i], a, b);
	}
	return acc;
}

Substitution distinguishing_substitution(const Pattern& u, const Pattern& v, std::size_t k, char a, char b) {
	if (a == b) {
		throw Error("distinguishing_substitution needs two distinct letters");
	}
	std::vector<std::string> ys = (u + v).variables();
	Substitution h;
	for (std::size_t i = 0; i < ys.size(); ++i) {
		h.set(ys[i], std::string(1, a) + std::string(k + i + 1, b) + std::string(1, a));
	}
	return h;
}

Substitution distinguishing_substitution(const Pattern& u, const Pattern& v, const Alphabet& alphabet) {
	if (alphabet.size() < 2) {
		throw Error("distinguishing_substitution needs an alphabet with at least two letters");
	}
	return distinguishing_substitution(u, v, u.size() + v.size() + 1, alphabet[0], alphabet[1]);
}

std::size_t distinguishing_image_bound(std::size_t k, std::size_t m) { return k + m + 2; }

// ---------------------------------------------------------------------------
// DNF

namespace {

using Clause = std::vector<Formula>;

std::vector<Clause> clauses_of(const Formula& f, bool negated);

std::vector<Clause> product(const std::vector<std::vector<Clause>>& parts) {
	std::vector<Clause> acc{Clause{}};
	for (const auto& part : parts) {
		std::vector<Clause> next;
		for (const auto& left : acc) {
			for (const auto& right : part) {
				Clause c = left;
				c.insert(c.end(), right.begin(), right.end());
				next.push_back(std::move(c));
			}
		}
		acc = std::move(next);
	}
	return acc;
}

std::vector<Clause> negated_atom(const Atom& a) {
	if (const auto* e = std::get_if<Equation>(&a)) {
		return {{Formula::make_atom(e->negated())}};
	}
	if (const auto* l = std::get_if<LinearConstraint>(&a)) {
		LinearConstraint lo = *l;
		LinearConstraint hi = *l;
		lo.rel = Relation::le;
		lo.constant = l->constant - 1;
		hi.rel = Relation::ge;
		hi.constant = l->constant + 1;
		switch (l->rel) {
		case Relation::eq: return {{Formula::make_atom(lo)}, {Formula::make_atom(hi)}};
		case Relation::le: return {{Formula::make_atom(hi)}};
		case Relation::ge: return {{Formula::make_atom(lo)}};
		}
	}
	return {{Formula::negate(Formula::make_atom(a))}};
}

std::vector<Clause> clauses_of(const Formula& f, bool negated) {
	switch (f.kind) {
	case Formula::Kind::atom:
		return negated ? negated_atom(*f.atom) : std::vector<Clause>{{f}};
	case Formula::Kind::neg:
		return clauses_of(f.children.front(), !negated);
	case Formula::Kind::conj:
	case Formula::Kind::disj: {
		const bool is_and = (f.kind == Formula::Kind::conj) != negated;
		std::vector<std::vector<Clause>> parts;
		for (const auto& c : f.children) {
			parts.push_back(clauses_of(c, negated));
		}
		if (is_and) {
			return product(parts);
		}
		std::vector<Clause> out;
		for (auto& p : parts) {
			out.insert(out.end(), p.begin(), p.end());
		}
		return out;
	}
	}
	return {};
}

} // namespace

std::vector<std::vector<Formula>> dnf_clauses(const Formula& f) { return clauses_of(f, false); }

Formula to_dnf(const Formula& f) {
	auto clauses = dnf_clauses(f);
	auto as_formula = [](const Clause& c) { return c.size() == 1 ? c.front() : Formula::conj(c); };
	if (clauses.size() == 1) {
		return as_formula(clauses.front());
	}
	std::vector<Formula> ds;
	for (const auto& c : clauses) {
		ds.push_back(as_formula(c));
	}
	return Formula::disj(std::move(ds));
}

// ---------------------------------------------------------------------------
// Triviality

TrivialityReport triviality_analysis(const Equation& e, const std::set<std::string>& existential,
									 const std::set<std::string>& universal) {
	for (const auto& v : e.variables()) {
		if (!existential.contains(v) && !universal.contains(v)) {
			throw Error("variable " + v + " is neither existential nor universal");
		}
	}
	auto split = [&](const Pattern& p, std::vector<std::string>& skeleton) {
		std::vector<Pattern> segments(1);
		for (const auto& s : p) {
			if (s.is_variable() && universal.contains(s.name)) {
				skeleton.push_back(s.name);
				segments.emplace_back();
			} else {
				segments.back().append(s);
			}
		}
		return segments;
	};
	std::vector<std::string> ls, rs;
	auto lseg = split(e.lhs, ls);
	auto rseg = split(e.rhs, rs);
	TrivialityReport r;
	r.skeleton_ok = ls == rs;
	if (r.skeleton_ok) {
		for (std::size_t k = 0; k < lseg.size(); ++k) {
			r.induced_system.push_back(Equation{lseg[k], rseg[k], true});
		}
	}
	return r;
}

std::string_view to_string(Truth t) {
	switch (t) {
	case Truth::true_: return "TRUE";
	case Truth::false_: return "FALSE";
	case Truth::unknown: return "UNKNOWN";
	}
	return "UNKNOWN";
}

// ---------------------------------------------------------------------------
// Decision procedure

namespace {

SolveResult default_solver(const ExistentialSystem& sys, const Alphabet& alphabet) {
	solver::SystemProblem p;
	p.equations = sys.equations;
	p.lengths = sys.lengths;
	p.variables = sys.variables;
	return solver::solve_system(p, alphabet);
}

/// Drops equations whose sides coincide; they hold under every assignment.
std::vector<Equation> nontrivial(std::vector<Equation> es) {
	std::erase_if(es, [](const Equation& e) { return e.lhs == e.rhs; });
	return es;
}

} // namespace

Sigma2Result decide_sigma2_positive(const QuantifiedFormula& phi, const Alphabet& alphabet,
									const Sigma2Options& options) {
	phi.validate();
	const Fragment fr = phi.fragment();
	if (fr != Fragment::sigma2_positive && fr != Fragment::sigma1 && fr != Fragment::pi1 &&
		fr != Fragment::quantifier_free) {
		throw Error(fr == Fragment::sigma2 ? "the matrix must be positive"
										   : "the prefix must be exists-forall");
	}
	if (!phi.matrix.positive()) {
		throw Error("the matrix must be positive");
	}
	for (const Atom* a : phi.matrix.atoms()) {
		if (!std::holds_alternative<Equation>(*a)) {
			throw Error("the matrix may only contain word equations");
		}
	}
	if (alphabet.size() < 2) {
		throw Error("deciding exists-forall sentences needs at least two letters; use the one-letter procedure");
	}
	const char a = options.marker_a ? options.marker_a : alphabet[0];
	const char b = options.marker_b ? options.marker_b : alphabet[1];
	if (!alphabet.contains(a) || !alphabet.contains(b) || a == b) {
		throw Error("marker letters must be two distinct alphabet letters");
	}
	const SystemSolver solve = options.solver ? options.solver : SystemSolver(default_solver);

	const auto ex_list = phi.existential_variables();
	const std::set<std::string> ex(ex_list.begin(), ex_list.end());
	const auto un_list = phi.universal_variables();
	const std::set<std::string> un(un_list.begin(), un_list.end());

	Sigma2Result result;
	bool undecided = false;
	const auto clauses = dnf_clauses(phi.matrix);
	for (std::size_t i = 0; i < clauses.size(); ++i) {
		std::vector<Equation> conjuncts;
		for (const auto& lit : clauses[i]) {
			conjuncts.push_back(std::get<Equation>(*lit.atom));
		}
		ExistentialSystem sys;
		sys.variables = ex_list;
		bool skeleton = true;
		if (!conjuncts.empty()) {
			auto report = triviality_analysis(collapse_conjunction(conjuncts, a, b), ex, un);
			skeleton = report.skeleton_ok;
			sys.equations = nontrivial(report.induced_system);
		}
		if (!skeleton) {
			result.notes.push_back("disjunct " + std::to_string(i) + ": universal skeleton mismatch");
			continue;
		}
		SolveResult r = solve(sys, alphabet);
		if (r.verdict == Verdict::unknown && conjuncts.size() > 1) {
			// Equivalent system: the union of the per-conjunct segment systems.
			ExistentialSystem split;
			split.variables = ex_list;
			bool all_ok = true;
			for (const auto& c : conjuncts) {
				auto rep = triviality_analysis(c, ex, un);
				all_ok = all_ok && rep.skeleton_ok;
				for (auto& eq : nontrivial(rep.induced_system)) {
					split.equations.push_back(std::move(eq));
				}
			}
			if (!all_ok) {
				result.notes.push_back("disjunct " + std::to_string(i) + ": universal skeleton mismatch");
				continue;
			}
			r = solve(split, alphabet);
		}
		if (r.verdict == Verdict::sat) {
			result.truth = Truth::true_;
			result.disjunct = i;
			for (const auto& x : ex_list) {
				result.witness.set(x, r.model.contains(x) ? r.model.at(x) : Word{});
			}
			return result;
		}
		if (r.verdict == Verdict::unknown) {
			undecided = true;
			result.notes.push_back("disjunct " + std::to_string(i) + ": existential system undecided");
		} else {
			result.notes.push_back("disjunct " + std::to_string(i) + ": existential system unsatisfiable");
		}
	}
	result.truth = undecided ? Truth::unknown : Truth::false_;
	return result;
}

} // namespace wordeq::combinators
