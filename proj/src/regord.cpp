#include "wordeq/regord.hpp"

#include "wordeq/diophantine.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

namespace wordeq::regord {

bool check_strictly_regular_ordered(const Equation& e) {
	const auto lv = e.lhs.variables();
	if (lv != e.rhs.variables()) {
		return false;
	}
	return std::all_of(lv.begin(), lv.end(), [&](const std::string& x) {
		return e.lhs.count_variable(x) == 1 && e.rhs.count_variable(x) == 1;
	});
}

Substitution ParametricAssignment::instantiate(const std::map<std::string, std::size_t>& exponents,
											   const std::map<std::string, Word>& free_words) const {
	Substitution h;
	for (const auto& x : variables) {
		const auto& img = images.at(x);
		if (img.kind == ParametricImage::Kind::unconstrained) {
			auto it = free_words.find(x);
			h.set(x, it != free_words.end() ? it->second : Word{});
			continue;
		}
		auto it = exponents.find(x);
		const std::size_t n = it != exponents.end() ? it->second : 0;
		Word w;
		for (std::size_t i = 0; i < n; ++i) {
			w += img.alpha + img.beta;
		}
		h.set(x, w + img.alpha);
	}
	return h;
}

namespace {

struct Shape {
	std::vector<std::string> vars;
	std::vector<Word> u;   // n + 1 terminal segments of the left side
	std::vector<Word> v;
	std::size_t total_symbols = 0;
};

Shape decompose(const Equation& e) {
	Shape s;
	auto split = [&](const Pattern& p, std::vector<Word>& seg) {
		seg.emplace_back();
		for (const auto& sym : p) {
			if (sym.is_variable()) {
				seg.emplace_back();
			} else {
				seg.back() += sym.letter();
			}
		}
	};
	s.vars = e.lhs.variables();
	split(e.lhs, s.u);
	split(e.rhs, s.v);
	s.total_symbols = e.lhs.size() + e.rhs.size();
	return s;
}

/// The longer side is ahead of the shorter by `over`; sign +1 when the left
/// side is ahead, -1 when the right side is, 0 when neither.
struct Overhang {
	Word over;
	int sign = 0;
};

std::optional<Overhang> advance(const Overhang& st, const Word& u, const Word& v) {
	Word p = st.sign >= 0 ? st.over + u : u;
	Word q = st.sign < 0 ? st.over + v : v;
	if (p.size() >= q.size()) {
		if (p.compare(0, q.size(), q) != 0) {
			return std::nullopt;
		}
		Word rest = p.substr(q.size());
		return Overhang{rest, rest.empty() ? 0 : 1};
	}
	if (q.compare(0, p.size(), p) != 0) {
		return std::nullopt;
	}
	return Overhang{q.substr(p.size()), -1};
}

/// Visits every family in search order until `visit` returns true.
bool for_each_family(const Shape& s, const std::function<bool(const ParametricAssignment&)>& visit) {
	ParametricAssignment current;
	current.variables = s.vars;
	std::function<bool(std::size_t, const Overhang&)> dfs = [&](std::size_t i, const Overhang& st) -> bool {
		if (st.over.size() >= s.total_symbols && !s.vars.empty()) {
			throw Error("internal: overhang exceeds the equation length");
		}
		if (i == s.vars.size()) {
			return st.sign == 0 && visit(current);
		}
		const std::string& x = s.vars[i];
		auto next_segment = [&](const Overhang& after) {
			auto nxt = advance(after, s.u[i + 1], s.v[i + 1]);
			return nxt && dfs(i + 1, *nxt);
		};
		if (st.sign == 0) {
			current.images[x] = ParametricImage{ParametricImage::Kind::unconstrained, {}, {}};
			return next_segment(st);
		}
		const Word& o = st.over;
		for (std::size_t r = 0; r < o.size(); ++r) {
			ParametricImage img{ParametricImage::Kind::periodic, o.substr(0, r), o.substr(r)};
			current.images[x] = img;
			if (next_segment(Overhang{img.beta + img.alpha, st.sign})) {
				return true;
			}
		}
		return false;
	};
	auto start = advance(Overhang{}, s.u[0], s.v[0]);
	return start && dfs(0, *start);
}

/// Lengths base + step * mu (mu >= 0); for periodic images the exponent is
/// n_base + n_step * mu.
struct LengthOption {
	BigInt base;
	BigInt step;
	BigInt n_base;
	BigInt n_step;
};

bool subsumes(const LengthOption& big, const LengthOption& small) {
	if (big.step == 0) {
		return small.step == 0 && small.base == big.base;
	}
	if (small.base < big.base || (small.base - big.base) % big.step != 0) {
		return false;
	}
	return small.step % big.step == 0;
}

std::vector<LengthOption> dedup(const std::vector<LengthOption>& opts) {
	std::vector<LengthOption> out;
	for (std::size_t i = 0; i < opts.size(); ++i) {
		bool covered = false;
		for (std::size_t j = 0; j < opts.size() && !covered; ++j) {
			if (j == i) continue;
			// Among mutually subsuming options keep the earliest.
			covered = subsumes(opts[j], opts[i]) && (!subsumes(opts[i], opts[j]) || j < i);
		}
		if (!covered) {
			out.push_back(opts[i]);
		}
	}
	return out;
}

BigInt theta_value(const LinearConstraint& c, const std::map<std::string, BigInt>& lengths) {
	BigInt s = 0;
	for (const auto& [x, k] : c.coeffs) {
		s += BigInt(k) * lengths.at(x);
	}
	return s;
}

bool theta_holds(const LinearConstraint& c, const std::map<std::string, BigInt>& lengths) {
	BigInt s = theta_value(c, lengths);
	switch (c.rel) {
	case Relation::eq: return s == c.constant;
	case Relation::le: return s <= c.constant;
	case Relation::ge: return s >= c.constant;
	}
	return false;
}

} // namespace

std::vector<ParametricAssignment> enumerate_parametric_solutions(const Equation& e) {
	if (!check_strictly_regular_ordered(e)) {
		throw Error("equation is not strictly regular-ordered: " + e.to_string());
	}
	std::vector<ParametricAssignment> out;
	for_each_family(decompose(e), [&](const ParametricAssignment& f) {
		out.push_back(f);
		return false;
	});
	return out;
}

RegordResult solve_regular_ordered(const Equation& e, const LengthConstraintSystem& theta,
								   const std::map<std::string, automata::Dfa>& regular, const Alphabet& alphabet,
								   std::size_t max_expand) {
	if (!e.positive) {
		throw Error("the regular-ordered procedure needs a positive equation");
	}
	if (!check_strictly_regular_ordered(e)) {
		throw Error("equation is not strictly regular-ordered: " + e.to_string());
	}
	for (char c : e.terminals()) {
		if (!alphabet.contains(c)) {
			throw Error(std::string("letter '") + c + "' is not in the alphabet");
		}
	}
	for (const auto& [x, m] : regular) {
		if (!(m.alphabet() == alphabet)) {
			throw Error("the automaton for " + x + " uses a different alphabet");
		}
	}

	const Shape shape = decompose(e);
	std::vector<std::string> vars = shape.vars;
	auto declare = [&](const std::string& x) {
		if (std::find(vars.begin(), vars.end(), x) == vars.end()) {
			vars.push_back(x);
		}
	};
	for (const auto& c : theta) {
		for (const auto& [x, k] : c.coeffs) {
			declare(x);
		}
	}
	for (const auto& [x, m] : regular) {
		declare(x);
	}
	std::vector<bool> in_theta(vars.size(), false);
	for (std::size_t i = 0; i < vars.size(); ++i) {
		for (const auto& c : theta) {
			auto it = c.coeffs.find(vars[i]);
			in_theta[i] = in_theta[i] || (it != c.coeffs.end() && it->second != 0);
		}
	}

	const automata::Dfa universal = automata::Dfa::universal(alphabet);
	auto dfa_of = [&](const std::string& x) -> const automata::Dfa& {
		auto it = regular.find(x);
		return it != regular.end() ? it->second : universal;
	};
	std::map<std::string, automata::LengthSpec> length_specs;
	std::map<std::tuple<std::string, Word, Word>, automata::PeriodicIntersectionSpec> periodic_specs;
	std::map<std::string, std::optional<std::vector<BigInt>>> memo;

	RegordResult out;
	out.identical_sides = e.lhs == e.rhs;
	out.solve.verdict = Verdict::unsat;
	if (out.identical_sides) {
		out.solve.notes.push_back("identical sides");
	}

	ParametricAssignment full;
	full.variables = vars;
	auto visit = [&](const ParametricAssignment& fam) -> bool {
		for (const auto& x : vars) {
			auto it = fam.images.find(x);
			full.images[x] = it != fam.images.end()
								 ? it->second
								 : ParametricImage{ParametricImage::Kind::unconstrained, {}, {}};
		}
		std::vector<std::vector<LengthOption>> options;
		for (const auto& x : vars) {
			const auto& img = full.images[x];
			const auto& m = dfa_of(x);
			std::vector<LengthOption> opts;
			if (img.kind == ParametricImage::Kind::unconstrained) {
				auto [it, fresh] = length_specs.try_emplace(x);
				if (fresh) {
					it->second = automata::accepted_lengths(m);
				}
				const auto& ls = it->second;
				for (auto l : ls.singles) {
					opts.push_back({l, 0, 0, 0});
				}
				for (auto p : ls.residues) {
					opts.push_back({BigInt(p + ls.period), ls.period, 0, 0});
				}
			} else {
				const BigInt block = img.alpha.size() + img.beta.size();
				const BigInt a = img.alpha.size();
				if (m.accepts(img.alpha)) {
					opts.push_back({a, 0, 0, 0});
				}
				auto key = std::make_tuple(x, img.alpha, img.beta);
				auto [it, fresh] = periodic_specs.try_emplace(key);
				if (fresh) {
					it->second = automata::periodic_intersection(m, img.alpha, img.beta);
				}
				const auto& ps = it->second;
				for (auto sidx : ps.singles) {
					opts.push_back({block * sidx + a, 0, sidx, 0});
				}
				for (auto p : ps.residues) {
					const BigInt n0 = p + ps.period;
					opts.push_back({block * n0 + a, block * ps.period, n0, ps.period});
				}
			}
			opts = dedup(opts);
			if (opts.empty()) {
				return false;
			}
			options.push_back(std::move(opts));
		}

		std::vector<std::size_t> choice(vars.size(), 0);
		std::function<bool(std::size_t)> pick = [&](std::size_t i) -> bool {
			if (i < vars.size()) {
				const std::size_t limit = in_theta[i] ? options[i].size() : 1;
				for (std::size_t c = 0; c < limit; ++c) {
					choice[i] = c;
					if (pick(i + 1)) {
						return true;
					}
				}
				return false;
			}
			// Unknowns: one mu per chosen progression, in variable order.
			std::vector<std::string> mus;
			std::vector<int> mu_of(vars.size(), -1);
			for (std::size_t k = 0; k < vars.size(); ++k) {
				if (options[k][choice[k]].step != 0) {
					mu_of[k] = static_cast<int>(mus.size());
					mus.push_back("mu_" + vars[k]);
				}
			}
			diophantine::DiophantineSystem sys(mus);
			std::ostringstream key;
			for (const auto& c : theta) {
				diophantine::Constraint row;
				row.coeffs.assign(mus.size(), 0);
				row.rel = c.rel;
				row.constant = c.constant;
				for (std::size_t k = 0; k < vars.size(); ++k) {
					auto it = c.coeffs.find(vars[k]);
					if (it == c.coeffs.end()) continue;
					const auto& opt = options[k][choice[k]];
					row.constant -= BigInt(it->second) * opt.base;
					if (mu_of[k] >= 0) {
						row.coeffs[mu_of[k]] += BigInt(it->second) * opt.step;
					}
				}
				key << static_cast<int>(row.rel) << ':' << row.constant;
				for (const auto& v : row.coeffs) key << ',' << v;
				key << ';';
				sys.constraints.push_back(std::move(row));
			}
			auto [mit, fresh] = memo.try_emplace(key.str());
			if (fresh) {
				auto sol = diophantine::solve_nonneg(sys);
				if (sol.sat) mit->second = sol.values;
			}
			if (!mit->second) {
				return false;
			}
			const auto& mu = *mit->second;
			for (std::size_t k = 0; k < vars.size(); ++k) {
				const auto& opt = options[k][choice[k]];
				const BigInt m = mu_of[k] >= 0 ? mu[mu_of[k]] : BigInt(0);
				out.lengths[vars[k]] = opt.base + opt.step * m;
				if (full.images[vars[k]].kind == ParametricImage::Kind::periodic) {
					out.exponents[vars[k]] = opt.n_base + opt.n_step * m;
				}
			}
			return true;
		};
		if (!pick(0)) {
			return false;
		}
		out.family = full;
		return true;
	};

	if (!for_each_family(shape, visit)) {
		out.family = {};
		return out;
	}

	// Model, classification, verification.
	out.solve.verdict = Verdict::sat;
	bool all_expanded = true;
	for (const auto& x : vars) {
		const auto& img = out.family.images.at(x);
		const BigInt& len = out.lengths.at(x);
		if (img.kind == ParametricImage::Kind::unconstrained) {
			out.classification[x] = Overlap::unconstrained;
			if (len <= max_expand) {
				auto w = dfa_of(x).witness_of_length(len.convert_to<std::size_t>());
				if (!w) {
					throw Error("internal: no accepted word of the chosen length for " + x);
				}
				out.solve.model.set(x, *w);
			} else {
				all_expanded = false;
				out.solve.notes.push_back("image of " + x + " has length " + len.str() + ", beyond the expansion limit");
			}
			continue;
		}
		const BigInt& n = out.exponents.at(x);
		out.classification[x] = n >= 1 ? Overlap::overlapping : Overlap::non_overlapping;
		CompressedImage ci{img.alpha, img.beta, n};
		out.solve.compressed[x] = ci;
		if (auto w = ci.expand(max_expand)) {
			out.solve.model.set(x, *w);
		} else {
			all_expanded = false;
		}
	}
	for (const auto& c : theta) {
		if (!theta_holds(c, out.lengths)) {
			throw Error("internal: model violates " + c.to_string());
		}
	}
	if (all_expanded) {
		if (apply(e.lhs, out.solve.model) != apply(e.rhs, out.solve.model)) {
			throw Error("internal: model does not solve " + e.to_string());
		}
		for (const auto& [x, m] : regular) {
			if (!m.accepts(out.solve.model.at(x))) {
				throw Error("internal: image of " + x + " is rejected by its automaton");
			}
		}
	} else {
		for (const auto& [x, m] : regular) {
			const auto& img = out.family.images.at(x);
			if (img.kind == ParametricImage::Kind::periodic && !out.solve.model.contains(x)) {
				const BigInt& n = out.exponents.at(x);
				if (!automata::periodic_intersection(m, img.alpha, img.beta).contains(n)) {
					throw Error("internal: image of " + x + " is rejected by its automaton");
				}
			}
		}
	}
	return out;
}

} // namespace wordeq::regord
