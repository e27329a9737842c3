#pragma once

#include "wordeq/automata.hpp"
#include "wordeq/core.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace wordeq::testing {

inline Pattern pat(std::string_view text, std::string_view alphabet = "ab") {
	return Pattern::parse(text, Alphabet(alphabet));
}

inline Equation eqn(std::string_view lhs, std::string_view rhs, std::string_view alphabet = "ab") {
	return {pat(lhs, alphabet), pat(rhs, alphabet), true};
}

inline std::string random_word(std::mt19937& rng, const Alphabet& a, std::size_t max_len) {
	std::uniform_int_distribution<std::size_t> len(0, max_len);
	std::uniform_int_distribution<std::size_t> letter(0, a.size() - 1);
	std::string w;
	for (std::size_t n = len(rng); n > 0; --n) {
		w += a[letter(rng)];
	}
	return w;
}

inline automata::Dfa random_dfa(std::mt19937& rng, const Alphabet& a, std::size_t max_states) {
	std::uniform_int_distribution<std::size_t> count(1, max_states);
	const std::size_t n = count(rng);
	std::uniform_int_distribution<std::size_t> state(0, n - 1);
	std::bernoulli_distribution coin(0.4);
	std::vector<automata::State> accepting;
	for (std::size_t s = 0; s < n; ++s) {
		if (coin(rng)) {
			accepting.push_back(s);
		}
	}
	std::vector<automata::Dfa::Transition> ts;
	for (std::size_t s = 0; s < n; ++s) {
		for (char c : a.letters()) {
			ts.push_back({s, c, state(rng)});
		}
	}
	return automata::Dfa::from_partial(a, n, 0, accepting, ts);
}

/// DFA of (ab)*a over {a,b}.
inline automata::Dfa ab_star_a() {
	return automata::Dfa::from_partial(Alphabet("ab"), 2, 0, {1}, {{0, 'a', 1}, {1, 'b', 0}});
}

/// Every pattern over the letters of `a` and the variables `vars` with at
/// most `max_len` symbols.
inline std::vector<Pattern> patterns_up_to(const Alphabet& a, const std::vector<std::string>& vars, std::size_t max_len) {
	std::vector<Symbol> symbols;
	for (char c : a.letters()) symbols.push_back(Symbol::terminal(c));
	for (const auto& v : vars) symbols.push_back(Symbol::variable(v));
	std::vector<Pattern> out{Pattern{}};
	std::size_t from = 0;
	for (std::size_t len = 1; len <= max_len; ++len) {
		const std::size_t to = out.size();
		for (std::size_t i = from; i < to; ++i) {
			for (const auto& s : symbols) {
				Pattern p = out[i];
				p.append(s);
				out.push_back(std::move(p));
			}
		}
		from = to;
	}
	return out;
}

/// Symbol sequences of length at most `max_len` over the letters of `a` and
/// variables x1, x2, ... introduced in order, so that every pattern pair is
/// represented up to renaming. Calls `visit` with each split (U, V).
inline void for_each_canonical_pair(const Alphabet& a, std::size_t max_len,
									const std::function<void(const Pattern&, const Pattern&)>& visit) {
	std::vector<Symbol> seq;
	std::function<void(std::size_t)> grow = [&](std::size_t used) {
		for (std::size_t cut = 0; cut <= seq.size(); ++cut) {
			visit(Pattern({seq.begin(), seq.begin() + cut}), Pattern({seq.begin() + cut, seq.end()}));
		}
		if (seq.size() == max_len) return;
		for (char c : a.letters()) {
			seq.push_back(Symbol::terminal(c));
			grow(used);
			seq.pop_back();
		}
		for (std::size_t v = 1; v <= used + 1; ++v) {
			seq.push_back(Symbol::variable("x" + std::to_string(v)));
			grow(std::max(used, v));
			seq.pop_back();
		}
	};
	grow(0);
}

inline Pattern random_pattern(std::mt19937& rng, const Alphabet& a, const std::vector<std::string>& vars,
							  std::size_t len) {
	std::uniform_int_distribution<std::size_t> pick(0, a.size() + vars.size() - 1);
	Pattern p;
	for (std::size_t i = 0; i < len; ++i) {
		const std::size_t k = pick(rng);
		p.append(k < a.size() ? Symbol::terminal(a[k]) : Symbol::variable(vars[k - a.size()]));
	}
	return p;
}

/// Exists-forall sentence over {a, b}: one or two blocks of up to two
/// variables, a positive matrix of one to three equations, at most
/// `max_symbols` symbols in total.
inline QuantifiedFormula random_sigma2_positive(std::mt19937& rng, std::size_t max_symbols = 8) {
	const Alphabet ab("ab");
	std::uniform_int_distribution<int> one_two(1, 2);
	std::vector<std::string> xs, ys;
	for (int i = one_two(rng); i > 0; --i) xs.push_back("x" + std::to_string(xs.size() + 1));
	for (int i = one_two(rng); i > 0; --i) ys.push_back("y" + std::to_string(ys.size() + 1));
	std::vector<std::string> all = xs;
	all.insert(all.end(), ys.begin(), ys.end());
	std::uniform_int_distribution<std::size_t> count(1, 3);
	const std::size_t n = count(rng);
	std::vector<Formula> atoms;
	std::size_t left = max_symbols;
	for (std::size_t i = 0; i < n && left >= 2; ++i) {
		std::uniform_int_distribution<std::size_t> total(2, std::min<std::size_t>(left, max_symbols / n + 2));
		const std::size_t t = total(rng);
		std::uniform_int_distribution<std::size_t> cut(0, t);
		const std::size_t l = cut(rng);
		atoms.push_back(Formula::make_atom(Equation{random_pattern(rng, ab, all, l), random_pattern(rng, ab, all, t - l), true}));
		left -= t;
	}
	Formula m = atoms.front();
	std::bernoulli_distribution coin(0.5);
	for (std::size_t i = 1; i < atoms.size(); ++i) {
		m = coin(rng) ? Formula::conj({m, atoms[i]}) : Formula::disj({m, atoms[i]});
	}
	return QuantifiedFormula::exists_forall(xs, ys, m);
}

/// Strictly regular-ordered equation over {a, b} with variables x1..xn in the
/// same order on both sides and |UV| <= max_symbols. Half of the equations
/// are planted: the right side is cut out of h(U) for a random h, so they
/// have a solution.
inline Equation random_regular_ordered(std::mt19937& rng, std::size_t max_vars = 3, std::size_t max_symbols = 10) {
	const Alphabet ab("ab");
	std::uniform_int_distribution<std::size_t> nvars(1, max_vars);
	std::uniform_int_distribution<std::size_t> seg(0, 2);
	std::uniform_int_distribution<int> letter(0, 1);
	auto word = [&](std::size_t l) {
		Word w;
		for (std::size_t i = 0; i < l; ++i) w += ab[letter(rng)];
		return w;
	};
	for (;;) {
		const std::size_t n = nvars(rng);
		std::vector<Word> u(n + 1), v(n + 1);
		for (auto& w : u) w = word(seg(rng));
		if (std::bernoulli_distribution(0.5)(rng)) {
			for (auto& w : v) w = word(seg(rng));
		} else {
			std::vector<Word> h(n);
			for (auto& w : h) w = word(seg(rng));
			Word target = u[0];
			std::vector<std::size_t> at(n);
			for (std::size_t i = 0; i < n; ++i) {
				at[i] = target.size();
				target += h[i] + u[i + 1];
			}
			// Place each image at a random occurrence that leaves room for
			// the rest; the original position always qualifies.
			std::size_t pos = 0;
			for (std::size_t i = 0; i < n; ++i) {
				std::vector<std::size_t> options;
				for (std::size_t p = pos; p <= at[i]; ++p) {
					if (target.compare(p, h[i].size(), h[i]) == 0) options.push_back(p);
				}
				const std::size_t p = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
				v[i] = target.substr(pos, p - pos);
				pos = p + h[i].size();
			}
			v[n] = target.substr(pos);
		}
		std::size_t total = 2 * n;
		for (const auto& w : u) total += w.size();
		for (const auto& w : v) total += w.size();
		if (total > max_symbols) continue;
		Pattern lhs = Pattern::word(u[0]);
		Pattern rhs = Pattern::word(v[0]);
		for (std::size_t i = 1; i <= n; ++i) {
			const Symbol x = Symbol::variable("x" + std::to_string(i));
			lhs.append(x).append_word(u[i]);
			rhs.append(x).append_word(v[i]);
		}
		return Equation{lhs, rhs, true};
	}
}

/// Universal bound that reaches the distinguishing substitution for every
/// existential assignment with images of length at most `ex_bound`.
inline std::size_t distinguishing_bound(const QuantifiedFormula& phi, std::size_t ex_bound) {
	const auto xs = phi.existential_variables();
	std::size_t longest = 0;
	for (const Atom* atom : phi.matrix.atoms()) {
		const auto& e = std::get<Equation>(*atom);
		std::size_t symbols = e.lhs.size() + e.rhs.size();
		for (const auto& x : xs) {
			symbols += (e.lhs.count_variable(x) + e.rhs.count_variable(x)) * (ex_bound > 0 ? ex_bound - 1 : 0);
		}
		longest = std::max(longest, symbols);
	}
	const std::size_t k = longest + 1;
	return k + phi.universal_variables().size() + 2;
}

} // namespace wordeq::testing
