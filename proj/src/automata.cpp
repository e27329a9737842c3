#include "wordeq/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace wordeq::automata {

Dfa Dfa::from_partial(Alphabet alphabet, std::size_t state_count, State initial, const std::vector<State>& accepting,
					  const std::vector<Transition>& transitions) {
	if (state_count == 0) {
		throw Error("a DFA needs at least one state");
	}
	if (initial >= state_count) {
		throw Error("initial state " + std::to_string(initial) + " out of range");
	}
	constexpr State missing = static_cast<State>(-1);
	const std::size_t k = alphabet.size();
	Dfa m;
	m.alphabet_ = std::move(alphabet);
	m.initial_ = initial;
	m.accepting_.assign(state_count, false);
	m.delta_.assign(state_count * k, missing);
	for (State s : accepting) {
		if (s >= state_count) {
			throw Error("accepting state " + std::to_string(s) + " out of range");
		}
		m.accepting_[s] = true;
	}
	for (const auto& t : transitions) {
		if (t.from >= state_count || t.to >= state_count) {
			throw Error("transition state out of range");
		}
		auto& slot = m.delta_[t.from * k + m.alphabet_.index_of(t.letter)];
		if (slot != missing && slot != t.to) {
			throw Error("nondeterministic transition from state " + std::to_string(t.from) + " on '" + t.letter + "'");
		}
		slot = t.to;
	}
	if (std::find(m.delta_.begin(), m.delta_.end(), missing) != m.delta_.end()) {
		State sink = state_count;
		m.accepting_.push_back(false);
		for (auto& d : m.delta_) {
			if (d == missing) {
				d = sink;
			}
		}
		m.delta_.resize(m.delta_.size() + k, sink);
	}
	return m;
}

Dfa Dfa::universal(Alphabet alphabet) {
	Dfa m;
	m.delta_.assign(alphabet.size(), 0);
	m.alphabet_ = std::move(alphabet);
	m.accepting_ = {true};
	return m;
}

Dfa Dfa::empty(Alphabet alphabet) {
	Dfa m = universal(std::move(alphabet));
	m.accepting_ = {false};
	return m;
}

State Dfa::next(State s, char letter) const {
	return delta_[s * alphabet_.size() + alphabet_.index_of(letter)];
}

State Dfa::run(State s, std::string_view w) const {
	for (char c : w) {
		s = next(s, c);
	}
	return s;
}

std::vector<bool> Dfa::coaccessible() const {
	const std::size_t n = state_count();
	const std::size_t k = alphabet_.size();
	std::vector<bool> live = accepting_;
	bool changed = true;
	while (changed) {
		changed = false;
		for (State s = 0; s < n; ++s) {
			if (live[s]) {
				continue;
			}
			for (std::size_t a = 0; a < k; ++a) {
				if (live[delta_[s * k + a]]) {
					live[s] = true;
					changed = true;
					break;
				}
			}
		}
	}
	return live;
}

std::optional<Word> Dfa::witness_of_length(std::size_t length) const {
	const std::size_t n = state_count();
	const std::size_t k = alphabet_.size();
	// can[r][s]: an accepting state is reachable from s in exactly r steps.
	std::vector<std::vector<bool>> can(length + 1, std::vector<bool>(n, false));
	can[0] = accepting_;
	for (std::size_t r = 1; r <= length; ++r) {
		for (State s = 0; s < n; ++s) {
			for (std::size_t a = 0; a < k && !can[r][s]; ++a) {
				can[r][s] = can[r - 1][delta_[s * k + a]];
			}
		}
	}
	if (!can[length][initial_]) {
		return std::nullopt;
	}
	Word w;
	State s = initial_;
	for (std::size_t r = length; r > 0; --r) {
		for (std::size_t a = 0; a < k; ++a) {
			State t = delta_[s * k + a];
			if (can[r - 1][t]) {
				w += alphabet_[a];
				s = t;
				break;
			}
		}
	}
	return w;
}

// ---------------------------------------------------------------------------

namespace {

bool in_progression(const BigInt& s, std::size_t period, const std::vector<std::size_t>& residues) {
	for (std::size_t p : residues) {
		if (s > p && (s - p) % period == 0) {
			return true;
		}
	}
	return false;
}

} // namespace

bool PeriodicIntersectionSpec::contains(const BigInt& s) const {
	if (s < 1) {
		return false;
	}
	if (std::find(singles.begin(), singles.end(), s) != singles.end()) {
		return true;
	}
	return in_progression(s, period, residues);
}

bool LengthSpec::contains(const BigInt& l) const {
	if (l < 0) {
		return false;
	}
	if (std::find(singles.begin(), singles.end(), l) != singles.end()) {
		return true;
	}
	return in_progression(l, period, residues);
}

PeriodicIntersectionSpec periodic_intersection(const Dfa& m, std::string_view alpha, std::string_view beta) {
	if (alpha.empty() && beta.empty()) {
		throw Error("periodic_intersection needs a nonempty period word alpha beta");
	}
	const std::string block = std::string(alpha) + std::string(beta);
	const std::size_t n = m.state_count();

	// c[i]: state after (alpha beta)^i. Among c[0..n] some state repeats.
	std::vector<State> c{m.initial()};
	std::map<State, std::size_t> first_seen{{m.initial(), 0}};
	std::size_t entry = 0;
	std::size_t period = 0;
	for (std::size_t i = 1;; ++i) {
		State s = m.run(c.back(), block);
		auto [it, fresh] = first_seen.emplace(s, i);
		if (!fresh) {
			entry = it->second;
			period = i - it->second;
			break;
		}
		c.push_back(s);
	}

	PeriodicIntersectionSpec spec;
	spec.period = period;
	spec.state_count = n;
	for (std::size_t i = 1; i <= entry + period; ++i) {
		State ci = i < c.size() ? c[i] : c[entry];
		if (m.is_accepting(m.run(ci, alpha))) {
			spec.singles.push_back(i);
			if (i > entry) {
				spec.residues.push_back(i);
			}
		}
	}
	return spec;
}

LengthSpec accepted_lengths(const Dfa& m) {
	const std::size_t n = m.state_count();
	const auto& letters = m.alphabet().letters();
	// Sequence of reachable state sets after exactly l letters; deterministic in
	// the set, so it is eventually periodic.
	using Set = std::vector<bool>;
	std::vector<Set> seq;
	std::map<Set, std::size_t> first_seen;
	Set cur(n, false);
	cur[m.initial()] = true;
	std::size_t entry = 0;
	std::size_t period = 0;
	for (std::size_t l = 0;; ++l) {
		auto [it, fresh] = first_seen.emplace(cur, l);
		if (!fresh) {
			entry = it->second;
			period = l - it->second;
			break;
		}
		seq.push_back(cur);
		Set nxt(n, false);
		for (State s = 0; s < n; ++s) {
			if (cur[s]) {
				for (char a : letters) {
					nxt[m.next(s, a)] = true;
				}
			}
		}
		cur = std::move(nxt);
	}
	auto accepting = [&](const Set& set) {
		for (State s = 0; s < n; ++s) {
			if (set[s] && m.is_accepting(s)) {
				return true;
			}
		}
		return false;
	};
	LengthSpec spec;
	spec.period = period;
	for (std::size_t l = 0; l <= entry + period; ++l) {
		const Set& set = l < seq.size() ? seq[l] : seq[entry + (l - entry) % period];
		if (accepting(set)) {
			spec.singles.push_back(l);
			if (l > entry) {
				spec.residues.push_back(l);
			}
		}
	}
	return spec;
}

} // namespace wordeq::automata
