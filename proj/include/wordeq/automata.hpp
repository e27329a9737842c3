#pragma once

#include "wordeq/core.hpp"

#include <cstddef>
#include <vector>

namespace wordeq::automata {

using State = std::size_t;

/// Complete DFA over a declared alphabet.
class Dfa {
public:
	struct Transition {
		State from;
		char letter;
		State to;
	};

	/// Builds a total DFA. Missing (state, letter) pairs are routed to an added
	/// rejecting sink; the sink is only added when some pair is missing.
	static Dfa from_partial(Alphabet alphabet, std::size_t state_count, State initial,
							const std::vector<State>& accepting, const std::vector<Transition>& transitions);

	/// One accepting state looping on every letter.
	static Dfa universal(Alphabet alphabet);
	/// One rejecting state looping on every letter.
	static Dfa empty(Alphabet alphabet);

	const Alphabet& alphabet() const noexcept { return alphabet_; }
	std::size_t state_count() const noexcept { return accepting_.size(); }
	State initial() const noexcept { return initial_; }
	bool is_accepting(State s) const { return accepting_.at(s); }
	State next(State s, char letter) const;
	/// Runs the word from `s`; throws on a foreign letter.
	State run(State s, std::string_view w) const;

	bool accepts(std::string_view w) const { return is_accepting(run(initial_, w)); }

	/// States from which an accepting state is reachable.
	std::vector<bool> coaccessible() const;
	/// Shortest, then lexicographically least, accepted word of the given
	/// length, if any.
	std::optional<Word> witness_of_length(std::size_t length) const;

private:
	Alphabet alphabet_;
	State initial_ = 0;
	std::vector<bool> accepting_;
	std::vector<State> delta_;   // delta_[s * |A| + letter index]
};

inline bool accepts(const Dfa& m, std::string_view w) { return m.accepts(w); }

/// Membership of (alpha beta)^s alpha in L(M) for s >= 1:
///   s in `singles`  or  s = mu * period + p  for some mu >= 1 and p in `residues`.
/// singles holds the accepted indices 1..entry+period, residues the accepted
/// indices in (entry, entry+period], where entry is the index at which the run
/// first enters its cycle. Both sets are bounded by the state count n.
struct PeriodicIntersectionSpec {
	std::size_t period = 1;           // q
	std::vector<std::size_t> residues; // P, ascending
	std::vector<std::size_t> singles;  // S, ascending
	std::size_t state_count = 0;       // n

	bool contains(const BigInt& s) const;
	bool empty() const noexcept { return residues.empty() && singles.empty(); }

	bool operator==(const PeriodicIntersectionSpec&) const = default;
};

PeriodicIntersectionSpec periodic_intersection(const Dfa& m, std::string_view alpha, std::string_view beta);

/// Same characterization for the set of lengths of words in L(M):
/// length l in the set iff l in singles (0-based, l <= entry+period) or
/// l = mu * period + p with mu >= 1 and p in residues.
struct LengthSpec {
	std::size_t period = 1;
	std::vector<std::size_t> residues;
	std::vector<std::size_t> singles;

	bool contains(const BigInt& l) const;
	bool empty() const noexcept { return residues.empty() && singles.empty(); }
};

LengthSpec accepted_lengths(const Dfa& m);

} // namespace wordeq::automata
