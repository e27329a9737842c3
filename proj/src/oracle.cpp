#include "wordeq/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace wordeq::oracle {

namespace {

// Kleene truth values, ordered so that conjunction is min and disjunction max.
enum Tri : std::uint8_t { F = 0, U = 1, T = 2 };

struct BudgetExceeded {};

struct Ref {
	std::int32_t var;      // -1 for a terminal
	std::uint32_t value;   // offset into the image, or the letter

	bool operator==(const Ref&) const = default;
};

struct CompiledAtom {
	enum class Kind : std::uint8_t { equation, linear, predicate } kind = Kind::equation;
	const Atom* source = nullptr;
	std::vector<int> vars;   // distinct variable indices
	bool has_open = false;

	// equation
	std::vector<Ref> lhs, rhs;                   // symbol-level; var refs carry offset 0
	std::vector<std::pair<int, std::int64_t>> net;  // (var, |U|_x - |V|_x)
	std::int64_t const_diff = 0;
	bool positive = true;
	bool identical = false;
	std::vector<Ref> lhs_pos, rhs_pos;           // position-level, rebuilt per length tuple

	// linear
	std::vector<std::pair<int, std::int64_t>> coeffs;
	std::int64_t constant = 0;
	Relation rel = Relation::eq;

	// predicate
	std::vector<std::vector<Ref>> args;

	Tri length_value = U;
};

struct Node {
	Formula::Kind kind = Formula::Kind::conj;
	int atom = -1;
	std::vector<int> children;
};

class Search {
public:
	Search(const Formula& f, const std::vector<std::string>& vars, const std::map<std::string, std::size_t>& open,
		   const Alphabet& alphabet, const OracleOptions& options, std::size_t default_bound, std::uint64_t& nodes)
		: alphabet_(alphabet), options_(options), nodes_(nodes), enumerated_(vars.size()) {
		for (const auto& v : vars) {
			index_.emplace(v, names_.size());
			names_.push_back(v);
			auto it = options.variable_bounds.find(v);
			bounds_.push_back(it != options.variable_bounds.end() ? it->second : default_bound);
		}
		for (const auto& [v, b] : open) {
			if (index_.contains(v)) {
				continue;
			}
			index_.emplace(v, names_.size());
			names_.push_back(v);
			bounds_.push_back(b);
			if (options.domains.contains(v)) {
				prune_open_ = false;
			}
		}
		for (const auto& v : f.variables()) {
			if (!index_.contains(v)) {
				throw Error("variable " + v + " is not quantified");
			}
		}
		for (std::size_t v = 0; v < names_.size(); ++v) {
			auto it = options.domains.find(names_[v]);
			domains_.push_back(it != options.domains.end() ? &it->second : nullptr);
			auto rt = options.regular.find(names_[v]);
			regular_.push_back(rt != options.regular.end() ? &rt->second : nullptr);
			viable_.push_back(regular_.back() ? viability(*regular_.back(), bounds_[v]) : Viability{});
			if (v >= vars.size() && regular_.back()) {
				prune_open_ = false;
			}
		}
		root_ = compile(f);
		const std::size_t total = names_.size();
		lo_.assign(total, 0);
		hi_.assign(total, 0);
		len_.assign(total, 0);
		filled_.assign(total, 0);
		buf_.assign(total, std::string());
		states_.assign(total, std::vector<automata::State>());
		inert_.assign(total, false);
		for (std::size_t i = enumerated_; i < total; ++i) {
			hi_[i] = bounds_[i];
		}
	}

	std::optional<Substitution> run(const std::function<bool(const Substitution&)>& accept) {
		accept_ = &accept;
		std::size_t sum = 0;
		for (std::size_t i = 0; i < enumerated_; ++i) {
			sum += bounds_[i];
		}
		suffix_.assign(enumerated_ + 1, 0);
		for (std::size_t i = enumerated_; i > 0; --i) {
			suffix_[i - 1] = suffix_[i] + bounds_[i - 1];
		}
		for (std::size_t t = 0; t <= sum; ++t) {
			if (lengths(0, t)) {
				return found_;
			}
		}
		return std::nullopt;
	}

private:
	/// viable[r][s]: some word of length r leads from s to acceptance.
	using Viability = std::vector<std::vector<bool>>;

	static Viability viability(const automata::Dfa& m, std::size_t bound) {
		Viability t(bound + 1, std::vector<bool>(m.state_count(), false));
		for (automata::State s = 0; s < m.state_count(); ++s) {
			t[0][s] = m.is_accepting(s);
		}
		for (std::size_t r = 1; r <= bound; ++r) {
			for (automata::State s = 0; s < m.state_count(); ++s) {
				for (char c : m.alphabet().letters()) {
					if (t[r - 1][m.next(s, c)]) {
						t[r][s] = true;
						break;
					}
				}
			}
		}
		return t;
	}

	bool length_viable(std::size_t v, std::size_t len) const {
		return !regular_[v] || (len < viable_[v].size() && viable_[v][len][regular_[v]->initial()]);
	}

	int compile(const Formula& f) {
		Node n;
		n.kind = f.kind;
		if (f.is_atom()) {
			n.atom = static_cast<int>(atoms_.size());
			atoms_.push_back(compile_atom(*f.atom));
		} else {
			for (const auto& c : f.children) {
				n.children.push_back(compile(c));
			}
		}
		nodes_tree_.push_back(std::move(n));
		return static_cast<int>(nodes_tree_.size() - 1);
	}

	std::vector<Ref> refs(const Pattern& p, CompiledAtom& a) {
		std::vector<Ref> out;
		for (const auto& s : p) {
			if (s.is_terminal()) {
				out.push_back({-1, static_cast<std::uint32_t>(static_cast<unsigned char>(s.letter()))});
			} else {
				int v = static_cast<int>(index_.at(s.name));
				out.push_back({v, 0});
				note_var(a, v);
			}
		}
		return out;
	}

	void note_var(CompiledAtom& a, int v) {
		if (std::find(a.vars.begin(), a.vars.end(), v) == a.vars.end()) {
			a.vars.push_back(v);
			if (static_cast<std::size_t>(v) >= enumerated_) {
				a.has_open = true;
			}
		}
	}

	CompiledAtom compile_atom(const Atom& atom) {
		CompiledAtom a;
		a.source = &atom;
		if (const auto* e = std::get_if<Equation>(&atom)) {
			a.kind = CompiledAtom::Kind::equation;
			a.positive = e->positive;
			a.identical = e->lhs == e->rhs;
			a.lhs = refs(e->lhs, a);
			a.rhs = refs(e->rhs, a);
			std::map<int, std::int64_t> net;
			for (const auto& r : a.lhs) {
				if (r.var < 0) {
					++a.const_diff;
				} else {
					++net[r.var];
				}
			}
			for (const auto& r : a.rhs) {
				if (r.var < 0) {
					--a.const_diff;
				} else {
					--net[r.var];
				}
			}
			for (auto [v, c] : net) {
				if (c != 0) {
					a.net.emplace_back(v, c);
				}
			}
		} else if (const auto* l = std::get_if<LinearConstraint>(&atom)) {
			a.kind = CompiledAtom::Kind::linear;
			for (const auto& [name, c] : l->coeffs) {
				int v = static_cast<int>(index_.at(name));
				note_var(a, v);
				a.coeffs.emplace_back(v, c);
			}
			a.constant = l->constant;
			a.rel = l->rel;
		} else {
			const auto& p = std::get<PredicateAtom>(atom);
			a.kind = CompiledAtom::Kind::predicate;
			for (const auto& arg : p.args) {
				a.args.push_back(refs(arg, a));
			}
		}
		return a;
	}

	static Tri flip(Tri t, bool positive) { return positive ? t : static_cast<Tri>(2 - t); }

	Tri length_eval(const CompiledAtom& a) const {
		switch (a.kind) {
		case CompiledAtom::Kind::equation: {
			if (a.identical) {
				return flip(T, a.positive);
			}
			std::int64_t lo = a.const_diff;
			std::int64_t hi = a.const_diff;
			for (auto [v, c] : a.net) {
				lo += c * static_cast<std::int64_t>(c > 0 ? lo_[v] : hi_[v]);
				hi += c * static_cast<std::int64_t>(c > 0 ? hi_[v] : lo_[v]);
			}
			if (lo > 0 || hi < 0) {
				return flip(F, a.positive);
			}
			if (a.vars.empty()) {
				return flip(a.lhs == a.rhs ? T : F, a.positive);
			}
			return U;
		}
		case CompiledAtom::Kind::linear: {
			std::int64_t lo = 0;
			std::int64_t hi = 0;
			for (auto [v, c] : a.coeffs) {
				lo += c * static_cast<std::int64_t>(c > 0 ? lo_[v] : hi_[v]);
				hi += c * static_cast<std::int64_t>(c > 0 ? hi_[v] : lo_[v]);
			}
			switch (a.rel) {
			case Relation::eq:
				if (a.constant < lo || a.constant > hi) return F;
				return lo == hi ? T : U;
			case Relation::le:
				if (hi <= a.constant) return T;
				return lo > a.constant ? F : U;
			case Relation::ge:
				if (lo >= a.constant) return T;
				return hi < a.constant ? F : U;
			}
			return U;
		}
		case CompiledAtom::Kind::predicate:
			return U;
		}
		return U;
	}

	bool known(const Ref& r) const { return r.var < 0 || r.value < filled_[r.var]; }
	char letter(const Ref& r) const {
		return r.var < 0 ? static_cast<char>(r.value) : buf_[r.var][r.value];
	}

	Tri letter_eval(const CompiledAtom& a) const {
		if (a.has_open || a.kind == CompiledAtom::Kind::linear) {
			return a.length_value;
		}
		if (a.length_value != U) {
			return a.length_value;
		}
		if (a.kind == CompiledAtom::Kind::equation) {
			bool unknown = false;
			for (std::size_t i = 0; i < a.lhs_pos.size(); ++i) {
				const Ref& l = a.lhs_pos[i];
				const Ref& r = a.rhs_pos[i];
				if (l == r) {
					continue;
				}
				if (known(l) && known(r)) {
					if (letter(l) != letter(r)) {
						return flip(F, a.positive);
					}
				} else {
					unknown = true;
				}
			}
			return unknown ? U : flip(T, a.positive);
		}
		for (int v : a.vars) {
			if (filled_[v] < len_[v]) {
				return U;
			}
		}
		std::vector<Word> words;
		for (const auto& arg : a.args) {
			Word w;
			for (const auto& r : arg) {
				if (r.var < 0) {
					w += static_cast<char>(r.value);
				} else {
					w += buf_[r.var].substr(0, len_[r.var]);
				}
			}
			words.push_back(std::move(w));
		}
		if (!options_.predicates) {
			throw Error("unknown predicate " + std::get<PredicateAtom>(*a.source).name);
		}
		return options_.predicates(std::get<PredicateAtom>(*a.source).name, words) ? T : F;
	}

	Tri eval(int node, const std::vector<Tri>& atom_values) const {
		const Node& n = nodes_tree_[node];
		switch (n.kind) {
		case Formula::Kind::atom:
			return atom_values[n.atom];
		case Formula::Kind::neg:
			return static_cast<Tri>(2 - eval(n.children.front(), atom_values));
		case Formula::Kind::conj: {
			Tri r = T;
			for (int c : n.children) {
				r = std::min(r, eval(c, atom_values));
				if (r == F) break;
			}
			return r;
		}
		case Formula::Kind::disj: {
			Tri r = F;
			for (int c : n.children) {
				r = std::max(r, eval(c, atom_values));
				if (r == T) break;
			}
			return r;
		}
		}
		return U;
	}

	Tri eval_lengths() {
		for (std::size_t i = 0; i < atoms_.size(); ++i) {
			values_[i] = length_eval(atoms_[i]);
		}
		return eval(root_, values_);
	}

	Tri eval_letters() {
		for (std::size_t i = 0; i < atoms_.size(); ++i) {
			values_[i] = letter_eval(atoms_[i]);
		}
		return eval(root_, values_);
	}

	bool prunes(Tri t) const { return t == F && prune_open_; }

	void tick() {
		++nodes_;
		if (options_.node_limit != 0 && nodes_ > options_.node_limit) {
			throw BudgetExceeded{};
		}
	}

	// Length tuples of the enumerated block with the given remaining total.
	bool lengths(std::size_t i, std::size_t remaining) {
		values_.resize(atoms_.size());
		if (i == enumerated_) {
			return remaining == 0 && length_leaf();
		}
		const std::size_t rest = suffix_[i + 1];
		const std::size_t from = remaining > rest ? remaining - rest : 0;
		const std::size_t to = std::min(bounds_[i], remaining);
		for (std::size_t l = from; l <= to; ++l) {
			tick();
			if (!length_viable(i, l)) {
				continue;
			}
			lo_[i] = hi_[i] = len_[i] = l;
			for (std::size_t j = i + 1; j < enumerated_; ++j) {
				lo_[j] = 0;
				hi_[j] = std::min(bounds_[j], remaining - l);
			}
			if (prunes(eval_lengths())) {
				continue;
			}
			if (lengths(i + 1, remaining - l)) {
				return true;
			}
		}
		return false;
	}

	void expand(const std::vector<Ref>& symbols, std::vector<Ref>& out) const {
		out.clear();
		for (const auto& r : symbols) {
			if (r.var < 0 || static_cast<std::size_t>(r.var) >= enumerated_) {
				out.push_back(r);
			} else {
				for (std::size_t k = 0; k < len_[r.var]; ++k) {
					out.push_back({r.var, static_cast<std::uint32_t>(k)});
				}
			}
		}
	}

	bool length_leaf() {
		for (auto& a : atoms_) {
			a.length_value = length_eval(a);
			if (a.kind == CompiledAtom::Kind::equation && !a.has_open && a.length_value == U) {
				expand(a.lhs, a.lhs_pos);
				expand(a.rhs, a.rhs_pos);
			}
		}
		order_.clear();
		for (std::size_t v = 0; v < enumerated_; ++v) {
			filled_[v] = 0;
			buf_[v].assign(len_[v], alphabet_.size() ? alphabet_[0] : 'a');
			if (regular_[v]) {
				states_[v].assign(len_[v] + 1, regular_[v]->initial());
			}
			if (len_[v] == 0 && domains_[v] && !(*domains_[v])("")) {
				return false;
			}
			for (std::size_t k = 0; k < len_[v]; ++k) {
				order_.push_back(v);
			}
		}
		mark_inert();
		if (prunes(eval_letters())) {
			return false;
		}
		return letters(0);
	}

	/// Variables whose letters no undecided atom inspects. Only used when the
	/// whole assignment is enumerated here, so acceptance depends on the
	/// formula alone.
	void mark_inert() {
		const bool allowed = enumerated_ == names_.size();
		for (std::size_t v = 0; v < enumerated_; ++v) {
			inert_[v] = allowed;
		}
		if (!allowed) {
			return;
		}
		for (const auto& a : atoms_) {
			if (a.kind == CompiledAtom::Kind::predicate) {
				for (int v : a.vars) inert_[v] = false;
			} else if (a.kind == CompiledAtom::Kind::equation && a.length_value == U) {
				for (std::size_t i = 0; i < a.lhs_pos.size(); ++i) {
					const Ref& l = a.lhs_pos[i];
					const Ref& r = a.rhs_pos[i];
					if (l == r) continue;
					if (l.var >= 0) inert_[l.var] = false;
					if (r.var >= 0) inert_[r.var] = false;
				}
			}
		}
	}

	/// Places letter c at the next free position of v; false when the image
	/// can no longer be completed.
	bool place(std::size_t v, std::size_t off, char c) {
		buf_[v][off] = c;
		filled_[v] = off + 1;
		if (regular_[v]) {
			const auto s = regular_[v]->next(states_[v][off], c);
			states_[v][off + 1] = s;
			if (!viable_[v][len_[v] - off - 1][s]) {
				return false;
			}
		}
		return !(filled_[v] == len_[v] && domains_[v] && !(*domains_[v])(buf_[v]));
	}

	/// Least admissible image of v at its current length.
	bool least_image(std::size_t v, std::size_t off) {
		if (off == len_[v]) {
			return true;
		}
		for (char c : alphabet_.letters()) {
			tick();
			if (place(v, off, c) && least_image(v, off + 1)) {
				return true;
			}
		}
		filled_[v] = off;
		return false;
	}

	bool letters(std::size_t k) {
		if (k < order_.size() && inert_[order_[k]]) {
			// The rest of the search does not depend on this image.
			const std::size_t v = order_[k];
			if (!least_image(v, 0)) {
				return false;
			}
			if (letters(k + len_[v])) {
				return true;
			}
			filled_[v] = 0;
			return false;
		}
		if (k == order_.size()) {
			Tri t = eval_letters();
			if (t == F && prune_open_) {
				return false;
			}
			if (t == U && enumerated_ == names_.size()) {
				return false;
			}
			Substitution h;
			for (std::size_t v = 0; v < enumerated_; ++v) {
				h.set(names_[v], buf_[v]);
			}
			if ((*accept_)(h)) {
				found_ = std::move(h);
				return true;
			}
			return false;
		}
		const std::size_t v = order_[k];
		const std::size_t off = filled_[v];
		for (char c : alphabet_.letters()) {
			tick();
			if (!place(v, off, c)) {
				continue;
			}
			if (k + 1 < order_.size() && prunes(eval_letters())) {
				continue;
			}
			if (letters(k + 1)) {
				return true;
			}
		}
		filled_[v] = off;
		return false;
	}

	const Alphabet& alphabet_;
	const OracleOptions& options_;
	std::uint64_t& nodes_;
	std::size_t enumerated_;
	std::map<std::string, std::size_t> index_;
	std::vector<std::string> names_;
	std::vector<std::size_t> bounds_;
	std::vector<const std::function<bool(std::string_view)>*> domains_;
	std::vector<const automata::Dfa*> regular_;
	std::vector<Viability> viable_;
	std::vector<std::vector<automata::State>> states_;
	std::vector<bool> inert_;
	bool prune_open_ = true;

	std::vector<CompiledAtom> atoms_;
	std::vector<Node> nodes_tree_;
	int root_ = -1;
	std::vector<Tri> values_;

	std::vector<std::size_t> lo_, hi_, len_, filled_, suffix_;
	std::vector<std::string> buf_;
	std::vector<std::size_t> order_;
	const std::function<bool(const Substitution&)>* accept_ = nullptr;
	std::optional<Substitution> found_;
};

std::optional<Substitution> search(const Formula& f, const std::vector<std::string>& vars,
								   const std::map<std::string, std::size_t>& open, const Alphabet& alphabet,
								   const OracleOptions& options, std::size_t bound, std::uint64_t& nodes,
								   const std::function<bool(const Substitution&)>& accept) {
	Search s(f, vars, open, alphabet, options, bound, nodes);
	return s.run(accept);
}

} // namespace

std::string_view to_string(BoundedKind k) {
	switch (k) {
	case BoundedKind::witness_found: return "witness_found";
	case BoundedKind::violation_found: return "violation_found";
	case BoundedKind::exhausted_no_witness: return "exhausted_no_witness";
	case BoundedKind::exhausted_no_violation: return "exhausted_no_violation";
	case BoundedKind::budget_exhausted: return "budget_exhausted";
	}
	return "budget_exhausted";
}

std::optional<Substitution> first_model(const Formula& f, const std::vector<std::string>& vars,
										const Alphabet& alphabet, const OracleOptions& options) {
	std::uint64_t nodes = 0;
	auto always = [](const Substitution&) { return true; };
	try {
		return search(f, vars, {}, alphabet, options, options.bound, nodes, always);
	} catch (const BudgetExceeded&) {
		return std::nullopt;
	}
}

BoundedVerdict bounded_check(const QuantifiedFormula& phi, const Alphabet& alphabet, std::size_t bound) {
	OracleOptions o;
	o.bound = bound;
	return bounded_check(phi, alphabet, o);
}

BoundedVerdict bounded_check(const QuantifiedFormula& phi, const Alphabet& alphabet, const OracleOptions& options) {
	phi.validate();
	std::vector<QuantifierBlock> blocks;
	for (const auto& b : phi.prefix) {
		if (b.variables.empty()) {
			continue;
		}
		if (!blocks.empty() && blocks.back().quantifier == b.quantifier) {
			blocks.back().variables.insert(blocks.back().variables.end(), b.variables.begin(), b.variables.end());
		} else {
			blocks.push_back(b);
		}
	}
	const bool exists_forall = blocks.size() == 2 && blocks[0].quantifier == Quantifier::exists;
	if (blocks.size() > 2 || (blocks.size() == 2 && !exists_forall)) {
		throw Error("bounded_check supports exists, forall and exists-forall prefixes only");
	}

	BoundedVerdict out;
	auto always = [](const Substitution&) { return true; };
	try {
		if (blocks.empty()) {
			out.kind = eval_formula(phi.matrix, Substitution{}, options.predicates) ? BoundedKind::witness_found
																				  : BoundedKind::exhausted_no_witness;
		} else if (blocks.size() == 1 && blocks[0].quantifier == Quantifier::exists) {
			auto h = search(phi.matrix, blocks[0].variables, {}, alphabet, options, options.bound, out.nodes, always);
			out.kind = h ? BoundedKind::witness_found : BoundedKind::exhausted_no_witness;
			if (h) out.assignment = std::move(*h);
		} else if (blocks.size() == 1) {
			auto h = search(Formula::negate(phi.matrix), blocks[0].variables, {}, alphabet, options, options.bound,
							out.nodes, always);
			out.kind = h ? BoundedKind::violation_found : BoundedKind::exhausted_no_violation;
			if (h) out.assignment = std::move(*h);
		} else {
			const std::size_t ub = options.universal_bound.value_or(options.bound);
			std::map<std::string, std::size_t> open;
			for (const auto& y : blocks[1].variables) {
				auto it = options.variable_bounds.find(y);
				open[y] = it != options.variable_bounds.end() ? it->second : ub;
			}
			auto no_violation = [&](const Substitution& ex) {
				Formula inner = Formula::negate(substitute(phi.matrix, ex));
				return !search(inner, blocks[1].variables, {}, alphabet, options, ub, out.nodes, always).has_value();
			};
			auto h = search(phi.matrix, blocks[0].variables, open, alphabet, options, options.bound, out.nodes,
							no_violation);
			out.kind = h ? BoundedKind::witness_found : BoundedKind::exhausted_no_witness;
			if (h) out.assignment = std::move(*h);
		}
	} catch (const BudgetExceeded&) {
		out.kind = BoundedKind::budget_exhausted;
		out.assignment = Substitution{};
	}
	return out;
}

} // namespace wordeq::oracle
