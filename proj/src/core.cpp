#include "wordeq/core.hpp"

#include <algorithm>
#include <sstream>

namespace wordeq {

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::string_view letters) : letters_(letters) {
	for (std::size_t i = 0; i < letters_.size(); ++i) {
		if (letters_.find(letters_[i], i + 1) != std::string::npos) {
			throw Error(std::string("duplicate letter '") + letters_[i] + "' in alphabet");
		}
	}
}

bool Alphabet::contains_word(std::string_view w) const noexcept {
	return std::all_of(w.begin(), w.end(), [this](char c) { return contains(c); });
}

std::size_t Alphabet::index_of(char c) const {
	auto pos = letters_.find(c);
	if (pos == std::string::npos) {
		throw Error(std::string("letter '") + c + "' is not in the alphabet \"" + letters_ + "\"");
	}
	return pos;
}

// ---------------------------------------------------------------------------
// Symbol / Pattern

Symbol Symbol::variable(std::string v) {
	if (v.empty()) {
		throw Error("variable names must be nonempty");
	}
	return {Kind::variable, std::move(v)};
}

Pattern Pattern::word(std::string_view w) {
	Pattern p;
	p.append_word(w);
	return p;
}

Pattern Pattern::parse(std::string_view text, const Alphabet& alphabet) {
	Pattern p;
	std::size_t i = 0;
	while (i < text.size()) {
		while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
			++i;
		}
		std::size_t j = i;
		while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) {
			++j;
		}
		if (j > i) {
			auto tok = text.substr(i, j - i);
			if (alphabet.contains_word(tok)) {
				p.append_word(tok);
			} else {
				p.append(Symbol::variable(std::string(tok)));
			}
		}
		i = j;
	}
	return p;
}

Pattern& Pattern::append(const Pattern& p) {
	symbols_.insert(symbols_.end(), p.symbols_.begin(), p.symbols_.end());
	return *this;
}

Pattern& Pattern::append_word(std::string_view w) {
	for (char c : w) {
		symbols_.push_back(Symbol::terminal(c));
	}
	return *this;
}

std::size_t Pattern::count(const Symbol& z) const noexcept {
	return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), z));
}

std::size_t Pattern::count_variable(std::string_view name) const noexcept {
	return static_cast<std::size_t>(std::count_if(symbols_.begin(), symbols_.end(), [&](const Symbol& s) {
		return s.is_variable() && s.name == name;
	}));
}

std::size_t Pattern::count_letter(char c) const noexcept {
	return static_cast<std::size_t>(std::count_if(symbols_.begin(), symbols_.end(), [&](const Symbol& s) {
		return s.is_terminal() && s.letter() == c;
	}));
}

std::vector<std::string> Pattern::variables() const {
	std::vector<std::string> out;
	for (const auto& s : symbols_) {
		if (s.is_variable() && std::find(out.begin(), out.end(), s.name) == out.end()) {
			out.push_back(s.name);
		}
	}
	return out;
}

std::set<char> Pattern::terminals() const {
	std::set<char> out;
	for (const auto& s : symbols_) {
		if (s.is_terminal()) {
			out.insert(s.letter());
		}
	}
	return out;
}

bool Pattern::is_constant() const noexcept {
	return std::none_of(symbols_.begin(), symbols_.end(), [](const Symbol& s) { return s.is_variable(); });
}

Word Pattern::constant_word() const {
	Word w;
	for (const auto& s : symbols_) {
		if (s.is_variable()) {
			throw Error("pattern " + to_string() + " is not a constant word");
		}
		w += s.letter();
	}
	return w;
}

std::string Pattern::to_string() const {
	if (symbols_.empty()) {
		return "\"\"";
	}
	std::string out;
	bool in_literal = false;
	for (const auto& s : symbols_) {
		if (s.is_terminal()) {
			if (!in_literal) {
				if (!out.empty()) {
					out += ' ';
				}
				out += '"';
				in_literal = true;
			}
			out += s.letter();
		} else {
			if (in_literal) {
				out += '"';
				in_literal = false;
			}
			if (!out.empty()) {
				out += ' ';
			}
			out += s.name;
		}
	}
	if (in_literal) {
		out += '"';
	}
	return out;
}

Pattern operator+(Pattern lhs, const Pattern& rhs) {
	lhs.append(rhs);
	return lhs;
}

// ---------------------------------------------------------------------------
// Equation / constraints

std::vector<std::string> Equation::variables() const {
	return (lhs + rhs).variables();
}

std::set<char> Equation::terminals() const {
	auto t = lhs.terminals();
	auto r = rhs.terminals();
	t.insert(r.begin(), r.end());
	return t;
}

std::string Equation::to_string() const {
	return lhs.to_string() + (positive ? " = " : " != ") + rhs.to_string();
}

bool LinearConstraint::holds(const std::map<std::string, std::int64_t>& lengths) const {
	BigInt sum = 0;
	for (const auto& [var, c] : coeffs) {
		auto it = lengths.find(var);
		if (it == lengths.end()) {
			throw Error("length constraint mentions unbound variable " + var);
		}
		sum += BigInt(c) * it->second;
	}
	switch (rel) {
	case Relation::eq: return sum == constant;
	case Relation::le: return sum <= constant;
	case Relation::ge: return sum >= constant;
	}
	return false;
}

std::string LinearConstraint::to_string() const {
	std::ostringstream os;
	bool first = true;
	for (const auto& [var, c] : coeffs) {
		if (!first) {
			os << " + ";
		}
		first = false;
		os << c << "*|" << var << "|";
	}
	if (first) {
		os << "0";
	}
	os << (rel == Relation::eq ? " = " : rel == Relation::le ? " <= " : " >= ") << constant;
	return os.str();
}

// ---------------------------------------------------------------------------
// Formula

Formula Formula::make_atom(Atom a) {
	Formula f;
	f.kind = Kind::atom;
	f.atom = std::move(a);
	return f;
}

Formula Formula::pred(std::string name, std::vector<Pattern> args) {
	return make_atom(PredicateAtom{std::move(name), std::move(args)});
}

Formula Formula::conj(std::vector<Formula> fs) {
	Formula f;
	f.kind = Kind::conj;
	f.children = std::move(fs);
	return f;
}

Formula Formula::disj(std::vector<Formula> fs) {
	Formula f;
	f.kind = Kind::disj;
	f.children = std::move(fs);
	return f;
}

Formula Formula::negate(Formula g) {
	Formula f;
	f.kind = Kind::neg;
	f.children.push_back(std::move(g));
	return f;
}

bool Formula::positive() const {
	switch (kind) {
	case Kind::neg:
		return false;
	case Kind::atom:
		if (const auto* e = std::get_if<Equation>(&*atom)) {
			return e->positive;
		}
		return true;
	default:
		return std::all_of(children.begin(), children.end(), [](const Formula& c) { return c.positive(); });
	}
}

namespace {

void collect_vars(const Formula& f, std::vector<std::string>& out) {
	auto add = [&](const std::string& v) {
		if (std::find(out.begin(), out.end(), v) == out.end()) {
			out.push_back(v);
		}
	};
	if (f.kind != Formula::Kind::atom) {
		for (const auto& c : f.children) {
			collect_vars(c, out);
		}
		return;
	}
	std::visit(
		[&](const auto& a) {
			using T = std::decay_t<decltype(a)>;
			if constexpr (std::is_same_v<T, Equation>) {
				for (auto& v : a.variables()) add(v);
			} else if constexpr (std::is_same_v<T, PredicateAtom>) {
				for (const auto& p : a.args)
					for (auto& v : p.variables()) add(v);
			} else {
				for (const auto& [v, c] : a.coeffs) add(v);
			}
		},
		*f.atom);
}

void collect_atoms(const Formula& f, std::vector<const Atom*>& out) {
	if (f.kind == Formula::Kind::atom) {
		out.push_back(&*f.atom);
		return;
	}
	for (const auto& c : f.children) {
		collect_atoms(c, out);
	}
}

std::string atom_to_string(const Atom& a) {
	return std::visit(
		[](const auto& x) -> std::string {
			using T = std::decay_t<decltype(x)>;
			if constexpr (std::is_same_v<T, Equation>) {
				return "(" + x.to_string() + ")";
			} else if constexpr (std::is_same_v<T, PredicateAtom>) {
				std::string s = x.name + "(";
				for (std::size_t i = 0; i < x.args.size(); ++i) {
					s += (i ? ", " : "") + x.args[i].to_string();
				}
				return s + ")";
			} else {
				return "[" + x.to_string() + "]";
			}
		},
		a);
}

} // namespace

std::vector<std::string> Formula::variables() const {
	std::vector<std::string> out;
	collect_vars(*this, out);
	return out;
}

std::vector<const Atom*> Formula::atoms() const {
	std::vector<const Atom*> out;
	collect_atoms(*this, out);
	return out;
}

std::string Formula::to_string() const {
	switch (kind) {
	case Kind::atom:
		return atom_to_string(*atom);
	case Kind::neg:
		return "not " + children.front().to_string();
	case Kind::conj:
	case Kind::disj: {
		if (children.empty()) {
			return kind == Kind::conj ? "true" : "false";
		}
		std::string sep = kind == Kind::conj ? " and " : " or ";
		std::string s = "(";
		for (std::size_t i = 0; i < children.size(); ++i) {
			s += (i ? sep : "") + children[i].to_string();
		}
		return s + ")";
	}
	}
	return {};
}

// ---------------------------------------------------------------------------
// QuantifiedFormula

std::string_view to_string(Fragment f) {
	switch (f) {
	case Fragment::quantifier_free: return "quantifier-free";
	case Fragment::sigma1: return "Sigma1";
	case Fragment::pi1: return "Pi1";
	case Fragment::sigma2: return "Sigma2";
	case Fragment::sigma2_positive: return "Sigma2+";
	case Fragment::other: return "other";
	}
	return "other";
}

QuantifiedFormula QuantifiedFormula::exists(std::vector<std::string> xs, Formula matrix) {
	return {{{Quantifier::exists, std::move(xs)}}, std::move(matrix)};
}

QuantifiedFormula QuantifiedFormula::exists_forall(std::vector<std::string> xs, std::vector<std::string> ys,
												   Formula matrix) {
	return {{{Quantifier::exists, std::move(xs)}, {Quantifier::forall, std::move(ys)}}, std::move(matrix)};
}

void QuantifiedFormula::validate() const {
	std::set<std::string> bound;
	for (const auto& block : prefix) {
		for (const auto& v : block.variables) {
			if (!bound.insert(v).second) {
				throw Error("variable " + v + " is bound by more than one quantifier");
			}
		}
	}
	for (const auto& v : matrix.variables()) {
		if (!bound.contains(v)) {
			throw Error("free variable " + v + " is not covered by the quantifier prefix");
		}
	}
}

Fragment QuantifiedFormula::fragment() const {
	// Adjacent blocks with the same quantifier merge; empty blocks vanish.
	std::vector<Quantifier> shape;
	for (const auto& b : prefix) {
		if (b.variables.empty()) {
			continue;
		}
		if (shape.empty() || shape.back() != b.quantifier) {
			shape.push_back(b.quantifier);
		}
	}
	if (shape.empty()) {
		return Fragment::quantifier_free;
	}
	if (shape.size() == 1) {
		return shape[0] == Quantifier::exists ? Fragment::sigma1 : Fragment::pi1;
	}
	if (shape.size() == 2 && shape[0] == Quantifier::exists) {
		return matrix.positive() ? Fragment::sigma2_positive : Fragment::sigma2;
	}
	return Fragment::other;
}

std::vector<std::string> QuantifiedFormula::existential_variables() const {
	std::vector<std::string> out;
	for (const auto& b : prefix) {
		if (b.quantifier == Quantifier::exists) {
			out.insert(out.end(), b.variables.begin(), b.variables.end());
		}
	}
	return out;
}

std::vector<std::string> QuantifiedFormula::universal_variables() const {
	std::vector<std::string> out;
	for (const auto& b : prefix) {
		if (b.quantifier == Quantifier::forall) {
			out.insert(out.end(), b.variables.begin(), b.variables.end());
		}
	}
	return out;
}

std::string QuantifiedFormula::to_string() const {
	std::string s;
	for (const auto& b : prefix) {
		if (b.variables.empty()) {
			continue;
		}
		s += b.quantifier == Quantifier::exists ? "exists" : "forall";
		for (const auto& v : b.variables) {
			s += " " + v;
		}
		s += ". ";
	}
	return s + matrix.to_string();
}

// ---------------------------------------------------------------------------
// Substitution and evaluation

const Word& Substitution::at(const std::string& var) const {
	auto it = map_.find(var);
	if (it == map_.end()) {
		throw Error("unbound variable " + var);
	}
	return it->second;
}

std::map<std::string, std::int64_t> Substitution::lengths() const {
	std::map<std::string, std::int64_t> out;
	for (const auto& [v, w] : map_) {
		out[v] = static_cast<std::int64_t>(w.size());
	}
	return out;
}

std::string Substitution::to_string() const {
	std::string s = "{";
	bool first = true;
	for (const auto& [v, w] : map_) {
		s += (first ? "" : ", ") + v + "=\"" + w + "\"";
		first = false;
	}
	return s + "}";
}

Word apply(const Pattern& p, const Substitution& h) {
	Word out;
	for (const auto& s : p) {
		if (s.is_terminal()) {
			out += s.letter();
		} else {
			out += h.at(s.name);
		}
	}
	return out;
}

bool eval_atom(const Atom& a, const Substitution& h, const PredicateEvaluator& pred_eval) {
	return std::visit(
		[&](const auto& x) -> bool {
			using T = std::decay_t<decltype(x)>;
			if constexpr (std::is_same_v<T, Equation>) {
				return (apply(x.lhs, h) == apply(x.rhs, h)) == x.positive;
			} else if constexpr (std::is_same_v<T, PredicateAtom>) {
				if (!pred_eval) {
					throw Error("unknown predicate " + x.name + " (no predicate evaluator supplied)");
				}
				std::vector<Word> args;
				args.reserve(x.args.size());
				for (const auto& p : x.args) {
					args.push_back(apply(p, h));
				}
				return pred_eval(x.name, args);
			} else {
				std::map<std::string, std::int64_t> lengths;
				for (const auto& [v, c] : x.coeffs) {
					lengths[v] = static_cast<std::int64_t>(h.at(v).size());
				}
				return x.holds(lengths);
			}
		},
		a);
}

bool eval_formula(const Formula& f, const Substitution& h, const PredicateEvaluator& pred_eval) {
	switch (f.kind) {
	case Formula::Kind::atom:
		return eval_atom(*f.atom, h, pred_eval);
	case Formula::Kind::neg:
		return !eval_formula(f.children.front(), h, pred_eval);
	case Formula::Kind::conj:
		return std::all_of(f.children.begin(), f.children.end(),
						   [&](const Formula& c) { return eval_formula(c, h, pred_eval); });
	case Formula::Kind::disj:
		return std::any_of(f.children.begin(), f.children.end(),
						   [&](const Formula& c) { return eval_formula(c, h, pred_eval); });
	}
	return false;
}

Pattern substitute(const Pattern& p, const Substitution& partial) {
	Pattern out;
	for (const auto& s : p) {
		if (s.is_variable() && partial.contains(s.name)) {
			out.append_word(partial.at(s.name));
		} else {
			out.append(s);
		}
	}
	return out;
}

Equation substitute(const Equation& e, const Substitution& partial) {
	return {substitute(e.lhs, partial), substitute(e.rhs, partial), e.positive};
}

Formula substitute(const Formula& f, const Substitution& partial) {
	if (f.kind != Formula::Kind::atom) {
		Formula g = f;
		for (auto& c : g.children) {
			c = substitute(c, partial);
		}
		return g;
	}
	return std::visit(
		[&](const auto& a) -> Formula {
			using T = std::decay_t<decltype(a)>;
			if constexpr (std::is_same_v<T, Equation>) {
				return Formula::make_atom(substitute(a, partial));
			} else if constexpr (std::is_same_v<T, PredicateAtom>) {
				PredicateAtom b{a.name, {}};
				for (const auto& p : a.args) {
					b.args.push_back(substitute(p, partial));
				}
				return Formula::make_atom(std::move(b));
			} else {
				LinearConstraint c;
				c.rel = a.rel;
				c.constant = a.constant;
				for (const auto& [v, k] : a.coeffs) {
					if (partial.contains(v)) {
						c.constant -= k * static_cast<std::int64_t>(partial.at(v).size());
					} else {
						c.coeffs[v] += k;
					}
				}
				return Formula::make_atom(std::move(c));
			}
		},
		*f.atom);
}

// ---------------------------------------------------------------------------
// Combinatorics on words

Word primitive_root(std::string_view s) {
	const std::size_t n = s.size();
	for (std::size_t d = 1; d <= n; ++d) {
		if (n % d != 0) {
			continue;
		}
		bool periodic = true;
		for (std::size_t i = d; i < n && periodic; ++i) {
			periodic = s[i] == s[i - d];
		}
		if (periodic) {
			return Word(s.substr(0, d));
		}
	}
	return Word(s);
}

std::optional<Commutation> commutation_check(std::string_view u, std::string_view v) {
	std::string uv = std::string(u) + std::string(v);
	std::string vu = std::string(v) + std::string(u);
	if (uv != vu) {
		return std::nullopt;
	}
	if (uv.empty()) {
		return Commutation{"", 0, 0};
	}
	Word w = primitive_root(uv);
	return Commutation{w, u.size() / w.size(), v.size() / w.size()};
}

std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t max_len) {
	std::vector<Word> out{Word{}};
	std::size_t level_begin = 0;
	for (std::size_t len = 1; len <= max_len; ++len) {
		std::size_t level_end = out.size();
		for (std::size_t i = level_begin; i < level_end; ++i) {
			for (char c : alphabet.letters()) {
				out.push_back(out[i] + c);
			}
		}
		level_begin = level_end;
	}
	return out;
}

std::string_view to_string(Verdict v) {
	switch (v) {
	case Verdict::sat: return "SAT";
	case Verdict::unsat: return "UNSAT";
	case Verdict::unknown: return "UNKNOWN";
	}
	return "UNKNOWN";
}

// ---------------------------------------------------------------------------
// CompressedImage

BigInt CompressedImage::length() const {
	return BigInt(alpha.size() + beta.size()) * exponent + alpha.size();
}

std::optional<Word> CompressedImage::expand(std::size_t ceiling) const {
	if (length() > ceiling) {
		return std::nullopt;
	}
	Word block = alpha + beta;
	Word out;
	auto n = exponent.convert_to<std::size_t>();
	for (std::size_t i = 0; i < n; ++i) {
		out += block;
	}
	return out + alpha;
}

std::string CompressedImage::to_string() const {
	return "(\"" + alpha + beta + "\")^n \"" + alpha + "\", n = " + exponent.str();
}

} // namespace wordeq
