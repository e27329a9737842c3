#include "wordeq/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace wordeq::predicates {

namespace {

std::size_t count_of(std::string_view w, char c) { return static_cast<std::size_t>(std::count(w.begin(), w.end(), c)); }

bool only(std::string_view x, std::string_view y, char c) { return y == Word(count_of(x, c), c); }

bool morphism_from(std::string_view x, std::string_view y, std::size_t i, std::size_t j,
				   std::map<char, std::string_view>& img) {
	if (i == x.size()) return j == y.size();
	const char c = x[i];
	if (const auto it = img.find(c); it != img.end()) {
		return y.substr(j).starts_with(it->second) && morphism_from(x, y, i + 1, j + it->second.size(), img);
	}
	for (std::size_t len = 0; j + len <= y.size(); ++len) {
		img[c] = y.substr(j, len);
		if (morphism_from(x, y, i + 1, j + len, img)) return true;
	}
	img.erase(c);
	return false;
}

std::optional<std::size_t> numeral(std::string_view z) {
	if (z.empty() || (z.size() > 1 && z.front() == '0') || z.size() > 63) return std::nullopt;
	std::size_t n = 0;
	for (char c : z) {
		if (c != '0' && c != '1') return std::nullopt;
		n = 2 * n + static_cast<std::size_t>(c - '0');
	}
	return n;
}

bool power(std::size_t p, std::size_t x, std::size_t y) {
	if (x == 0) return p == 0;
	if (y >= 64 || (x << y) >> y != x) return false;
	return p == (x << y);
}

Pattern var(const std::string& v) { return Pattern({Symbol::variable(v)}); }
Pattern lit(char c) { return Pattern({Symbol::terminal(c)}); }

Formula commutes(const std::string& v, char c) { return Formula::eq(var(v) + lit(c), lit(c) + var(v)); }

Pattern concat(const std::vector<std::string>& vars) {
	Pattern p;
	for (const auto& v : vars) p.append(Symbol::variable(v));
	return p;
}

Pattern replace(const Pattern& p, const std::map<std::string, Pattern>& by) {
	Pattern out;
	for (const auto& s : p) {
		if (const auto it = s.is_variable() ? by.find(s.name) : by.end(); it != by.end()) {
			out.append(it->second);
		} else {
			out.append(s);
		}
	}
	return out;
}

Formula replace(const Formula& f, const std::map<std::string, Pattern>& by) {
	if (f.kind != Formula::Kind::atom) {
		Formula g = f;
		for (auto& c : g.children) c = replace(c, by);
		return g;
	}
	return std::visit(
		[&](const auto& a) -> Formula {
			using T = std::decay_t<decltype(a)>;
			if constexpr (std::is_same_v<T, Equation>) {
				return Formula::make_atom(Equation{replace(a.lhs, by), replace(a.rhs, by), a.positive});
			} else if constexpr (std::is_same_v<T, PredicateAtom>) {
				PredicateAtom b{a.name, {}};
				for (const auto& p : a.args) b.args.push_back(replace(p, by));
				return Formula::make_atom(std::move(b));
			} else {
				LinearConstraint c;
				c.rel = a.rel;
				c.constant = a.constant;
				for (const auto& [v, k] : a.coeffs) {
					const auto it = by.find(v);
					if (it == by.end()) {
						c.coeffs[v] += k;
						continue;
					}
					for (const auto& s : it->second) {
						if (s.is_variable()) {
							c.coeffs[s.name] += k;
						} else {
							c.constant -= k;
						}
					}
				}
				std::erase_if(c.coeffs, [](const auto& e) { return e.second == 0; });
				return Formula::make_atom(std::move(c));
			}
		},
		*f.atom);
}

// --- bounded template search ----------------------------------------------

class TemplateSearcher {
public:
	TemplateSearcher(const FormulaTemplate& t, Formula body, const Alphabet& alphabet, const TemplateSearch& search)
		: t_(t), alphabet_(alphabet), search_(search) {
		if (body.kind == Formula::Kind::conj) {
			conjuncts_ = std::move(body.children);
		} else {
			conjuncts_.push_back(std::move(body));
		}
		for (const auto& c : conjuncts_) vars_.push_back(c.variables());
		open_.insert(t.fresh_vars.begin(), t.fresh_vars.end());
	}

	std::optional<Substitution> run() {
		if (search()) return h_;
		return std::nullopt;
	}

private:
	struct Choice {
		std::string var;
		std::vector<std::size_t> lengths;
		const Equation* equation = nullptr;
	};

	std::size_t bound(const std::string& v) const { return t_.bound_of(v) + search_.slack; }

	bool complete(std::size_t i) const {
		return std::none_of(vars_[i].begin(), vars_[i].end(), [&](const std::string& v) { return open_.contains(v); });
	}

	std::vector<std::string> open_in(std::size_t i) const {
		std::vector<std::string> out;
		for (const auto& v : vars_[i]) {
			if (open_.contains(v)) out.push_back(v);
		}
		return out;
	}

	// Lengths of the single open variable v compatible with an equation.
	std::vector<std::size_t> equation_lengths(const Equation& e, const std::string& v) const {
		std::int64_t cl = 0, cr = 0, kl = 0, kr = 0;
		auto measure = [&](const Pattern& p, std::int64_t& c, std::int64_t& k) {
			for (const auto& s : p) {
				if (s.is_terminal()) {
					++c;
				} else if (s.name == v) {
					++k;
				} else {
					c += static_cast<std::int64_t>(h_.at(s.name).size());
				}
			}
		};
		measure(e.lhs, cl, kl);
		measure(e.rhs, cr, kr);
		const auto b = static_cast<std::int64_t>(bound(v));
		std::vector<std::size_t> out;
		if (kl == kr) {
			if (cl == cr) {
				for (std::int64_t l = 0; l <= b; ++l) out.push_back(static_cast<std::size_t>(l));
			}
		} else if ((cr - cl) % (kl - kr) == 0) {
			const std::int64_t l = (cr - cl) / (kl - kr);
			if (l >= 0 && l <= b) out.push_back(static_cast<std::size_t>(l));
		}
		return out;
	}

	bool length_allowed(const std::string& v, std::size_t len) const {
		for (std::size_t i = 0; i < conjuncts_.size(); ++i) {
			const Formula& c = conjuncts_[i];
			if (!c.is_atom() || !std::holds_alternative<LinearConstraint>(*c.atom)) continue;
			const auto open = open_in(i);
			if (open.size() != 1 || open.front() != v) continue;
			std::map<std::string, std::int64_t> lengths;
			for (const auto& [w, k] : std::get<LinearConstraint>(*c.atom).coeffs) {
				lengths[w] = static_cast<std::int64_t>(w == v ? len : h_.at(w).size());
			}
			if (!std::get<LinearConstraint>(*c.atom).holds(lengths)) return false;
		}
		return true;
	}

	// Solutions of e of length len for its single open variable v.
	std::vector<Word> unify(const Equation& e, const std::string& v, std::size_t len) const {
		// Cell: letter (>= 0) or -(1 + position of v).
		auto cells = [&](const Pattern& p) {
			std::vector<int> out;
			for (const auto& s : p) {
				if (s.is_terminal()) {
					out.push_back(static_cast<unsigned char>(s.letter()));
				} else if (s.name == v) {
					for (std::size_t k = 0; k < len; ++k) out.push_back(-1 - static_cast<int>(k));
				} else {
					for (char c : h_.at(s.name)) out.push_back(static_cast<unsigned char>(c));
				}
			}
			return out;
		};
		const auto l = cells(e.lhs);
		const auto r = cells(e.rhs);
		if (l.size() != r.size()) return {};
		std::vector<std::size_t> parent(len);
		std::iota(parent.begin(), parent.end(), 0);
		std::vector<int> letter(len, -1);
		auto find = [&](std::size_t k) {
			while (parent[k] != k) k = parent[k] = parent[parent[k]];
			return k;
		};
		auto fix = [&](std::size_t k, int c) {
			const std::size_t root = find(k);
			if (letter[root] >= 0 && letter[root] != c) return false;
			letter[root] = c;
			return true;
		};
		for (std::size_t k = 0; k < l.size(); ++k) {
			const int a = l[k], b = r[k];
			if (a >= 0 && b >= 0) {
				if (a != b) return {};
			} else if (a >= 0) {
				if (!fix(static_cast<std::size_t>(-1 - b), a)) return {};
			} else if (b >= 0) {
				if (!fix(static_cast<std::size_t>(-1 - a), b)) return {};
			} else {
				const std::size_t x = find(static_cast<std::size_t>(-1 - a));
				const std::size_t y = find(static_cast<std::size_t>(-1 - b));
				if (x == y) continue;
				if (letter[x] >= 0 && letter[y] >= 0 && letter[x] != letter[y]) return {};
				if (letter[y] < 0) letter[y] = letter[x];
				parent[x] = y;
			}
		}
		std::vector<std::size_t> free;
		for (std::size_t k = 0; k < len; ++k) {
			if (find(k) == k && letter[k] < 0) free.push_back(k);
		}
		std::vector<Word> out;
		std::vector<std::size_t> digits(free.size(), 0);
		for (;;) {
			Word w(len, ' ');
			for (std::size_t k = 0; k < free.size(); ++k) letter[free[k]] = static_cast<unsigned char>(alphabet_[digits[k]]);
			for (std::size_t k = 0; k < len; ++k) w[k] = static_cast<char>(letter[find(k)]);
			out.push_back(std::move(w));
			std::size_t k = 0;
			while (k < digits.size() && ++digits[k] == alphabet_.size()) digits[k++] = 0;
			if (k == digits.size()) break;
		}
		return out;
	}

	Choice choose() const {
		std::optional<Choice> best;
		for (std::size_t i = 0; i < conjuncts_.size(); ++i) {
			const Formula& c = conjuncts_[i];
			if (!c.is_atom()) continue;
			const auto* e = std::get_if<Equation>(&*c.atom);
			const auto open = open_in(i);
			if (!e || !e->positive || open.size() != 1) continue;
			Choice ch{open.front(), {}, e};
			for (std::size_t len : equation_lengths(*e, ch.var)) {
				if (length_allowed(ch.var, len)) ch.lengths.push_back(len);
			}
			if (!best || ch.lengths.size() < best->lengths.size()) best = std::move(ch);
		}
		if (best) return *best;
		double best_cost = 0;
		for (const auto& v : t_.fresh_vars) {
			if (!open_.contains(v)) continue;
			Choice ch{v, {}, nullptr};
			double cost = 0;
			for (std::size_t len = 0; len <= bound(v); ++len) {
				if (!length_allowed(v, len)) continue;
				ch.lengths.push_back(len);
				cost += std::pow(static_cast<double>(alphabet_.size()), static_cast<double>(len));
			}
			if (!best || cost < best_cost) {
				best = std::move(ch);
				best_cost = cost;
			}
		}
		return *best;
	}

	bool search() {
		if (++nodes_ > search_.node_limit) {
			throw Error("template search for " + t_.name + " exceeded its node limit");
		}
		const auto pred = catalog_evaluator();
		for (std::size_t i = 0; i < conjuncts_.size(); ++i) {
			if (complete(i) && !eval_formula(conjuncts_[i], h_, pred)) return false;
		}
		if (open_.empty()) return true;
		const Choice ch = choose();
		open_.erase(ch.var);
		for (std::size_t len : ch.lengths) {
			const auto candidates = ch.equation ? unify(*ch.equation, ch.var, len) : words_of_length(len);
			for (const auto& w : candidates) {
				h_.set(ch.var, w);
				if (search()) return true;
			}
		}
		open_.insert(ch.var);
		return false;
	}

	std::vector<Word> words_of_length(std::size_t len) const {
		std::vector<Word> out{Word{}};
		for (std::size_t k = 0; k < len; ++k) {
			std::vector<Word> next;
			for (const auto& w : out) {
				for (char c : alphabet_.letters()) next.push_back(w + c);
			}
			out = std::move(next);
		}
		return out;
	}

	const FormulaTemplate& t_;
	const Alphabet& alphabet_;
	TemplateSearch search_;
	std::vector<Formula> conjuncts_;
	std::vector<std::vector<std::string>> vars_;
	std::set<std::string> open_;
	Substitution h_;
	std::uint64_t nodes_ = 0;
};

char focus_letter(const std::string& name) {
	if (name == "Onlyas" || name == "Eq_a") return 'a';
	if (name == "Onlybs" || name == "Eq_b") return 'b';
	return 0;
}

std::string only_name(char c) { return c == 'a' ? "Onlyas" : "Onlybs"; }
std::string eq_name(char c) { return c == 'a' ? "Eq_a" : "Eq_b"; }

} // namespace

bool shuffle(std::string_view x, std::string_view y, std::string_view z) {
	if (x.size() + y.size() != z.size()) return false;
	// reach[j]: z[0, i + j) is a shuffle of x[0, i) and y[0, j).
	std::vector<char> reach(y.size() + 1, 0);
	for (std::size_t i = 0; i <= x.size(); ++i) {
		for (std::size_t j = 0; j <= y.size(); ++j) {
			if (i == 0 && j == 0) {
				reach[0] = 1;
				continue;
			}
			const char c = z[i + j - 1];
			const bool from_x = i > 0 && reach[j] && x[i - 1] == c;
			const bool from_y = j > 0 && reach[j - 1] && y[j - 1] == c;
			reach[j] = from_x || from_y;
		}
	}
	return reach[y.size()] != 0;
}

bool subword(std::string_view x, std::string_view y) {
	std::size_t i = 0;
	for (char c : y) {
		if (i < x.size() && x[i] == c) ++i;
	}
	return i == x.size();
}

bool projection(std::string_view x, std::string_view y) {
	const std::set<char> kept(y.begin(), y.end());
	Word image;
	for (char c : x) {
		if (kept.contains(c)) image += c;
	}
	return image == y;
}

bool morphism(std::string_view x, std::string_view y) {
	std::map<char, std::string_view> img;
	return morphism_from(x, y, 0, 0, img);
}

bool erase(std::string_view x, std::string_view y, std::string_view z) {
	if (y.empty()) return x == z;
	// ok[i][j]: x[i..] can produce z[j..].
	std::vector<std::vector<char>> ok(x.size() + 2, std::vector<char>(z.size() + 1, 0));
	ok[x.size()][z.size()] = 1;
	for (std::size_t i = x.size(); i-- > 0;) {
		for (std::size_t j = z.size() + 1; j-- > 0;) {
			bool r = j < z.size() && x[i] == z[j] && ok[i + 1][j + 1];
			if (!r && x.substr(i).starts_with(y)) r = ok[i + y.size()][j];
			ok[i][j] = r;
		}
	}
	return ok[0][0] != 0;
}

Word binary(std::size_t n) {
	if (n == 0) return "0";
	Word out;
	for (; n > 0; n /= 2) out.insert(out.begin(), static_cast<char>('0' + n % 2));
	return out;
}

const std::map<std::string, CatalogEntry>& catalog() {
	using A = const std::vector<Word>&;
	static const std::map<std::string, CatalogEntry> entries{
		{"Eq_a", {2, [](A w) { return count_of(w[0], 'a') == count_of(w[1], 'a'); }}},
		{"Eq_b", {2, [](A w) { return count_of(w[0], 'b') == count_of(w[1], 'b'); }}},
		{"Length", {2, [](A w) { return w[0].size() == w[1].size(); }}},
		{"Abelian",
		 {2,
		  [](A w) {
			  Word x = w[0], y = w[1];
			  std::sort(x.begin(), x.end());
			  std::sort(y.begin(), y.end());
			  return x == y;
		  }}},
		{"Shuffle", {3, [](A w) { return predicates::shuffle(w[0], w[1], w[2]); }}},
		{"Projection", {2, [](A w) { return predicates::projection(w[0], w[1]); }}},
		{"Subword", {2, [](A w) { return predicates::subword(w[0], w[1]); }}},
		{"Morphism", {2, [](A w) { return predicates::morphism(w[0], w[1]); }}},
		{"Insert", {3, [](A w) { return predicates::erase(w[2], w[1], w[0]); }}},
		{"Erase", {3, [](A w) { return predicates::erase(w[0], w[1], w[2]); }}},
		{"Onlyas", {2, [](A w) { return only(w[0], w[1], 'a'); }}},
		{"Onlybs", {2, [](A w) { return only(w[0], w[1], 'b'); }}},
		{"strnum", {2, [](A w) { return numeral(w[0]) == w[1].size(); }}},
		{"P", {3, [](A w) { return power(w[0].size(), w[1].size(), w[2].size()); }}},
	};
	return entries;
}

bool eval_predicate(const std::string& name, const std::vector<Word>& args) {
	const auto it = catalog().find(name);
	if (it == catalog().end()) {
		throw Error("unknown predicate " + name);
	}
	if (it->second.arity != args.size()) {
		throw Error("predicate " + name + " takes " + std::to_string(it->second.arity) + " arguments, got " +
					std::to_string(args.size()));
	}
	return it->second.evaluate(args);
}

PredicateEvaluator catalog_evaluator() { return &eval_predicate; }

std::size_t FormulaTemplate::bound_of(const std::string& fresh) const {
	const auto it = bounds.find(fresh);
	return it == bounds.end() ? default_bound : it->second;
}

QuantifiedFormula FormulaTemplate::instantiate(const std::vector<Pattern>& args, const std::set<std::string>& avoid) const {
	if (args.size() != parameters.size()) {
		throw Error(name + " takes " + std::to_string(parameters.size()) + " arguments");
	}
	std::vector<std::string> bound_vars;
	std::set<std::string> taken;
	for (const auto& a : args) {
		for (const auto& v : a.variables()) {
			if (taken.insert(v).second) bound_vars.push_back(v);
		}
	}
	taken.insert(avoid.begin(), avoid.end());
	std::map<std::string, Pattern> by;
	for (std::size_t i = 0; i < args.size(); ++i) by[parameters[i]] = args[i];
	for (const auto& f : fresh_vars) {
		std::string renamed = f;
		while (taken.contains(renamed)) renamed += "_";
		taken.insert(renamed);
		by[f] = var(renamed);
		bound_vars.push_back(renamed);
	}
	return QuantifiedFormula::exists(bound_vars, replace(body, by));
}

std::optional<Substitution> evaluate_template(const FormulaTemplate& t, const std::vector<Word>& args,
											  const Alphabet& alphabet, const TemplateSearch& search) {
	if (args.size() != t.parameters.size()) {
		throw Error(t.name + " takes " + std::to_string(t.parameters.size()) + " arguments");
	}
	Substitution params;
	for (std::size_t i = 0; i < args.size(); ++i) params.set(t.parameters[i], args[i]);
	return TemplateSearcher(t, substitute(t.body, params), alphabet, search).run();
}

FormulaTemplate encode_counting(const std::string& source, const std::string& target, const Alphabet& alphabet) {
	const char f = focus_letter(target);
	const auto unsupported = [&] {
		return Error("no construction of " + target + " from " + source +
					 "; supported: Eq_a -> Onlyas, Onlyas -> Eq_a, Abelian -> Eq_a, and Shuffle, Projection, "
					 "Subword, Erase, Insert -> Onlyas (likewise for b)");
	};
	if (f == 0) throw unsupported();
	if (!alphabet.contains(f)) {
		throw Error(target + " needs the letter " + std::string(1, f) + " in the alphabet");
	}
	// a_1 = f, then the remaining letters in alphabet order.
	std::vector<char> letters{f};
	for (char c : alphabet.letters()) {
		if (c != f) letters.push_back(c);
	}
	const std::size_t n = letters.size();
	FormulaTemplate t;
	t.name = target + " from " + source;
	t.parameters = {"x", "y"};
	std::vector<Formula> body;

	if (source == eq_name(f) && target == only_name(f)) {
		body = {commutes("y", f), Formula::pred(source, {var("x"), var("y")})};
	} else if (source == only_name(f) && target == eq_name(f)) {
		t.fresh_vars = {"z"};
		body = {Formula::pred(source, {var("x"), var("z")}), Formula::pred(source, {var("y"), var("z")})};
	} else if (source == "Abelian" && target == eq_name(f)) {
		std::vector<std::string> zs{"x"}, zps{"y"};
		for (std::size_t i = 1; i < n; ++i) {
			const std::string z = "z" + std::to_string(i + 1);
			const std::string zp = "zp" + std::to_string(i + 1);
			t.fresh_vars.push_back(z);
			t.fresh_vars.push_back(zp);
			body.push_back(commutes(z, letters[i]));
			body.push_back(commutes(zp, letters[i]));
			zs.push_back(z);
			zps.push_back(zp);
		}
		t.fresh_vars.insert(t.fresh_vars.begin(), {"xp", "yp"});
		body.push_back(Formula::eq(var("xp"), concat(zs)));
		body.push_back(Formula::eq(var("yp"), concat(zps)));
		body.push_back(Formula::pred("Abelian", {var("xp"), var("yp")}));
	} else if (source == "Shuffle" && target == only_name(f)) {
		body.push_back(commutes("y", f));
		std::string prev = "y";
		for (std::size_t i = 1; i < n; ++i) {
			const std::string z = "z" + std::to_string(i + 1);
			const std::string next = i + 1 == n ? "x" : "y" + std::to_string(i + 1);
			t.fresh_vars.push_back(z);
			if (next != "x") t.fresh_vars.push_back(next);
			body.push_back(commutes(z, letters[i]));
			body.push_back(Formula::pred("Shuffle", {var(prev), var(z), var(next)}));
			prev = next;
		}
		if (n == 1) body.push_back(Formula::eq(var("y"), var("x")));
	} else if (source == "Projection" && target == only_name(f)) {
		// Appending f on both sides keeps f in the projection; the bare
		// Projection(x, y) also admits y = "" by erasing every letter.
		body = {commutes("y", f), Formula::pred("Projection", {var("x") + lit(f), var("y") + lit(f)})};
	} else if (source == "Subword" && target == only_name(f)) {
		t.fresh_vars = {"z"};
		body = {commutes("y", f), Formula::pred("Subword", {var("y"), var("x")}), Formula::eq(var("z"), var("y") + lit(f)),
				Formula::negate(Formula::pred("Subword", {var("z"), var("x")}))};
	} else if ((source == "Erase" || source == "Insert") && target == only_name(f)) {
		body.push_back(commutes("y", f));
		// Remove a_n from x, then a_(n-1), ..., then a_2, ending at y.
		std::string cur = "x";
		for (std::size_t i = n; i >= 2; --i) {
			const std::string next = i == 2 ? "y" : "z" + std::to_string(i - 1);
			if (next != "y") t.fresh_vars.push_back(next);
			const Pattern letter = lit(letters[i - 1]);
			body.push_back(source == "Erase" ? Formula::pred("Erase", {var(cur), letter, var(next)})
											 : Formula::pred("Insert", {var(next), letter, var(cur)}));
			cur = next;
		}
		if (n == 1) body.push_back(Formula::eq(var("y"), var("x")));
	} else {
		throw unsupported();
	}
	t.body = Formula::conj(std::move(body));
	return t;
}

FormulaTemplate encode_multiply(const Alphabet& alphabet) {
	if (!alphabet.contains('a') || !alphabet.contains('b') || !alphabet.contains('c')) {
		throw Error("Multiply2 needs the letters a, b and c");
	}
	FormulaTemplate t;
	t.name = "Multiply2 from Morphism";
	t.parameters = {"x", "y", "z"};
	t.fresh_vars = {"xp", "xpp", "yp", "zp", "u", "v", "w", "wp", "wpp"};
	const Pattern a = lit('a'), b = lit('b'), c = lit('c');
	t.body = Formula::conj({
		Formula::eq(var("xp"), var("w") + a),
		Formula::eq(var("yp"), var("wp") + a),
		Formula::disj({Formula::eq(var("xp"), var("wpp") + a + a), Formula::eq(var("yp"), var("wpp") + a + a)}),
		commutes("xp", 'a'),
		commutes("yp", 'a'),
		commutes("zp", 'a'),
		Formula::eq(var("x"), var("xp") + b),
		Formula::eq(var("y"), var("yp") + b),
		Formula::eq(var("z"), var("zp") + b),
		Formula::eq(var("xpp") + var("x"), var("x") + var("xpp")),
		Formula::pred("Morphism", {var("xpp"), var("yp")}),
		Formula::pred("Morphism", {var("yp"), var("xpp")}),
		Formula::pred("Morphism", {var("u"), var("v")}),
		Formula::eq(var("u"), var("xpp") + c + c + var("xpp") + var("xp") + c + c + b),
		Formula::eq(var("v"), var("zp") + c + c + var("zp") + var("xp") + c + c),
	});
	// Enough for i, j <= 3 and k <= 9.
	t.bounds = {{"xp", 3}, {"yp", 3}, {"w", 3}, {"wp", 3}, {"wpp", 3}, {"zp", 9}, {"xpp", 12}, {"u", 32}, {"v", 25}};
	return t;
}

FormulaTemplate encode_power_binary() {
	FormulaTemplate t;
	t.name = "P from strnum";
	t.parameters = {"p", "x", "y"};
	t.fresh_vars = {"z", "xs"};
	t.body = Formula::conj({
		Formula::pred("strnum", {var("xs"), var("x")}),
		Formula::eq(lit('0') + var("z"), var("z") + lit('0')),
		Formula::make_atom(LinearConstraint{{{"z", 1}, {"y", -1}}, 0, Relation::eq}),
		// xs z = "00..." is not canonical, so x = 0 needs its own case.
		Formula::disj({Formula::pred("strnum", {var("xs") + var("z"), var("p")}),
					   Formula::conj({Formula::make_atom(LinearConstraint{{{"x", 1}}, 0, Relation::eq}),
									  Formula::make_atom(LinearConstraint{{{"p", 1}}, 0, Relation::eq})})}),
	});
	return t;
}

std::pair<FormulaTemplate, FormulaTemplate> mutual_onlyas_eqa() {
	const Alphabet a("a");
	return {encode_counting("Eq_a", "Onlyas", a), encode_counting("Onlyas", "Eq_a", a)};
}

} // namespace wordeq::predicates
