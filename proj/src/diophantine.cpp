#include "wordeq/diophantine.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <utility>

namespace wordeq::diophantine {

namespace {

using Rat = boost::multiprecision::cpp_rational;

BigInt floor_div(const BigInt& a, const BigInt& b) {
	// b > 0
	BigInt q = a / b;
	if (a % b != 0 && a < 0) {
		--q;
	}
	return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

BigInt ceil_rat(const Rat& r) {
	BigInt n = boost::multiprecision::numerator(r);
	BigInt d = boost::multiprecision::denominator(r);
	return ceil_div(n, d);
}

struct Row {
	std::vector<BigInt> a;
	Relation rel = Relation::eq;
	BigInt c = 0;
};

bool holds(Relation rel, const BigInt& lhs, const BigInt& rhs) {
	switch (rel) {
	case Relation::eq: return lhs == rhs;
	case Relation::le: return lhs <= rhs;
	case Relation::ge: return lhs >= rhs;
	}
	return false;
}

/// Divides each row by the gcd of its coefficients, tightening inequalities.
/// Constant rows are checked and dropped. Returns false on a contradiction.
bool normalize(std::vector<Row>& rows) {
	std::vector<Row> out;
	out.reserve(rows.size());
	for (auto& r : rows) {
		BigInt g = 0;
		for (const auto& v : r.a) {
			g = boost::multiprecision::gcd(g, v);
		}
		if (g == 0) {
			if (!holds(r.rel, 0, r.c)) {
				return false;
			}
			continue;
		}
		if (g != 1) {
			for (auto& v : r.a) {
				v /= g;
			}
			switch (r.rel) {
			case Relation::eq:
				if (r.c % g != 0) {
					return false;
				}
				r.c /= g;
				break;
			case Relation::le: r.c = floor_div(r.c, g); break;
			case Relation::ge: r.c = ceil_div(r.c, g); break;
			}
		}
		out.push_back(std::move(r));
	}
	rows = std::move(out);
	return true;
}

bool satisfies(const std::vector<Row>& rows, const std::vector<BigInt>& x) {
	for (const auto& r : rows) {
		BigInt s = 0;
		for (std::size_t j = 0; j < x.size(); ++j) {
			s += r.a[j] * x[j];
		}
		if (!holds(r.rel, s, r.c)) {
			return false;
		}
	}
	return true;
}

// --- exact simplex ----------------------------------------------------------

struct LpResult {
	enum class Status { optimal, infeasible, unbounded } status = Status::infeasible;
	Rat value;
	std::vector<Rat> x;
};

/// min cost.x subject to rows, x >= 0. Two-phase tableau with Bland's rule.
class Simplex {
public:
	Simplex(const std::vector<Row>& rows, std::size_t n) : n_(n) {
		const std::size_t m = rows.size();
		std::size_t slacks = 0;
		std::size_t arts = 0;
		std::vector<Relation> rel(m);
		std::vector<int> sign(m, 1);
		for (std::size_t i = 0; i < m; ++i) {
			rel[i] = rows[i].rel;
			if (rows[i].c < 0) {
				sign[i] = -1;
				if (rel[i] == Relation::le) {
					rel[i] = Relation::ge;
				} else if (rel[i] == Relation::ge) {
					rel[i] = Relation::le;
				}
			}
			if (rel[i] != Relation::eq) {
				++slacks;
			}
			if (rel[i] != Relation::le) {
				++arts;
			}
		}
		art_begin_ = n + slacks;
		cols_ = art_begin_ + arts;
		t_.assign(m, std::vector<Rat>(cols_ + 1));
		basis_.assign(m, 0);
		std::size_t s = n;
		std::size_t art = art_begin_;
		for (std::size_t i = 0; i < m; ++i) {
			for (std::size_t j = 0; j < n; ++j) {
				t_[i][j] = Rat(rows[i].a[j] * sign[i]);
			}
			t_[i][cols_] = Rat(rows[i].c * sign[i]);
			if (rel[i] == Relation::le) {
				t_[i][s] = 1;
				basis_[i] = s++;
			} else {
				if (rel[i] == Relation::ge) {
					t_[i][s++] = -1;
				}
				t_[i][art] = 1;
				basis_[i] = art++;
			}
		}
	}

	LpResult minimize(const std::vector<Rat>& cost) {
		LpResult res;
		const std::size_t m = t_.size();
		if (cols_ > art_begin_) {
			std::vector<Rat> phase1(cols_);
			for (std::size_t j = art_begin_; j < cols_; ++j) {
				phase1[j] = 1;
			}
			set_objective(phase1);
			run(cols_);
			if (obj_[cols_] != 0) {
				return res;
			}
			for (std::size_t i = 0; i < m; ++i) {
				if (basis_[i] < art_begin_) {
					continue;
				}
				for (std::size_t j = 0; j < art_begin_; ++j) {
					if (t_[i][j] != 0) {
						pivot(i, j);
						break;
					}
				}
			}
		}
		std::vector<Rat> c(cols_);
		std::copy(cost.begin(), cost.end(), c.begin());
		set_objective(c);
		if (!run(art_begin_)) {
			res.status = LpResult::Status::unbounded;
			return res;
		}
		res.status = LpResult::Status::optimal;
		res.value = obj_[cols_];
		res.x.assign(n_, Rat(0));
		for (std::size_t i = 0; i < m; ++i) {
			if (basis_[i] < n_) {
				res.x[basis_[i]] = t_[i][cols_];
			}
		}
		return res;
	}

private:
	// obj_[j] holds the reduced cost of column j, obj_[cols_] the objective value.
	void set_objective(const std::vector<Rat>& c) {
		obj_.assign(cols_ + 1, Rat(0));
		for (std::size_t j = 0; j < cols_; ++j) {
			obj_[j] = c[j];
		}
		for (std::size_t i = 0; i < t_.size(); ++i) {
			const Rat cb = c[basis_[i]];
			if (cb == 0) {
				continue;
			}
			for (std::size_t j = 0; j <= cols_; ++j) {
				if (t_[i][j] != 0) {
					obj_[j] -= cb * t_[i][j];
				}
			}
		}
		obj_[cols_] = -obj_[cols_];
	}

	// Columns at or beyond `limit` never enter. Returns false when unbounded.
	bool run(std::size_t limit) {
		for (;;) {
			std::size_t enter = limit;
			for (std::size_t j = 0; j < limit; ++j) {
				if (obj_[j] < 0) {
					enter = j;
					break;
				}
			}
			if (enter == limit) {
				return true;
			}
			std::size_t leave = t_.size();
			Rat best;
			for (std::size_t i = 0; i < t_.size(); ++i) {
				if (t_[i][enter] <= 0) {
					continue;
				}
				Rat ratio = t_[i][cols_] / t_[i][enter];
				if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
					leave = i;
					best = ratio;
				}
			}
			if (leave == t_.size()) {
				return false;
			}
			pivot(leave, enter);
		}
	}

	void pivot(std::size_t r, std::size_t c) {
		const Rat p = t_[r][c];
		for (auto& v : t_[r]) {
			if (v != 0) {
				v /= p;
			}
		}
		auto eliminate = [&](std::vector<Rat>& row, bool objective) {
			const Rat f = row[c];
			if (f == 0) {
				return;
			}
			for (std::size_t j = 0; j <= cols_; ++j) {
				if (t_[r][j] != 0) {
					if (objective && j == cols_) {
						row[j] += f * t_[r][j];
					} else {
						row[j] -= f * t_[r][j];
					}
				}
			}
		};
		for (std::size_t i = 0; i < t_.size(); ++i) {
			if (i != r) {
				eliminate(t_[i], false);
			}
		}
		if (!obj_.empty()) {
			eliminate(obj_, true);
		}
		basis_[r] = c;
	}

	std::size_t n_;
	std::size_t art_begin_ = 0;
	std::size_t cols_ = 0;
	std::vector<std::vector<Rat>> t_;
	std::vector<Rat> obj_;
	std::vector<std::size_t> basis_;
};

// --- integer lattice of the equalities -------------------------------------

/// Integer solutions of the equalities: x = x0 + K t with t ranging over Z^d.
struct Lattice {
	std::vector<BigInt> x0;
	std::vector<std::vector<BigInt>> k;   // n rows, d columns
	std::size_t dim = 0;
};

std::optional<Lattice> solve_equalities(const std::vector<Row>& eqs, std::size_t n) {
	std::vector<std::vector<BigInt>> a;
	std::vector<BigInt> b;
	for (const auto& r : eqs) {
		a.push_back(r.a);
		b.push_back(r.c);
	}
	// u: unimodular column transform, a * u is lower echelon.
	std::vector<std::vector<BigInt>> u(n, std::vector<BigInt>(n, 0));
	for (std::size_t i = 0; i < n; ++i) {
		u[i][i] = 1;
	}
	auto col_swap = [&](std::size_t x, std::size_t y) {
		for (auto& row : a) {
			std::swap(row[x], row[y]);
		}
		for (auto& row : u) {
			std::swap(row[x], row[y]);
		}
	};
	auto col_sub = [&](std::size_t target, std::size_t src, const BigInt& q) {
		for (auto& row : a) {
			row[target] -= q * row[src];
		}
		for (auto& row : u) {
			row[target] -= q * row[src];
		}
	};
	std::size_t p = 0;
	std::vector<std::optional<std::size_t>> pivot_of(a.size());
	for (std::size_t i = 0; i < a.size() && p < n; ++i) {
		for (;;) {
			std::size_t best = n;
			for (std::size_t j = p; j < n; ++j) {
				if (a[i][j] != 0 && (best == n || abs(a[i][j]) < abs(a[i][best]))) {
					best = j;
				}
			}
			if (best == n) {
				break;
			}
			if (best != p) {
				col_swap(best, p);
			}
			bool done = true;
			for (std::size_t j = p + 1; j < n; ++j) {
				if (a[i][j] != 0) {
					col_sub(j, p, a[i][j] / a[i][p]);
					done = done && a[i][j] == 0;
				}
			}
			if (done) {
				if (a[i][p] < 0) {
					for (auto& row : a) {
						row[p] = -row[p];
					}
					for (auto& row : u) {
						row[p] = -row[p];
					}
				}
				pivot_of[i] = p++;
				break;
			}
		}
	}
	std::vector<BigInt> y(n, 0);
	for (std::size_t i = 0; i < a.size(); ++i) {
		BigInt s = b[i];
		const std::size_t upto = pivot_of[i] ? *pivot_of[i] : p;
		for (std::size_t j = 0; j < upto; ++j) {
			s -= a[i][j] * y[j];
		}
		if (pivot_of[i]) {
			const BigInt& d = a[i][*pivot_of[i]];
			if (s % d != 0) {
				return std::nullopt;
			}
			y[*pivot_of[i]] = s / d;
		} else if (s != 0) {
			return std::nullopt;
		}
	}
	Lattice lat;
	lat.dim = n - p;
	lat.x0.assign(n, 0);
	lat.k.assign(n, std::vector<BigInt>(lat.dim, 0));
	for (std::size_t r = 0; r < n; ++r) {
		for (std::size_t j = 0; j < p; ++j) {
			lat.x0[r] += u[r][j] * y[j];
		}
		for (std::size_t j = p; j < n; ++j) {
			lat.k[r][j - p] = u[r][j];
		}
	}
	return lat;
}

/// Row a.x rel c rewritten over the lattice parameters.
Row to_lattice(const Row& r, const Lattice& lat) {
	Row out;
	out.rel = r.rel;
	out.c = r.c;
	out.a.assign(lat.dim, 0);
	for (std::size_t i = 0; i < r.a.size(); ++i) {
		if (r.a[i] == 0) {
			continue;
		}
		out.c -= r.a[i] * lat.x0[i];
		for (std::size_t j = 0; j < lat.dim; ++j) {
			out.a[j] += r.a[i] * lat.k[i][j];
		}
	}
	return out;
}

// --- integer feasibility over free integer parameters ----------------------

/// Rows over free integer t are split as t = t+ - t-.
std::vector<Row> split_rows(const std::vector<Row>& rows, std::size_t d) {
	std::vector<Row> out;
	out.reserve(rows.size());
	for (const auto& r : rows) {
		Row s;
		s.rel = r.rel;
		s.c = r.c;
		s.a.resize(2 * d);
		for (std::size_t j = 0; j < d; ++j) {
			s.a[j] = r.a[j];
			s.a[d + j] = -r.a[j];
		}
		out.push_back(std::move(s));
	}
	return out;
}

LpResult lp_over_free(const std::vector<Row>& rows, std::size_t d, const std::vector<BigInt>& objective) {
	Simplex lp(split_rows(rows, d), 2 * d);
	std::vector<Rat> cost(2 * d);
	for (std::size_t j = 0; j < d && j < objective.size(); ++j) {
		cost[j] = Rat(objective[j]);
		cost[d + j] = Rat(-objective[j]);
	}
	LpResult r = lp.minimize(cost);
	if (r.status == LpResult::Status::optimal) {
		std::vector<Rat> t(d);
		for (std::size_t j = 0; j < d; ++j) {
			t[j] = r.x[j] - r.x[d + j];
		}
		r.x = std::move(t);
	}
	return r;
}

/// Branch and bound; the region is bounded, so the search terminates.
std::optional<std::vector<BigInt>> integer_point(std::vector<Row> rows, std::size_t d) {
	if (!normalize(rows)) {
		return std::nullopt;
	}
	if (d == 0) {
		return std::vector<BigInt>{};
	}
	LpResult lp = lp_over_free(rows, d, {});
	if (lp.status != LpResult::Status::optimal) {
		return std::nullopt;
	}
	for (std::size_t j = 0; j < d; ++j) {
		const Rat& v = lp.x[j];
		if (boost::multiprecision::denominator(v) == 1) {
			continue;
		}
		BigInt lo = floor_div(boost::multiprecision::numerator(v), boost::multiprecision::denominator(v));
		Row unit;
		unit.a.assign(d, 0);
		unit.a[j] = 1;
		for (int side = 0; side < 2; ++side) {
			Row br = unit;
			br.rel = side == 0 ? Relation::le : Relation::ge;
			br.c = side == 0 ? lo : lo + 1;
			auto branch = rows;
			branch.push_back(std::move(br));
			if (auto pt = integer_point(std::move(branch), d)) {
				return pt;
			}
		}
		return std::nullopt;
	}
	std::vector<BigInt> t(d);
	for (std::size_t j = 0; j < d; ++j) {
		t[j] = boost::multiprecision::numerator(lp.x[j]);
	}
	return t;
}

// --- lexicographic minimization ---------------------------------------------

BigInt bound_for(const std::vector<Row>& rows, std::size_t n) {
	std::size_t ineq = 0;
	BigInt a = 1;
	for (const auto& r : rows) {
		if (r.rel != Relation::eq) {
			++ineq;
		}
		for (const auto& v : r.a) {
			a = std::max(a, BigInt(abs(v)));
		}
		a = std::max(a, BigInt(abs(r.c)));
	}
	const std::size_t m = rows.size() + 1;
	const BigInt base = BigInt(m) * a;
	return BigInt(n + ineq + 1) * boost::multiprecision::pow(base, static_cast<unsigned>(2 * m + 1));
}

/// Least value of x_0 over non-negative integer points of `rows` with every
/// coordinate at most `box`.
std::optional<BigInt> min_first(const std::vector<Row>& rows, std::size_t n, const BigInt& box) {
	std::vector<Row> eqs;
	std::vector<Row> ineqs;
	for (const auto& r : rows) {
		(r.rel == Relation::eq ? eqs : ineqs).push_back(r);
	}
	auto lat = solve_equalities(eqs, n);
	if (!lat) {
		return std::nullopt;
	}
	std::vector<Row> trows;
	for (const auto& r : ineqs) {
		trows.push_back(to_lattice(r, *lat));
	}
	for (std::size_t i = 0; i < n; ++i) {
		Row r;
		r.a.assign(n, 0);
		r.a[i] = 1;
		r.rel = Relation::ge;
		r.c = 0;
		trows.push_back(to_lattice(r, *lat));
		r.rel = Relation::le;
		r.c = box;
		trows.push_back(to_lattice(r, *lat));
	}
	if (!normalize(trows)) {
		return std::nullopt;
	}
	const std::size_t d = lat->dim;
	const std::vector<BigInt>& obj = lat->k[0];
	BigInt g = 0;
	for (const auto& v : obj) {
		g = boost::multiprecision::gcd(g, v);
	}
	if (g == 0) {
		if (integer_point(trows, d)) {
			return lat->x0[0];
		}
		return std::nullopt;
	}
	// x_0 = x0[0] + obj.t ranges over x0[0] + g Z.
	std::optional<BigInt> floor_value;
	for (;;) {
		auto lp_rows = trows;
		if (floor_value) {
			Row r{obj, Relation::ge, *floor_value - lat->x0[0]};
			lp_rows.push_back(std::move(r));
		}
		LpResult lp = lp_over_free(lp_rows, d, obj);
		if (lp.status != LpResult::Status::optimal) {
			return std::nullopt;
		}
		BigInt v = ceil_rat(lp.value + Rat(lat->x0[0]));
		BigInt off = (v - lat->x0[0]) % g;
		if (off < 0) {
			off += g;
		}
		if (off != 0) {
			v += g - off;
		}
		auto probe = trows;
		probe.push_back(Row{obj, Relation::eq, v - lat->x0[0]});
		if (integer_point(std::move(probe), d)) {
			return v;
		}
		floor_value = v + 1;
	}
}

std::vector<Row> rows_of(const DiophantineSystem& sys) {
	std::vector<Row> rows;
	for (const auto& c : sys.constraints) {
		rows.push_back(Row{c.coeffs, c.rel, c.constant});
	}
	return rows;
}

} // namespace

std::size_t DiophantineSystem::index_of(const std::string& var) const {
	auto it = std::find(variables.begin(), variables.end(), var);
	if (it == variables.end()) {
		throw Error("undeclared variable " + var);
	}
	return static_cast<std::size_t>(it - variables.begin());
}

void DiophantineSystem::add(const std::map<std::string, BigInt>& coeffs, Relation rel, BigInt constant) {
	Constraint c;
	c.coeffs.assign(variables.size(), 0);
	for (const auto& [v, k] : coeffs) {
		c.coeffs[index_of(v)] += k;
	}
	c.rel = rel;
	c.constant = std::move(constant);
	constraints.push_back(std::move(c));
}

void DiophantineSystem::add(const LinearConstraint& lc) {
	for (const auto& [v, k] : lc.coeffs) {
		if (std::find(variables.begin(), variables.end(), v) == variables.end()) {
			variables.push_back(v);
			for (auto& c : constraints) {
				c.coeffs.emplace_back(0);
			}
		}
	}
	std::map<std::string, BigInt> coeffs;
	for (const auto& [v, k] : lc.coeffs) {
		coeffs[v] = k;
	}
	add(coeffs, lc.rel, lc.constant);
}

bool DiophantineSystem::satisfied_by(const std::vector<BigInt>& values) const {
	if (values.size() != variables.size()) {
		return false;
	}
	for (const auto& v : values) {
		if (v < 0) {
			return false;
		}
	}
	return satisfies(rows_of(*this), values);
}

std::map<std::string, BigInt> Solution::assignment(const DiophantineSystem& sys) const {
	std::map<std::string, BigInt> out;
	for (std::size_t i = 0; i < values.size() && i < sys.variables.size(); ++i) {
		out[sys.variables[i]] = values[i];
	}
	return out;
}

BigInt solution_bound(const DiophantineSystem& sys) {
	auto rows = rows_of(sys);
	normalize(rows);
	return bound_for(rows, sys.variables.size());
}

Solution solve_nonneg(const DiophantineSystem& sys) {
	const std::size_t n = sys.variables.size();
	for (const auto& c : sys.constraints) {
		if (c.coeffs.size() != n) {
			throw Error("constraint arity does not match the declared variables");
		}
	}
	Solution sol;
	auto rows = rows_of(sys);
	if (!normalize(rows)) {
		return sol;
	}
	std::vector<BigInt> zero(n, 0);
	if (satisfies(rows, zero)) {
		sol.sat = true;
		sol.values = std::move(zero);
		return sol;
	}
	std::vector<BigInt> fixed;
	for (std::size_t k = 0; k < n; ++k) {
		// Substitute the fixed prefix; the remaining variables are k..n-1.
		std::vector<Row> cur;
		for (const auto& r : rows) {
			Row s;
			s.rel = r.rel;
			s.c = r.c;
			for (std::size_t j = 0; j < k; ++j) {
				s.c -= r.a[j] * fixed[j];
			}
			s.a.assign(r.a.begin() + static_cast<std::ptrdiff_t>(k), r.a.end());
			cur.push_back(std::move(s));
		}
		if (!normalize(cur)) {
			throw Error("internal: lexicographic prefix lost feasibility");
		}
		auto v = min_first(cur, n - k, bound_for(cur, n - k));
		if (!v) {
			if (k == 0) {
				return sol;
			}
			throw Error("internal: lexicographic prefix lost feasibility");
		}
		fixed.push_back(*v);
	}
	sol.sat = true;
	sol.values = std::move(fixed);
	return sol;
}

} // namespace wordeq::diophantine
