#include <duflo/sympoly.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace duflo {

unsigned MultiIndex::degree() const {
  unsigned d = 0;
  for (const auto& [var, exp] : e) d += exp;
  return d;
}

unsigned MultiIndex::exponent(unsigned var) const {
  auto it = e.find(var);
  return it == e.end() ? 0u : it->second;
}

void MultiIndex::set_exponent(unsigned var, unsigned exp) {
  if (exp == 0)
    e.erase(var);
  else
    e[var] = exp;
}

MultiIndex MultiIndex::times(const MultiIndex& other) const {
  MultiIndex out = *this;
  for (const auto& [var, exp] : other.e) out.e[var] += exp;
  return out;
}

Rational MultiIndex::factorial_product() const {
  Rational f(1);
  for (const auto& [var, exp] : e) f *= factorial(exp);
  return f;
}

std::vector<unsigned> MultiIndex::letters() const {
  std::vector<unsigned> out;
  for (const auto& [var, exp] : e)
    for (unsigned i = 0; i < exp; ++i) out.push_back(var);
  return out;
}

bool GrlexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // Walk both sparse maps in ascending variable order; the first variable
  // whose exponents differ decides.
  auto ia = a.e.begin(), ib = b.e.begin();
  while (ia != a.e.end() || ib != b.e.end()) {
    unsigned va = ia == a.e.end() ? ~0u : ia->first;
    unsigned vb = ib == b.e.end() ? ~0u : ib->first;
    if (va < vb) return false;  // a has a positive exponent where b has 0
    if (vb < va) return true;
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  return false;
}

SymPoly SymPoly::zero(Variance v, unsigned nvars) {
  SymPoly p;
  p.variance = v;
  p.nvars = nvars;
  return p;
}

SymPoly SymPoly::constant(Variance v, unsigned nvars, const Rational& c) {
  SymPoly p = zero(v, nvars);
  if (c != 0) p.terms.emplace(MultiIndex{}, c);
  return p;
}

SymPoly SymPoly::generator(Variance v, unsigned nvars, unsigned var) {
  if (var >= nvars) throw std::invalid_argument("generator index out of range");
  MultiIndex mi;
  mi.set_exponent(var, 1);
  return monomial(v, nvars, mi, Rational(1));
}

SymPoly SymPoly::monomial(Variance v, unsigned nvars, const MultiIndex& mi,
                          const Rational& c) {
  SymPoly p = zero(v, nvars);
  if (c != 0) p.terms.emplace(mi, c);
  return p;
}

unsigned SymPoly::degree() const {
  unsigned d = 0;
  for (const auto& [mi, c] : terms) d = std::max(d, mi.degree());
  return d;
}

bool SymPoly::is_homogeneous(unsigned d) const {
  for (const auto& [mi, c] : terms)
    if (mi.degree() != d) return false;
  return true;
}

Rational SymPoly::coefficient(const MultiIndex& mi) const {
  auto it = terms.find(mi);
  return it == terms.end() ? Rational(0) : it->second;
}

void SymPoly::add_term(const MultiIndex& mi, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(mi, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

SymPoly SymPoly::homogeneous_part(unsigned d) const {
  SymPoly out = zero(variance, nvars);
  for (const auto& [mi, c] : terms)
    if (mi.degree() == d) out.terms.emplace(mi, c);
  return out;
}

static void check_compatible(const SymPoly& a, const SymPoly& b) {
  if (a.variance != b.variance || a.nvars != b.nvars)
    throw std::invalid_argument("polynomials live in different spaces");
}

SymPoly& SymPoly::operator+=(const SymPoly& other) {
  check_compatible(*this, other);
  for (const auto& [mi, c] : other.terms) add_term(mi, c);
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& other) {
  check_compatible(*this, other);
  for (const auto& [mi, c] : other.terms) add_term(mi, -c);
  return *this;
}

SymPoly SymPoly::operator+(const SymPoly& other) const {
  SymPoly out = *this;
  out += other;
  return out;
}

SymPoly SymPoly::operator-(const SymPoly& other) const {
  SymPoly out = *this;
  out -= other;
  return out;
}

SymPoly SymPoly::operator*(const SymPoly& other) const {
  return mul_truncated(*this, other, ~0u);
}

SymPoly& SymPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [mi, coeff] : terms) coeff *= c;
  return *this;
}

SymPoly SymPoly::operator*(const Rational& c) const {
  SymPoly out = *this;
  out *= c;
  return out;
}

bool SymPoly::operator==(const SymPoly& other) const {
  return variance == other.variance && nvars == other.nvars &&
         terms == other.terms;
}

SymPoly mul_truncated(const SymPoly& a, const SymPoly& b, unsigned max_degree) {
  check_compatible(a, b);
  SymPoly out = SymPoly::zero(a.variance, a.nvars);
  for (const auto& [ma, ca] : a.terms) {
    unsigned da = ma.degree();
    if (da > max_degree) continue;
    for (const auto& [mb, cb] : b.terms) {
      if (da + mb.degree() > max_degree) continue;
      out.add_term(ma.times(mb), ca * cb);
    }
  }
  return out;
}

Rational pair_poly(const SymPoly& dual, const SymPoly& primal) {
  if (dual.variance != Variance::Dual || primal.variance != Variance::Primal)
    throw std::invalid_argument("pairing needs a dual and a primal argument");
  if (dual.nvars != primal.nvars)
    throw std::invalid_argument("pairing arguments over different bases");
  Rational total(0);
  // Orthogonality of distinct monomials: only matching multi-indices pair.
  const auto& small = dual.terms.size() <= primal.terms.size() ? dual : primal;
  const auto& large = dual.terms.size() <= primal.terms.size() ? primal : dual;
  for (const auto& [mi, c] : small.terms) {
    auto it = large.terms.find(mi);
    if (it != large.terms.end())
      total += c * it->second * mi.factorial_product();
  }
  return total;
}

Rational pair_poly_permutation(const SymPoly& dual, const SymPoly& primal) {
  if (dual.variance != Variance::Dual || primal.variance != Variance::Primal)
    throw std::invalid_argument("pairing needs a dual and a primal argument");
  if (dual.nvars != primal.nvars)
    throw std::invalid_argument("pairing arguments over different bases");
  Rational total(0);
  for (const auto& [md, cd] : dual.terms) {
    std::vector<unsigned> phis = md.letters();
    for (const auto& [mp, cp] : primal.terms) {
      std::vector<unsigned> xs = mp.letters();
      if (phis.size() != xs.size()) continue;
      const std::size_t d = phis.size();
      // Σ over all d! assignments σ of Π δ(φ_i = x_{σ(i)}); repeated letters
      // are counted with multiplicity, exactly as the definition demands.
      std::vector<bool> used(d, false);
      Rational count(0);
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == d) {
          count += 1;
          return;
        }
        for (std::size_t j = 0; j < d; ++j) {
          if (!used[j] && xs[j] == phis[i]) {
            used[j] = true;
            rec(i + 1);
            used[j] = false;
          }
        }
      };
      rec(0);
      total += cd * cp * count;
    }
  }
  return total;
}

Rational pair_tensor(const std::vector<SymPoly>& duals,
                     const std::vector<SymPoly>& primals) {
  if (duals.size() != primals.size())
    throw std::invalid_argument("tensor pairing arity mismatch");
  Rational prod(1);
  for (std::size_t i = 0; i < duals.size(); ++i) {
    prod *= pair_poly(duals[i], primals[i]);
    if (prod == 0) return prod;
  }
  return prod;
}

std::vector<std::pair<SymPoly, SymPoly>> coproduct(const SymPoly& p) {
  // Collect Δ(p) = Σ c_α Π_i Σ_{β_i ≤ α_i} C(α_i, β_i) x_i^{β_i} ⊗ x_i^{α_i-β_i}
  // merged over the (left, right) monomial pair.
  std::map<std::pair<MultiIndex, MultiIndex>, Rational,
           bool (*)(const std::pair<MultiIndex, MultiIndex>&,
                    const std::pair<MultiIndex, MultiIndex>&)>
      acc([](const std::pair<MultiIndex, MultiIndex>& a,
             const std::pair<MultiIndex, MultiIndex>& b) {
        GrlexLess less;
        if (less(a.first, b.first)) return true;
        if (less(b.first, a.first)) return false;
        return less(a.second, b.second);
      });
  for (const auto& [mi, c] : p.terms) {
    std::vector<std::pair<unsigned, unsigned>> vars(mi.e.begin(), mi.e.end());
    // Enumerate all β ≤ α coordinatewise.
    std::vector<unsigned> beta(vars.size(), 0);
    while (true) {
      MultiIndex left, right;
      Rational coeff = c;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        left.set_exponent(vars[i].first, beta[i]);
        right.set_exponent(vars[i].first, vars[i].second - beta[i]);
        coeff *= binomial(vars[i].second, beta[i]);
      }
      auto key = std::make_pair(left, right);
      auto [it, inserted] = acc.emplace(key, coeff);
      if (!inserted) it->second += coeff;
      // Odometer increment over 0..α_i.
      std::size_t k = 0;
      while (k < vars.size() && beta[k] == vars[k].second) beta[k++] = 0;
      if (k == vars.size()) break;
      ++beta[k];
    }
  }
  std::vector<std::pair<SymPoly, SymPoly>> out;
  for (const auto& [key, coeff] : acc) {
    if (coeff == 0) continue;
    out.emplace_back(SymPoly::monomial(p.variance, p.nvars, key.first, coeff),
                     SymPoly::monomial(p.variance, p.nvars, key.second,
                                       Rational(1)));
  }
  return out;
}

SymPoly apply_diff_operator(const SymPoly& delta, const SymPoly& p) {
  if (delta.variance != Variance::Dual || p.variance != Variance::Primal)
    throw std::invalid_argument(
        "differential operator must be dual, operand primal");
  if (delta.nvars != p.nvars)
    throw std::invalid_argument("operator and operand over different bases");
  SymPoly out = SymPoly::zero(Variance::Primal, p.nvars);
  for (const auto& [beta, cd] : delta.terms) {
    for (const auto& [alpha, cp] : p.terms) {
      Rational coeff = cd * cp;
      MultiIndex rest = alpha;
      bool ok = true;
      for (const auto& [var, bexp] : beta.e) {
        unsigned aexp = alpha.exponent(var);
        if (bexp > aexp) {
          ok = false;
          break;
        }
        // Falling factorial α_i (α_i-1) ... (α_i-β_i+1) from ∂^β_i x^α_i.
        for (unsigned t = 0; t < bexp; ++t) coeff *= Rational(aexp - t);
        rest.set_exponent(var, aexp - bexp);
      }
      if (ok) out.add_term(rest, coeff);
    }
  }
  return out;
}

std::vector<std::size_t> rref_in_place(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t sel = row;
    while (sel < m.rows && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows) continue;
    if (sel != row)
      for (std::size_t c = col; c < m.cols; ++c)
        std::swap(m.at(sel, c), m.at(row, c));
    Rational inv = Rational(1) / m.at(row, col);
    for (std::size_t c = col; c < m.cols; ++c) m.at(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Rational f = m.at(r, col);
      for (std::size_t c = col; c < m.cols; ++c)
        m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rational>> kernel_basis(Matrix m) {
  std::size_t cols = m.cols;
  std::vector<std::size_t> pivots = rref_in_place(m);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -m.at(r, free);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return basis;
  // Canonicalize: reduced echelon form of the kernel vectors themselves.
  Matrix k(basis.size(), cols);
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) k.at(r, c) = basis[r][c];
  std::vector<std::size_t> kp = rref_in_place(k);
  std::vector<std::vector<Rational>> out;
  for (std::size_t r = 0; r < kp.size(); ++r) {
    std::vector<Rational> v(cols);
    for (std::size_t c = 0; c < cols; ++c) v[c] = k.at(r, c);
    out.push_back(std::move(v));
  }
  return out;
}

static void monomials_rec(unsigned nvars, unsigned var, unsigned left,
                          MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (var + 1 == nvars) {
    cur.set_exponent(var, left);
    out.push_back(cur);
    cur.set_exponent(var, 0);
    return;
  }
  for (unsigned e = 0; e <= left; ++e) {
    cur.set_exponent(var, e);
    monomials_rec(nvars, var + 1, left - e, cur, out);
  }
  cur.set_exponent(var, 0);
}

std::vector<MultiIndex> monomials_of_degree(unsigned nvars, unsigned d) {
  std::vector<MultiIndex> out;
  if (nvars == 0) {
    if (d == 0) out.push_back(MultiIndex{});
    return out;
  }
  MultiIndex cur;
  monomials_rec(nvars, 0, d, cur, out);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

}  // namespace duflo
