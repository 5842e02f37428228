#include <duflo/liealg.hpp>

#include <algorithm>
#include <stdexcept>

namespace duflo {

void StructureConstants::set_bracket(unsigned i, unsigned j, SparseVec terms) {
  if (i >= j) throw std::invalid_argument("set_bracket needs i < j");
  if (j >= dim) throw std::invalid_argument("set_bracket index out of range");
  SparseVec cleaned;
  for (auto& [k, c] : terms) {
    if (k >= dim) throw std::invalid_argument("bracket target out of range");
    if (c != 0) cleaned.emplace_back(k, c);
  }
  std::sort(cleaned.begin(), cleaned.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t t = 1; t < cleaned.size(); ++t)
    if (cleaned[t].first == cleaned[t - 1].first)
      throw std::invalid_argument("duplicate bracket target");
  if (cleaned.empty())
    table.erase({i, j});
  else
    table[{i, j}] = std::move(cleaned);
}

SparseVec StructureConstants::bracket(unsigned i, unsigned j) const {
  if (i == j) return {};
  bool flip = i > j;
  auto it = table.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == table.end()) return {};
  SparseVec out = it->second;
  if (flip)
    for (auto& [k, c] : out) c = -c;
  return out;
}

std::vector<Rational> StructureConstants::bracket_vec(
    const std::vector<Rational>& x, const std::vector<Rational>& y) const {
  if (x.size() != dim || y.size() != dim)
    throw std::invalid_argument("coordinate vector of wrong dimension");
  std::vector<Rational> out(dim, Rational(0));
  for (const auto& [ij, terms] : table) {
    Rational f = x[ij.first] * y[ij.second] - x[ij.second] * y[ij.first];
    if (f == 0) continue;
    for (const auto& [k, c] : terms) out[k] += f * c;
  }
  return out;
}

Rational StructureConstants::c(unsigned i, unsigned j, unsigned k) const {
  for (const auto& [t, coeff] : bracket(i, j))
    if (t == k) return coeff;
  return Rational(0);
}

std::vector<BracketTriple> bracket_triples(const StructureConstants& L) {
  std::vector<BracketTriple> out;
  for (const auto& [ij, terms] : L.table) {
    for (const auto& [k, c] : terms) {
      out.push_back({ij.first, ij.second, k, c});
      out.push_back({ij.second, ij.first, k, -c});
    }
  }
  return out;
}

JacobiReport validate_jacobi(const StructureConstants& L) {
  JacobiReport report;
  for (unsigned i = 0; i < L.dim; ++i) {
    for (unsigned j = i + 1; j < L.dim; ++j) {
      for (unsigned k = j + 1; k < L.dim; ++k) {
        // [[b_i, b_j], b_k] + [[b_j, b_k], b_i] + [[b_k, b_i], b_j]
        std::vector<Rational> total(L.dim, Rational(0));
        auto add_nested = [&](unsigned a, unsigned b, unsigned c) {
          for (const auto& [l, cab] : L.bracket(a, b))
            for (const auto& [m, clc] : L.bracket(l, c)) total[m] += cab * clc;
        };
        add_nested(i, j, k);
        add_nested(j, k, i);
        add_nested(k, i, j);
        for (unsigned m = 0; m < L.dim; ++m)
          if (total[m] != 0) report.violations.push_back({i, j, k, m, total[m]});
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

static StructureConstants make_abelian(unsigned m) {
  StructureConstants L;
  L.name = "abelian" + std::to_string(m);
  L.dim = m;
  for (unsigned i = 1; i <= m; ++i)
    L.basis_names.push_back("b" + std::to_string(i));
  return L;
}

static StructureConstants make_sl2() {
  StructureConstants L;
  L.name = "sl2";
  L.dim = 3;
  L.basis_names = {"h", "e", "f"};
  L.set_bracket(0, 1, {{1, Rational(2)}});   // [h, e] = 2e
  L.set_bracket(0, 2, {{2, Rational(-2)}});  // [h, f] = -2f
  L.set_bracket(1, 2, {{0, Rational(1)}});   // [e, f] = h
  return L;
}

static StructureConstants make_gl2() {
  // Matrix units: [E_ab, E_cd] = δ_bc E_ad - δ_da E_cb.
  StructureConstants L;
  L.name = "gl2";
  L.dim = 4;
  L.basis_names = {"e11", "e12", "e21", "e22"};
  L.set_bracket(0, 1, {{1, Rational(1)}});                     // [e11,e12]=e12
  L.set_bracket(0, 2, {{2, Rational(-1)}});                    // [e11,e21]=-e21
  L.set_bracket(1, 2, {{0, Rational(1)}, {3, Rational(-1)}});  // e11 - e22
  L.set_bracket(1, 3, {{1, Rational(1)}});                     // [e12,e22]=e12
  L.set_bracket(2, 3, {{2, Rational(-1)}});                    // [e21,e22]=-e21
  return L;
}

static StructureConstants make_heisenberg3() {
  StructureConstants L;
  L.name = "heisenberg3";
  L.dim = 3;
  L.basis_names = {"x", "y", "z"};
  L.set_bracket(0, 1, {{2, Rational(1)}});  // [x, y] = z, z central
  return L;
}

static StructureConstants make_axb2() {
  StructureConstants L;
  L.name = "axb2";
  L.dim = 2;
  L.basis_names = {"a", "b"};
  L.set_bracket(0, 1, {{1, Rational(1)}});  // [a, b] = b
  return L;
}

std::vector<std::string> preset_names() {
  return {"abelian1", "abelian2", "abelian3", "abelian4",
          "sl2",      "gl2",      "heisenberg3", "axb2"};
}

StructureConstants preset(const std::string& name) {
  if (name == "sl2") return make_sl2();
  if (name == "gl2") return make_gl2();
  if (name == "heisenberg3") return make_heisenberg3();
  if (name == "axb2") return make_axb2();
  if (name.rfind("abelian", 0) == 0 && name.size() == 8 && name[7] >= '1' &&
      name[7] <= '4')
    return make_abelian(static_cast<unsigned>(name[7] - '0'));
  throw std::invalid_argument("unknown preset: " + name);
}

std::vector<std::vector<Rational>> ad_matrix(const StructureConstants& L,
                                             unsigned i) {
  if (i >= L.dim) throw std::invalid_argument("ad_matrix index out of range");
  std::vector<std::vector<Rational>> m(
      L.dim, std::vector<Rational>(L.dim, Rational(0)));
  for (unsigned j = 0; j < L.dim; ++j)
    for (const auto& [k, c] : L.bracket(i, j)) m[k][j] = c;
  return m;
}

std::vector<std::vector<SymPoly>> ad_matrix_symbolic(
    const StructureConstants& L) {
  std::vector<std::vector<SymPoly>> m(
      L.dim,
      std::vector<SymPoly>(L.dim, SymPoly::zero(Variance::Dual, L.dim)));
  // Entry (k, j) = Σ_i c_{ij}^k x_i.
  for (unsigned i = 0; i < L.dim; ++i)
    for (unsigned j = 0; j < L.dim; ++j)
      for (const auto& [k, c] : L.bracket(i, j))
        m[k][j] += SymPoly::generator(Variance::Dual, L.dim, i) * c;
  return m;
}

SymPoly trace_ad_power(const StructureConstants& L, unsigned k) {
  if (k == 0) throw std::invalid_argument("trace_ad_power needs k >= 1");
  auto ad = ad_matrix_symbolic(L);
  auto power = ad;
  for (unsigned step = 1; step < k; ++step) {
    std::vector<std::vector<SymPoly>> next(
        L.dim,
        std::vector<SymPoly>(L.dim, SymPoly::zero(Variance::Dual, L.dim)));
    for (unsigned r = 0; r < L.dim; ++r)
      for (unsigned t = 0; t < L.dim; ++t) {
        if (power[r][t].is_zero()) continue;
        for (unsigned c = 0; c < L.dim; ++c)
          next[r][c] += power[r][t] * ad[t][c];
      }
    power = std::move(next);
  }
  SymPoly tr = SymPoly::zero(Variance::Dual, L.dim);
  for (unsigned r = 0; r < L.dim; ++r) tr += power[r][r];
  return tr;
}

SparseVec coadjoint_row(const StructureConstants& L, unsigned i, unsigned j) {
  SparseVec out;
  for (unsigned k = 0; k < L.dim; ++k) {
    Rational c = L.c(k, i, j);
    if (c != 0) out.emplace_back(k, c);
  }
  return out;
}

StructureConstants double_algebra(const StructureConstants& L) {
  if (L.is_doubled())
    throw std::invalid_argument("double_algebra of an already doubled algebra");
  unsigned m = L.dim;
  StructureConstants D;
  D.name = "double(" + L.name + ")";
  D.dim = 2 * m;
  D.dual_count = m;
  for (unsigned i = 0; i < m; ++i) D.basis_names.push_back(L.basis_names[i] + "*");
  for (unsigned i = 0; i < m; ++i) D.basis_names.push_back(L.basis_names[i]);
  // [g*, g*] = 0: nothing stored for the first block.
  // Mixed block, stored as (dual d, primal m+p) with d < m <= m+p:
  // [b_d*, b_p] = -[b_p, b_d*] = -Σ_k c_{kp}^d b_k*.
  for (unsigned d = 0; d < m; ++d) {
    for (unsigned p = 0; p < m; ++p) {
      SparseVec row = coadjoint_row(L, p, d);
      for (auto& [k, c] : row) c = -c;
      if (!row.empty()) D.set_bracket(d, m + p, std::move(row));
    }
  }
  // Primal block: a shifted copy of L.
  for (const auto& [ij, terms] : L.table) {
    SparseVec shifted;
    for (const auto& [k, c] : terms) shifted.emplace_back(m + k, c);
    D.set_bracket(m + ij.first, m + ij.second, std::move(shifted));
  }
  return D;
}

}  // namespace duflo
