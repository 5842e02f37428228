#include <duflo/duflo_map.hpp>

#include <stdexcept>

namespace duflo {

WheelSeries wheel_coefficients(unsigned order) {
  if (order < 2 || order % 2 != 0)
    throw std::invalid_argument("wheel_coefficients needs an even order >= 2");
  Series f = sinh_half_over_half(order);
  Series g = series_log(f);
  WheelSeries out;
  out.order = order;
  for (unsigned n = 2; n <= order; n += 2)
    out.c[n] = g.coeff[n] / Rational(4);
  return out;
}

// exp of a polynomial with zero constant term, truncated by total degree.
static SymPoly poly_exp(const SymPoly& u, unsigned order) {
  if (u.coefficient(MultiIndex{}) != 0)
    throw std::invalid_argument("poly_exp needs zero constant term");
  SymPoly result = SymPoly::constant(u.variance, u.nvars, Rational(1));
  SymPoly power = SymPoly::constant(u.variance, u.nvars, Rational(1));
  Rational fact(1);
  for (unsigned j = 1; j <= order; ++j) {
    power = mul_truncated(power, u, order);
    if (power.is_zero()) break;
    fact *= j;
    result += power * (Rational(1) / fact);
  }
  return result;
}

DufloOperator j_half_operator(const StructureConstants& L, unsigned order) {
  if (order % 2 != 0)
    throw std::invalid_argument("j_half_operator needs an even order");
  DufloOperator d;
  d.order = order;
  SymPoly s = SymPoly::zero(Variance::Dual, L.dim);
  if (order >= 2) {
    WheelSeries w = wheel_coefficients(order);
    for (const auto& [two_n, c] : w.c)
      s += trace_ad_power(L, two_n) * (Rational(2) * c);
  }
  d.total = poly_exp(s, order);
  return d;
}

DufloOperator j_half_disabled(const StructureConstants& L, unsigned order) {
  DufloOperator d;
  d.order = order;
  d.total = SymPoly::constant(Variance::Dual, L.dim, Rational(1));
  return d;
}

SymPoly j_half_via_det(const StructureConstants& L, unsigned order) {
  if (order % 2 != 0)
    throw std::invalid_argument("j_half_via_det needs an even order");
  const unsigned m = L.dim;
  using PolyMatrix = std::vector<std::vector<SymPoly>>;
  auto zero_matrix = [&] {
    return PolyMatrix(m,
                      std::vector<SymPoly>(m, SymPoly::zero(Variance::Dual, m)));
  };
  auto mat_mul = [&](const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix out = zero_matrix();
    for (unsigned r = 0; r < m; ++r)
      for (unsigned t = 0; t < m; ++t) {
        if (a[r][t].is_zero()) continue;
        for (unsigned c = 0; c < m; ++c)
          out[r][c] += mul_truncated(a[r][t], b[t][c], order);
      }
    return out;
  };

  // F = sinh(M/2)/(M/2) = Σ_n (M²)^n / (4^n (2n+1)!), truncated by degree;
  // the entries of (M²)^n are homogeneous of degree 2n.
  PolyMatrix ad = ad_matrix_symbolic(L);
  PolyMatrix m2 = mat_mul(ad, ad);
  PolyMatrix f = zero_matrix();
  for (unsigned r = 0; r < m; ++r)
    f[r][r] = SymPoly::constant(Variance::Dual, m, Rational(1));
  PolyMatrix power = f;  // (M²)^0 = I
  Rational pow4(1);
  for (unsigned n = 1; 2 * n <= order; ++n) {
    power = mat_mul(power, m2);
    pow4 *= 4;
    Rational coeff = Rational(1) / (pow4 * factorial(2 * n + 1));
    for (unsigned r = 0; r < m; ++r)
      for (unsigned c = 0; c < m; ++c) f[r][c] += power[r][c] * coeff;
  }

  // log F = Σ_j (-1)^{j+1} G^j / j with G = F - I of degree >= 2.
  PolyMatrix g = f;
  for (unsigned r = 0; r < m; ++r)
    g[r][r] -= SymPoly::constant(Variance::Dual, m, Rational(1));
  PolyMatrix gpow = g;
  PolyMatrix logf = zero_matrix();
  for (unsigned j = 1; 2 * j <= order; ++j) {
    if (j > 1) gpow = mat_mul(gpow, g);
    Rational coeff = Rational(j % 2 == 1 ? 1 : -1) / Rational(j);
    bool all_zero = true;
    for (unsigned r = 0; r < m; ++r)
      for (unsigned c = 0; c < m; ++c) {
        if (!gpow[r][c].is_zero()) all_zero = false;
        logf[r][c] += gpow[r][c] * coeff;
      }
    if (all_zero) break;
  }

  SymPoly tr = SymPoly::zero(Variance::Dual, m);
  for (unsigned r = 0; r < m; ++r) tr += logf[r][r];
  SymPoly det = poly_exp(tr, order);

  // Square root with constant term 1, degree by degree:
  // s_d = (det_d - Σ_{0<k<d} s_k s_{d-k}) / 2.
  std::vector<SymPoly> s(order + 1, SymPoly::zero(Variance::Dual, m));
  s[0] = SymPoly::constant(Variance::Dual, m, Rational(1));
  SymPoly root = s[0];
  for (unsigned d = 1; d <= order; ++d) {
    SymPoly acc = det.homogeneous_part(d);
    for (unsigned k = 1; k < d; ++k)
      acc -= mul_truncated(s[k], s[d - k], order);
    s[d] = acc * Rational(1, 2);
    root += s[d];
  }
  return root;
}

UpsilonTruncation build_upsilon(const StructureConstants& L, unsigned order,
                                bool wheels) {
  UpsilonTruncation up;
  up.order = order;
  up.wheels = wheels;
  DufloOperator delta = wheels ? j_half_operator(L, order - order % 2)
                               : j_half_disabled(L, order);
  PbwNormalizer norm(L);
  for (unsigned k = 0; k <= order; ++k) {
    for (const MultiIndex& alpha : monomials_of_degree(L.dim, k)) {
      UpsilonTerm term;
      // δ truncated to what still fits under the total order.
      SymPoly delta_trunc = SymPoly::zero(Variance::Dual, L.dim);
      for (unsigned r = 0; r + k <= order; ++r)
        delta_trunc += delta.total.homogeneous_part(r);
      term.dual =
          SymPoly::monomial(Variance::Dual, L.dim, alpha,
                            Rational(1) / alpha.factorial_product()) *
          delta_trunc;
      term.u = symmetrize(
          norm, SymPoly::monomial(Variance::Primal, L.dim, alpha, Rational(1)));
      up.terms.push_back(std::move(term));
    }
  }
  return up;
}

UElement duflo_pairing(const StructureConstants& L,
                       const UpsilonTruncation& upsilon, const SymPoly& P) {
  if (P.variance != Variance::Primal || P.nvars != L.dim)
    throw std::invalid_argument("duflo_pairing takes P in S(g)");
  if (P.degree() > upsilon.order)
    throw std::invalid_argument("deg P exceeds the truncation order");
  UElement out;
  for (const UpsilonTerm& t : upsilon.terms) {
    Rational c = pair_poly(t.dual, P);
    if (c != 0) out += t.u * c;
  }
  return out;
}

UElement duflo_operator_form(const StructureConstants& L,
                             const DufloOperator& delta, const SymPoly& P) {
  if (P.variance != Variance::Primal || P.nvars != L.dim)
    throw std::invalid_argument("duflo_operator_form takes P in S(g)");
  if (P.degree() > delta.order)
    throw std::invalid_argument("deg P exceeds the truncation order");
  return symmetrize(L, apply_diff_operator(delta.total, P));
}

UElement duflo_map(const StructureConstants& L, const SymPoly& P,
                   unsigned order, bool wheels) {
  return duflo_pairing(L, build_upsilon(L, order, wheels), P);
}

CheckReport check_multiplicative(const StructureConstants& L,
                                 const UpsilonTruncation& up, const SymPoly& P,
                                 const SymPoly& Q) {
  CheckReport report;
  SymPoly PQ = P * Q;
  if (PQ.degree() > up.order) {
    report.ok = false;
    report.detail = "deg(PQ) exceeds the truncation order";
    return report;
  }
  PbwNormalizer norm(L);

  UElement d_pq = duflo_pairing(L, up, PQ);

  // ⟨(Δ⊗1)Υ, P⊗Q⟩: coproduct every dual part, pair the two legs.
  UElement via_coproduct;
  for (const UpsilonTerm& t : up.terms) {
    for (const auto& [left, right] : coproduct(t.dual)) {
      Rational c = pair_tensor({left, right}, {P, Q});
      if (c != 0) via_coproduct += t.u * c;
    }
  }

  // ⟨Υ¹³Υ²³, P⊗Q⟩: expand the product of the two embeddings term by term;
  // the third legs multiply in U(g).
  UElement via_tensor_square;
  for (const UpsilonTerm& t1 : up.terms) {
    Rational c1 = pair_poly(t1.dual, P);
    if (c1 == 0) continue;
    for (const UpsilonTerm& t2 : up.terms) {
      Rational c2 = pair_poly(t2.dual, Q);
      if (c2 == 0) continue;
      via_tensor_square += u_multiply(norm, t1.u, t2.u) * (c1 * c2);
    }
  }

  UElement product = u_multiply(norm, duflo_pairing(L, up, P),
                                duflo_pairing(L, up, Q));

  if (!(d_pq == via_coproduct)) {
    report.ok = false;
    report.detail = "pairing-coproduct compatibility failed on Upsilon";
  } else if (!(via_coproduct == via_tensor_square)) {
    report.ok = false;
    report.detail = "tensor-form identity (Δ⊗1)Υ = Υ¹³Υ²³ failed under pairing";
  } else if (!(via_tensor_square == product)) {
    report.ok = false;
    report.detail = "Υ¹³Υ²³ pairing disagrees with D(P)·D(Q)";
  } else if (!(d_pq == product)) {
    report.ok = false;
    report.detail = "D(PQ) != D(P)D(Q)";
  } else {
    report.detail = "D(PQ) = D(P)D(Q), both intermediates agree";
  }
  return report;
}

CheckReport check_multiplicative(const StructureConstants& L, const SymPoly& P,
                                 const SymPoly& Q, unsigned order,
                                 bool wheels) {
  return check_multiplicative(L, build_upsilon(L, order, wheels), P, Q);
}

CheckReport check_invariance(const StructureConstants& L,
                             const UpsilonTruncation& up, const SymPoly& P) {
  CheckReport report;
  UElement image = duflo_pairing(L, up, P);
  for (unsigned i = 0; i < L.dim; ++i) {
    if (!adjoint_action_u(L, i, image).is_zero()) {
      report.ok = false;
      report.detail =
          "ad_" + L.basis_names[i] + " does not annihilate the image";
      return report;
    }
  }
  report.detail = "image is ad-invariant";
  if (!is_invariant(L, P))
    report.detail += " (note: input P is not invariant)";
  return report;
}

CheckReport check_invariance(const StructureConstants& L, const SymPoly& P,
                             unsigned order) {
  return check_invariance(L, build_upsilon(L, order, true), P);
}

CheckReport check_graded_identity(const StructureConstants& L,
                                  const UpsilonTruncation& up,
                                  const SymPoly& P) {
  CheckReport report;
  UElement image = duflo_pairing(L, up, P);
  SymPoly lead = symbol(L, image, P.degree());
  if (!(lead == P)) {
    report.ok = false;
    report.detail = "symbol(D(P)) != P";
  } else {
    report.detail = "symbol(D(P), deg P) = P";
  }
  return report;
}

CheckReport check_graded_identity(const StructureConstants& L,
                                  const SymPoly& P, unsigned order) {
  return check_graded_identity(L, build_upsilon(L, order, true), P);
}

}  // namespace duflo
