#pragma once

// The Duflo map in two independently computed forms.
//
// Wheel side: c_{2n} are the Taylor coefficients of (1/4)·log(sinh(x/2)/(x/2));
// the degree-r operators δ_r come from exp(Σ_n 2 c_{2n} Tr(ad_x^{2n})), which
// equals det^{1/2}(sinh(ad_x/2)/(ad_x/2)) — the second route (matrix series,
// exp∘tr∘log, then a polynomial square root) is kept as a cross-check.
//
// Map side: Υ_d = Σ_{|α|+r ≤ d} (1/α!)(b*)^α δ_r ⊗ S(b^α) and
// D(P) = ⟨Υ, P⟩ (pairing form), or equivalently D(P) = Σ_r S(D_r(P)) with
// D_r the differential operator of δ_r (operator form).

#include <duflo/actions.hpp>
#include <duflo/enveloping.hpp>
#include <duflo/liealg.hpp>
#include <duflo/series.hpp>
#include <duflo/sympoly.hpp>

#include <map>
#include <string>
#include <vector>

namespace duflo {

struct WheelSeries {
  unsigned order = 0;
  std::map<unsigned, Rational> c;  // 2n -> c_{2n}, for 2 <= 2n <= order
};

// Exact wheel coefficients up to the given even order >= 2.
WheelSeries wheel_coefficients(unsigned order);

struct DufloOperator {
  unsigned order = 0;
  // Σ_r δ_r as one inhomogeneous dual polynomial (δ_0 = 1 included).
  SymPoly total;

  SymPoly delta(unsigned r) const { return total.homogeneous_part(r); }
};

// δ from the wheel series and symbolic traces, truncated at the given order.
DufloOperator j_half_operator(const StructureConstants& L, unsigned order);

// The control operator with the wheel contribution switched off: δ = 1, so
// both forms of the map degenerate to PBW symmetrization.
DufloOperator j_half_disabled(const StructureConstants& L, unsigned order);

// Same polynomial via det^{1/2}(sinh(ad_x/2)/(ad_x/2)): matrix power series,
// log, trace, exp, then a square root computed degree by degree.
SymPoly j_half_via_det(const StructureConstants& L, unsigned order);

struct UpsilonTerm {
  SymPoly dual;  // (1/α!)(b*)^α · (δ truncated to degree d - |α|)
  UElement u;    // S(b^α), PBW-normalized
};

struct UpsilonTruncation {
  unsigned order = 0;
  bool wheels = true;
  std::vector<UpsilonTerm> terms;  // one per multi-index α, |α| <= order
};

UpsilonTruncation build_upsilon(const StructureConstants& L, unsigned order,
                                bool wheels = true);

// D(P) = Σ_terms ⟨dual, P⟩ · u  — the pairing form.
UElement duflo_pairing(const StructureConstants& L,
                       const UpsilonTruncation& upsilon, const SymPoly& P);

// D(P) = S(D_δ(P)) — the operator form.
UElement duflo_operator_form(const StructureConstants& L,
                             const DufloOperator& delta, const SymPoly& P);

// Pairing form at the default data for the order (convenience for the CLI).
UElement duflo_map(const StructureConstants& L, const SymPoly& P,
                   unsigned order, bool wheels = true);

struct CheckReport {
  bool ok = true;
  std::string detail;
};

// D(PQ) = D(P)·D(Q) for invariant P, Q, together with the proof-chain
// intermediates: ⟨Υ, PQ⟩ = ⟨(Δ⊗1)Υ, P⊗Q⟩ (coproduct compatibility of the
// pairing) and ⟨(Δ⊗1)Υ, P⊗Q⟩ = ⟨Υ¹³Υ²³, P⊗Q⟩ (the tensor form of the
// theorem), each computed by its own route.
CheckReport check_multiplicative(const StructureConstants& L,
                                 const UpsilonTruncation& upsilon,
                                 const SymPoly& P, const SymPoly& Q);
CheckReport check_multiplicative(const StructureConstants& L, const SymPoly& P,
                                 const SymPoly& Q, unsigned order,
                                 bool wheels = true);

// ad_{b_i}(D(P)) = 0 in U(g) for all i.  A non-invariant input P is reported
// in the detail (the map is still computed; invariance of P is a
// precondition of the theorem, not of the computation).
CheckReport check_invariance(const StructureConstants& L,
                             const UpsilonTruncation& upsilon,
                             const SymPoly& P);
CheckReport check_invariance(const StructureConstants& L, const SymPoly& P,
                             unsigned order);

// symbol(D(P), deg P) = P: the map is the identity on associated graded.
CheckReport check_graded_identity(const StructureConstants& L,
                                  const UpsilonTruncation& upsilon,
                                  const SymPoly& P);
CheckReport check_graded_identity(const StructureConstants& L,
                                  const SymPoly& P, unsigned order);

}  // namespace duflo
