#pragma once

// Canonical text forms and file formats.  Printing is deterministic and
// byte-stable; every printer here has a parser that round-trips its output.
//
//   polynomials:  "h^2 + 4*e*f", dual names carry a trailing star:
//                 "1/6*h*^2 + 1/6*e**f*"; terms ordered by (degree ascending,
//                 lex descending within a degree).
//   U elements:   words join generator names with '·' (U+00B7):
//                 "1 - 2*h + 4*e·f + h·h"; terms ordered by (length, lex).
//   structure constants (JSON): {"name", "dim", "basis", "brackets":
//                 [{"i", "j", "terms": [{"k", "coeff": "p/q"}]}]}, 1-based,
//                 i < j, duplicate (i, j) rejected.
//   diagrams:     "skeleton: capped(3); vertices: 3; arrows: s1.1->v1.in1, ..."
//                 with 1-based strands/slots/vertices and an optional
//                 "coeff: p/q; " prefix.

#include <duflo/diagrams.hpp>
#include <duflo/enveloping.hpp>
#include <duflo/liealg.hpp>
#include <duflo/sympoly.hpp>

#include <string>

namespace duflo {

std::string print_poly(const StructureConstants& L, const SymPoly& p);
// Same, scaled by the least common denominator (integer coefficients,
// positive leading coefficient) — the display form for basis vectors.
std::string print_poly_cleared(const StructureConstants& L, const SymPoly& p);
SymPoly parse_poly(const StructureConstants& L, Variance v,
                   const std::string& text);

std::string print_uelement(const StructureConstants& L, const UElement& x);
UElement parse_uelement(const StructureConstants& L, const std::string& text);

StructureConstants parse_structure_constants_json(const std::string& text);
std::string structure_constants_to_json(const StructureConstants& L);
StructureConstants load_structure_constants_file(const std::string& path);

std::string print_diagram(const ArrowDiagram& d);
ArrowDiagram parse_diagram(const std::string& text);

}  // namespace duflo
