#pragma once

#include <iosfwd>
#include <string>

#include "hpfrac/extension.hpp"
#include "hpfrac/mesh.hpp"
#include "hpfrac/sinc.hpp"

namespace hpfrac {

// Mesh text format, one record per line:
//   hpfrac-mesh 1
//   domain <square|lshape|slit|custom>
//   elements <N>
//   element <id> <x0> <y0> <x1> <y1> <x2> <y2> <x3> <y3> <patch> <ring>
//   boundary_edges <M>
//   bedge <element> <local edge> <xa> <ya> <xb> <yb>
void write_mesh(std::ostream& os, const Mesh2D& mesh);
/// Rebuilds a mesh on the given domain from the element records.
Mesh2D read_mesh(std::istream& is, const PolygonDomain& domain);
/// Domain named in the header of a mesh file (builtins only).
PolygonDomain read_mesh_domain(std::istream& is);

// Domain text format:
//   hpfrac-domain 1
//   vertices <N>      followed by N lines "x y"
//   edges <M>         followed by M lines "a b" or "a b slit"
//   cells <K>         followed by K lines "x0 y0 x1 y1" (macro layout)
PolygonDomain read_domain(std::istream& is);
void write_domain(std::ostream& os, const PolygonDomain& domain);

// Field text format:
//   hpfrac-field 1
//   degree <q>
//   coefficients <n>  followed by n values
void write_field(std::ostream& os, const Field& field);

/// JSON summary of a solve: per-mode or per-node records and the functional.
std::string extension_summary_json(const ExtensionSolution& sol, const std::string& domain);
std::string sinc_summary_json(const SincSolution& sol, const std::string& domain);

}  // namespace hpfrac
