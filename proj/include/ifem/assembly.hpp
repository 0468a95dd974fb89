#pragma once

// Global assembly of the bilinear forms and load functionals. Every routine
// walks elements through FeSpace::local_shapes, so interface elements and the
// two space variants need no special casing here.

#include <functional>
#include <vector>

#include "ifem/enrichment.hpp"
#include "ifem/linalg.hpp"
#include "ifem/space.hpp"

namespace ifem {

// Scalar data that may differ between the two sides of the interface.
using SideFn = std::function<double(Vec2, int)>;

// Stiffness matrix of the broken form sum_T sum_pieces beta grad u . grad v.
SparseCSR assemble_stiffness(const FeSpace& space);

// Mass matrix (no coefficient).
SparseCSR assemble_mass(const FeSpace& space);

// (f, v) with a per-side volume density, integrated piecewise.
std::vector<double> assemble_volume_load(const FeSpace& space, const SideFn& f,
                                         int degree = 4);

// Interface line functional <g, v> on the chord polyline; g given either as a
// pointwise function or as one constant per polyline segment.
std::vector<double> assemble_interface_load(const FeSpace& space, const InterfaceMesh& im,
                                            const std::function<double(Vec2)>& g,
                                            int order = 2);
std::vector<double> assemble_interface_load(const FeSpace& space, const InterfaceMesh& im,
                                            const std::vector<double>& segment_values,
                                            int order = 2);

// Moves the enrichment to the right-hand side of the broken form:
// r_i = -sum_pieces beta area grad(y_sigma) . grad(phi_i).
std::vector<double> assemble_enrichment_correction(const FeSpace& space,
                                                   const EnrichmentField& enr);

// (y_sigma, phi_i), needed where the enriched solution enters an L2 pairing.
std::vector<double> assemble_enrichment_mass(const FeSpace& space,
                                             const EnrichmentField& enr);

}  // namespace ifem
