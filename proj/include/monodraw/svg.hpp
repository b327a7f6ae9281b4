#pragma once

#include <string>
#include <vector>

#include "monodraw/packing.hpp"
#include "monodraw/verifier.hpp"

namespace monodraw {

/// Deterministic SVG 1.1 rendering (stable element order, 6-decimal fixed
/// precision). The optional witness path (vertex ids) is drawn as a highlight
/// layer on top.
std::string svgFromDrawing(const Drawing& d, const std::vector<int>* witnessPath = nullptr);

/// Packing rendering: vertex circles, face circles, the outer circle, the
/// primal edges, and an optional witness highlight.
std::string svgFromPacking(const PrimalDualPacking& p,
                           const std::vector<int>* witnessPath = nullptr);

}  // namespace monodraw
