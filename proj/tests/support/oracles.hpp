#pragma once

#include <optional>
#include <vector>

#include "monodraw/geometry.hpp"
#include "monodraw/graph.hpp"
#include "monodraw/verifier.hpp"

namespace monodraw::testsupport {

/// Best bottleneck slack over *all* simple u-v paths, by exhaustive
/// enumeration. Independent of the library's Dijkstra-based verifier.
double bruteBestSlack(const Drawing& d, int u, int v);

/// Strong monotonicity by exhaustive path enumeration (strict: slack > eps).
bool bruteStronglyMonotone(const Drawing& d, double epsAngle = kDefaultAngleEps);

/// min over pairs of bruteBestSlack; only meaningful when strongly monotone.
double bruteSafety(const Drawing& d);

/// Monotonicity by exhaustive path enumeration: a path admits a direction iff
/// its edge vectors fit in an open half-plane (max angular gap > pi).
bool bruteMonotone(const Drawing& d);

/// Largest disk radius in the cone, estimated by sampling candidate centers
/// along the bisector fan. Lower bound up to sampling resolution.
double sampledMaxDiskRadiusInCone(const Cone& cone, int samples = 20000);

/// Minor containment by exhaustive branch-set assignment. Intended for
/// host graphs with at most ~8 vertices.
bool hasMinor(const Graph& host, const Graph& minor);

bool planarByMinors(const Graph& g);       // no K5 and no K3,3 minor
bool outerplanarByMinors(const Graph& g);  // no K4 and no K2,3 minor

/// Number of spanning trees via Kirchhoff's theorem.
double spanningTreeCount(const Graph& g);

/// 2-tree recognition by full backtracking over peel orders (the library's
/// greedy peel is the thing under test).
bool isTwoTreeOracle(const Graph& g);

}  // namespace monodraw::testsupport
