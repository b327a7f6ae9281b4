#pragma once

#include <random>
#include <vector>

#include "monodraw/graph.hpp"
#include "monodraw/verifier.hpp"

namespace monodraw::testsupport {

using Rng = std::mt19937_64;

Graph pathGraph(int n);
Graph cycleGraph(int n);
Graph starGraph(int leaves);
Graph completeGraph(int n);
Graph wheelGraph(int rim);  // rim cycle + hub (vertex id rim)
Graph prismGraph(int k);    // two k-cycles joined by a matching
Graph octahedronGraph();
Graph cubeGraph();

/// Uniform random labeled tree via a Pruefer sequence.
Graph randomTree(int n, Rng& rng);

/// Random 2-tree: stack each new vertex on a uniformly random existing edge.
Graph randomTwoTree(int n, Rng& rng);

/// Random triangulation of a convex polygon (maximal outerplanar graph).
Graph randomMaximalOuterplanar(int n, Rng& rng);

/// Maximal outerplanar graph with a random subset of chords removed.
Graph randomConnectedOuterplanar(int n, Rng& rng);

/// Random planar triangulation: stacked triangulation plus random diagonal
/// flips. Always simple and 3-connected for n >= 4.
Graph randomPlanarTriangulation(int n, Rng& rng);

/// Random connected graph on n vertices (uniform over edge subsets,
/// rejection-sampled for connectivity).
Graph randomConnectedGraph(int n, Rng& rng);

/// Drawing with i.i.d. uniform coordinates in [-scale, scale]^2.
Drawing randomDrawing(const Graph& g, Rng& rng, double scale = 1.0);

/// All connected graphs on exactly n vertices, one representative per
/// isomorphism class (canonical form by minimum adjacency bitmask).
std::vector<Graph> connectedGraphClasses(int n);

}  // namespace monodraw::testsupport
