#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "monodraw/graph.hpp"
#include "monodraw/packing.hpp"
#include "monodraw/verifier.hpp"

namespace monodraw {

/// Graph JSON: { "n": int, "edges": [[a,b],...],
///               "rotation": optional [[edge indices per vertex],...],
///               "outer_face": optional int }.
struct ParsedGraph {
  Graph graph;
  std::optional<PlaneEmbedding> embedding;  // present when "rotation" is given
};

nlohmann::json graphToJson(const Graph& g);
nlohmann::json embeddingToJson(const PlaneEmbedding& emb);
/// Throws ValidationError on schema violations (the caller handles
/// nlohmann::json::parse_error for malformed text).
ParsedGraph graphFromJson(const nlohmann::json& j);

/// Drawing JSON: { "graph": <Graph JSON>, "pos": [[x,y],...] }.
nlohmann::json drawingToJson(const Drawing& d);
Drawing drawingFromJson(const nlohmann::json& j);

/// Packing JSON: embedding, all circles, contact points, residuals, tol.
nlohmann::json packingToJson(const PrimalDualPacking& p);
PrimalDualPacking packingFromJson(const nlohmann::json& j);

}  // namespace monodraw
