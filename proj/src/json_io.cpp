#include "monodraw/json_io.hpp"

#include <cmath>

#include "monodraw/errors.hpp"

namespace monodraw {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(std::string("json: missing field '") + key + "'");
  return j.at(key);
}

int requireInt(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer())
    throw ValidationError(std::string("json: field '") + key + "' must be an integer");
  return v.get<int>();
}

Point2 pointFromJson(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError("json: point must be a [x, y] number pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json pointToJson(Point2 p) { return json::array({p.x, p.y}); }

Circle circleFromJson(const json& j) {
  Circle c;
  c.center = pointFromJson(require(j, "center"));
  const json& r = require(j, "radius");
  if (!r.is_number()) throw ValidationError("json: circle radius must be a number");
  c.radius = r.get<double>();
  return c;
}

json circleToJson(const Circle& c) {
  return json{{"center", pointToJson(c.center)}, {"radius", c.radius}};
}

}  // namespace

json graphToJson(const Graph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back(json::array({a, b}));
  return json{{"n", g.vertexCount()}, {"edges", std::move(edges)}};
}

json embeddingToJson(const PlaneEmbedding& emb) {
  json j = graphToJson(emb.graph);
  json rot = json::array();
  for (int v = 0; v < emb.graph.vertexCount(); ++v) {
    json row = json::array();
    for (int u : emb.rotation[v]) row.push_back(emb.graph.edgeId(v, u));
    rot.push_back(std::move(row));
  }
  j["rotation"] = std::move(rot);
  j["outer_face"] = emb.outerFace;
  return j;
}

ParsedGraph graphFromJson(const json& j) {
  const int n = requireInt(j, "n");
  if (n < 0) throw ValidationError("json: n must be nonnegative");
  Graph g(n);
  const json& edges = require(j, "edges");
  if (!edges.is_array()) throw ValidationError("json: 'edges' must be an array");
  for (const json& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw ValidationError("json: edge must be an [a, b] integer pair");
    const int a = e[0].get<int>(), b = e[1].get<int>();
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw ValidationError("json: edge endpoint out of range");
    g.addEdge(a, b);
  }

  ParsedGraph out;
  out.graph = g;
  if (j.contains("rotation") && !j.at("rotation").is_null()) {
    const json& rot = j.at("rotation");
    if (!rot.is_array() || static_cast<int>(rot.size()) != n)
      throw ValidationError("json: 'rotation' must list every vertex");
    PlaneEmbedding emb;
    emb.graph = g;
    emb.rotation.resize(n);
    for (int v = 0; v < n; ++v) {
      const json& row = rot[v];
      if (!row.is_array() || static_cast<int>(row.size()) != g.degree(v))
        throw ValidationError("json: rotation row length must equal the degree");
      for (const json& ej : row) {
        if (!ej.is_number_integer())
          throw ValidationError("json: rotation entries are edge indices");
        const int e = ej.get<int>();
        if (e < 0 || e >= g.edgeCount())
          throw ValidationError("json: rotation edge index out of range");
        const auto& [a, b] = g.edge(e);
        if (a != v && b != v)
          throw ValidationError("json: rotation edge not incident to its vertex");
        emb.rotation[v].push_back(g.otherEnd(e, v));
      }
    }
    emb.outerFace = j.contains("outer_face") && !j.at("outer_face").is_null()
                        ? requireInt(j, "outer_face")
                        : 0;
    out.embedding = std::move(emb);
  }
  return out;
}

json drawingToJson(const Drawing& d) {
  json pos = json::array();
  for (Point2 p : d.pos) pos.push_back(pointToJson(p));
  return json{{"graph", graphToJson(d.graph)}, {"pos", std::move(pos)}};
}

Drawing drawingFromJson(const json& j) {
  Drawing d;
  d.graph = graphFromJson(require(j, "graph")).graph;
  const json& pos = require(j, "pos");
  if (!pos.is_array() || static_cast<int>(pos.size()) != d.graph.vertexCount())
    throw ValidationError("json: 'pos' must list every vertex");
  for (const json& p : pos) d.pos.push_back(pointFromJson(p));
  return d;
}

json packingToJson(const PrimalDualPacking& p) {
  json j;
  j["graph"] = embeddingToJson(p.emb);
  j["outer_circle"] = circleToJson(p.outerCircle);
  json vc = json::array();
  for (const Circle& c : p.vertexCircles) vc.push_back(circleToJson(c));
  j["vertex_circles"] = std::move(vc);
  json fc = json::array();
  for (const auto& c : p.faceCircles) fc.push_back(c ? circleToJson(*c) : json(nullptr));
  j["face_circles"] = std::move(fc);
  json contacts = json::array();
  for (Point2 c : p.contactPoints) contacts.push_back(pointToJson(c));
  j["contacts"] = std::move(contacts);
  j["residuals"] = json{{"angle", p.residuals.angle},
                        {"tangency", p.residuals.tangency},
                        {"orthogonality", p.residuals.orthogonality},
                        {"inscribed", p.residuals.inscribed},
                        {"layout", p.residuals.layout}};
  j["tol"] = p.tol;
  return j;
}

PrimalDualPacking packingFromJson(const json& j) {
  ParsedGraph pg = graphFromJson(require(j, "graph"));
  if (!pg.embedding) throw ValidationError("json: packing requires a rotation system");

  PrimalDualPacking p;
  p.emb = *pg.embedding;
  p.faces = facesOf(p.emb);
  p.outerCircle = circleFromJson(require(j, "outer_circle"));

  const json& vc = require(j, "vertex_circles");
  if (!vc.is_array() || static_cast<int>(vc.size()) != p.emb.graph.vertexCount())
    throw ValidationError("json: 'vertex_circles' must list every vertex");
  for (const json& c : vc) p.vertexCircles.push_back(circleFromJson(c));

  const json& fc = require(j, "face_circles");
  if (!fc.is_array() || fc.size() != p.faces.faces.size())
    throw ValidationError("json: 'face_circles' must list every face");
  for (const json& c : fc)
    p.faceCircles.push_back(c.is_null() ? std::nullopt
                                        : std::optional<Circle>(circleFromJson(c)));

  const json& contacts = require(j, "contacts");
  if (!contacts.is_array() || static_cast<int>(contacts.size()) != p.emb.graph.edgeCount())
    throw ValidationError("json: 'contacts' must list every edge");
  for (const json& c : contacts) p.contactPoints.push_back(pointFromJson(c));

  const json& res = require(j, "residuals");
  p.residuals.angle = require(res, "angle").get<double>();
  p.residuals.tangency = require(res, "tangency").get<double>();
  p.residuals.orthogonality = require(res, "orthogonality").get<double>();
  p.residuals.inscribed = require(res, "inscribed").get<double>();
  p.residuals.layout = require(res, "layout").get<double>();
  p.tol = require(j, "tol").get<double>();
  return p;
}

}  // namespace monodraw
