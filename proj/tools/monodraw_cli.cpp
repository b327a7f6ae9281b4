#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "monodraw/errors.hpp"
#include "monodraw/json_io.hpp"
#include "monodraw/outerplanar.hpp"
#include "monodraw/packing.hpp"
#include "monodraw/svg.hpp"
#include "monodraw/tree_drawer.hpp"
#include "monodraw/two_tree.hpp"
#include "monodraw/verifier.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitClass = 2;
constexpr int kExitPrecision = 3;

double defaultTol() {
  if (const char* env = std::getenv("MONODRAW_TOL")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw monodraw::ValidationError("MONODRAW_TOL is not a number");
    }
  }
  return monodraw::kDefaultAngleEps;
}

nlohmann::json loadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw monodraw::ValidationError("cannot open " + path);
  return nlohmann::json::parse(in);  // parse_error carries byte position
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw monodraw::ValidationError("cannot write " + path);
  out << text;
}

std::string classOf(const monodraw::ClassTags& t) {
  if (t.tree) return "tree";
  if (t.outerplanar) return "outerplanar";
  if (t.twoTree) return "two-tree";
  if (t.planar3Connected) return "planar3";
  return "";
}

int cmdDraw(const std::string& inPath, const std::string& outPath,
            const std::string& svgPath, const std::string& cls, double tol) {
  monodraw::ParsedGraph pg = monodraw::graphFromJson(loadJson(inPath));
  const monodraw::Graph& g = pg.graph;
  monodraw::ClassTags tags = monodraw::classify(g);

  std::string use = cls;
  if (use == "auto") {
    use = classOf(tags);
    if (use.empty()) {
      std::cerr << "error: graph fits no supported class\n";
      return kExitClass;
    }
  }
  const bool matches = (use == "tree" && tags.tree) ||
                       (use == "outerplanar" && tags.outerplanar) ||
                       (use == "two-tree" && tags.twoTree) ||
                       (use == "planar3" && tags.planar3Connected);
  if (!matches) {
    std::cerr << "error: graph is not of class " << use << "\n";
    return kExitClass;
  }

  monodraw::Drawing d;
  if (use == "tree") {
    d = monodraw::drawTree(g);
  } else if (use == "outerplanar") {
    d = monodraw::drawOuterplanar(g);
  } else if (use == "two-tree") {
    d = monodraw::drawTwoTree(g);
  } else {
    monodraw::PlaneEmbedding emb =
        pg.embedding ? *pg.embedding : *monodraw::planarEmbedding(g);
    d = monodraw::drawingFromPacking(monodraw::computePacking(emb, std::min(tol, 1e-10)));
  }

  writeFile(outPath, monodraw::drawingToJson(d).dump(2) + "\n");
  if (!svgPath.empty()) writeFile(svgPath, monodraw::svgFromDrawing(d));

  monodraw::WitnessReport rep = monodraw::stronglyMonotone(d, tol);
  monodraw::CrossingReport cr = monodraw::crossingFree(d);
  if (!rep.stronglyMonotone || !cr.crossingFree) {
    std::cerr << "error: post-verification failed\n";
    return kExitPrecision;
  }
  std::cout << "class: " << use << "\nstrongly monotone: yes\ncrossing-free: yes\n"
            << "alpha: " << rep.alpha << "\n";
  return kExitOk;
}

int cmdVerify(const std::string& inPath, const std::string& reportPath, bool wantAlpha,
              const std::string& convex, double tol) {
  monodraw::Drawing d = monodraw::drawingFromJson(loadJson(inPath));
  d.validate();

  monodraw::WitnessReport rep = monodraw::stronglyMonotone(d, tol);
  const bool mono = monodraw::monotone(d, tol);
  monodraw::CrossingReport cr = monodraw::crossingFree(d);
  bool pass = rep.stronglyMonotone && mono && cr.crossingFree;

  std::cout << "strongly monotone: " << (rep.stronglyMonotone ? "yes" : "no")
            << (rep.degenerate ? " (degenerate pairs present)" : "") << "\n"
            << "monotone: " << (mono ? "yes" : "no") << "\n"
            << "crossing-free: " << (cr.crossingFree ? "yes" : "no") << "\n";
  if (wantAlpha) std::cout << "alpha: " << rep.alpha << "\n";

  nlohmann::json jr{{"strongly_monotone", rep.stronglyMonotone},
                    {"monotone", mono},
                    {"crossing_free", cr.crossingFree},
                    {"degenerate", rep.degenerate},
                    {"alpha", rep.alpha}};
  if (convex == "tree") {
    const monodraw::TreeConvexity tc = monodraw::treeConvexity(d, tol);
    const char* name = tc == monodraw::TreeConvexity::StrictlyConvex ? "strictly-convex"
                       : tc == monodraw::TreeConvexity::Convex       ? "convex"
                                                                     : "not-convex";
    std::cout << "tree convexity: " << name << "\n";
    jr["tree_convexity"] = name;
    pass = pass && tc != monodraw::TreeConvexity::NotConvex;
  } else if (convex == "faces") {
    auto emb = monodraw::planarEmbedding(d.graph);
    const bool ok = emb && monodraw::convexFaces(d, *emb, tol);
    std::cout << "convex faces: " << (ok ? "yes" : "no") << "\n";
    jr["convex_faces"] = ok;
    pass = pass && ok;
  }
  if (!reportPath.empty()) writeFile(reportPath, jr.dump(2) + "\n");
  return pass ? kExitOk : kExitPrecision;
}

int cmdPack(const std::string& inPath, const std::string& outPath,
            const std::string& svgPath, double tol) {
  monodraw::ParsedGraph pg = monodraw::graphFromJson(loadJson(inPath));
  monodraw::PlaneEmbedding emb;
  if (pg.embedding) {
    emb = *pg.embedding;
  } else {
    auto e = monodraw::planarEmbedding(pg.graph);
    if (!e) throw monodraw::ClassificationError("pack: graph is not planar");
    emb = *e;
  }
  monodraw::PrimalDualPacking p = monodraw::computePacking(emb, std::min(tol, 1e-10));
  writeFile(outPath, monodraw::packingToJson(p).dump(2) + "\n");
  if (!svgPath.empty()) writeFile(svgPath, monodraw::svgFromPacking(p));
  std::cout << "residuals: angle " << p.residuals.angle << ", tangency "
            << p.residuals.tangency << ", orthogonality " << p.residuals.orthogonality
            << ", inscribed " << p.residuals.inscribed << ", layout "
            << p.residuals.layout << "\n";
  return kExitOk;
}

int cmdWitness(const std::string& packingPath, int u, int v) {
  monodraw::PrimalDualPacking p = monodraw::packingFromJson(loadJson(packingPath));
  const std::vector<int> path = monodraw::witnessFromPacking(p, u, v);
  monodraw::Drawing d = monodraw::drawingFromPacking(p);

  const monodraw::Vec2 dir = d.pos[v] - d.pos[u];
  double slack = monodraw::kPi / 2.0;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    const monodraw::Vec2 e = d.pos[path[i + 1]] - d.pos[path[i]];
    slack = std::min(slack, monodraw::kPi / 2.0 - monodraw::angleBetween(e, dir));
  }
  std::cout << "path:";
  for (int w : path) std::cout << " " << w;
  std::cout << "\nmin slack: " << slack << "\n";
  return slack > 0.0 ? kExitOk : kExitPrecision;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strongly monotone drawings: construction and verification"};
  app.require_subcommand(1);

  std::string inPath, outPath, svgPath, reportPath, cls = "auto", convex;
  double tol = -1.0;
  int seed = 0;
  int pairU = 0, pairV = 0;

  CLI::App* draw = app.add_subcommand("draw", "construct a drawing");
  draw->add_option("--class", cls)
      ->check(CLI::IsMember({"tree", "outerplanar", "two-tree", "planar3", "auto"}));
  draw->add_option("--in", inPath)->required();
  draw->add_option("--out", outPath)->required();
  draw->add_option("--svg", svgPath);
  draw->add_option("--seed", seed);
  draw->add_option("--tol", tol);

  CLI::App* verify = app.add_subcommand("verify", "verify a drawing");
  verify->add_option("--in", inPath)->required();
  verify->add_option("--report", reportPath);
  bool wantAlpha = false;
  verify->add_flag("--alpha", wantAlpha);
  verify->add_option("--convex", convex)->check(CLI::IsMember({"tree", "faces"}));
  verify->add_option("--tol", tol);

  CLI::App* pack = app.add_subcommand("pack", "compute a primal-dual circle packing");
  pack->add_option("--in", inPath)->required();
  pack->add_option("--out", outPath)->required();
  pack->add_option("--svg", svgPath);
  pack->add_option("--tol", tol);

  CLI::App* witness = app.add_subcommand("witness", "extract a witness path");
  std::string packingPath;
  witness->add_option("--packing", packingPath)->required();
  witness->add_option("--pair", [&pairU, &pairV](const std::vector<std::string>& vals) {
    pairU = std::stoi(vals.at(0));
    pairV = std::stoi(vals.at(1));
    return true;
  })->expected(2)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (tol <= 0.0) tol = defaultTol();
    if (draw->parsed()) return cmdDraw(inPath, outPath, svgPath, cls, tol);
    if (verify->parsed()) return cmdVerify(inPath, reportPath, wantAlpha, convex, tol);
    if (pack->parsed()) return cmdPack(inPath, outPath, svgPath, tol);
    if (witness->parsed()) return cmdWitness(packingPath, pairU, pairV);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const monodraw::ClassificationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitClass;
  } catch (const monodraw::PrecisionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const monodraw::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const monodraw::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
