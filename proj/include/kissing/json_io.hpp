#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "kissing/angle_dynamics.hpp"
#include "kissing/antirational.hpp"
#include "kissing/mating.hpp"
#include "kissing/packing.hpp"
#include "kissing/plane_graph.hpp"

namespace kissing {

/// Fixed 12-significant-digit formatting so equal inputs yield byte-identical
/// documents.
inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

inline std::string fmt(int x) { return std::to_string(x); }

// -- parsing -------------------------------------------------------------------

inline nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadDocument, "cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    fail(ErrorCode::BadDocument, std::string("invalid JSON: ") + e.what());
  }
  return doc;
}

/// Graph document: {"n": int, "rotation": [[neighbor,...],...]} with an
/// optional parallel-edge index list "rotation_edges".
inline PlaneGraph graph_from_json(const nlohmann::json& doc) {
  try {
    int n = doc.at("n").get<int>();
    auto rotation = doc.at("rotation").get<std::vector<std::vector<int>>>();
    if (doc.contains("rotation_edges")) {
      auto edges = doc.at("rotation_edges").get<std::vector<std::vector<int>>>();
      return PlaneGraph::from_rotation_edges(n, rotation, edges);
    }
    return PlaneGraph::from_rotation(n, rotation);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::BadDocument, std::string("graph document: ") + e.what());
  }
}

inline PlaneGraph graph_from_file(const std::string& path) {
  return graph_from_json(parse_json_file(path));
}

inline std::string graph_to_json(const PlaneGraph& g) {
  std::ostringstream out;
  out << "{\"n\":" << g.n << ",\"rotation\":[";
  auto lists = g.neighbor_lists();
  for (int v = 0; v < g.n; ++v) {
    if (v) out << ",";
    out << "[";
    for (size_t i = 0; i < lists[v].size(); ++i) {
      if (i) out << ",";
      out << lists[v][i];
    }
    out << "]";
  }
  out << "]";
  if (!g.is_simple()) {
    // emit explicit edge ids so the parallel edges pair up again
    std::map<int, int> edge_id;
    out << ",\"rotation_edges\":[";
    for (int v = 0; v < g.n; ++v) {
      if (v) out << ",";
      out << "[";
      bool first = true;
      for (int d : g.rotations()[v]) {
        int key = std::min(d, g.twin[d]);
        auto [it, isnew] = edge_id.emplace(key, static_cast<int>(edge_id.size()));
        if (!first) out << ",";
        out << it->second;
        first = false;
      }
      out << "]";
    }
    out << "]";
  }
  out << "}";
  return out.str();
}

/// Packing document: circles carry center, radius and orientation sign.
inline std::string packing_to_json(const CirclePacking& p) {
  std::ostringstream out;
  out << "{\"graph\":" << graph_to_json(p.graph) << ",\"circles\":[";
  for (int v = 0; v < p.graph.n; ++v) {
    if (v) out << ",";
    const Circle& c = p.circles[v];
    Complex q = c.center();
    out << "{\"cx\":" << fmt(q.real()) << ",\"cy\":" << fmt(q.imag())
        << ",\"r\":" << fmt(c.radius()) << ",\"orient\":" << (c.a >= 0 ? 1 : -1) << "}";
  }
  out << "],\"residual\":" << fmt(p.residual) << "}";
  return out.str();
}

inline CirclePacking packing_from_json(const nlohmann::json& doc) {
  CirclePacking p;
  try {
    p.graph = graph_from_json(doc.at("graph"));
    for (const auto& c : doc.at("circles")) {
      double cx = c.at("cx").get<double>();
      double cy = c.at("cy").get<double>();
      double r = c.at("r").get<double>();
      int orient = c.contains("orient") ? c.at("orient").get<int>() : 1;
      p.circles.push_back(Circle::from_center_radius(Complex(cx, cy), r, orient));
    }
    if (doc.contains("residual")) p.residual = doc.at("residual").get<double>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::BadDocument, std::string("packing document: ") + e.what());
  }
  if (static_cast<int>(p.circles.size()) != p.graph.n)
    fail(ErrorCode::BadDocument, "circle count differs from vertex count");
  p.tolerance = std::max(1e-12, 10 * p.residual);
  return p;
}

inline CirclePacking packing_from_file(const std::string& path) {
  return packing_from_json(parse_json_file(path));
}

// -- laminations ----------------------------------------------------------------

inline std::string angle_pair_json(const Angle& a) {
  return "[\"" + a.numerator().str() + "\",\"" + a.denominator().str() + "\"]";
}

inline std::string lamination_to_json(const Lamination& lam) {
  std::ostringstream out;
  out << "{\"d\":" << lam.degree << ",\"leaves\":[";
  for (size_t i = 0; i < lam.leaves.size(); ++i) {
    if (i) out << ",";
    out << "[" << angle_pair_json(lam.leaves[i].a) << "," << angle_pair_json(lam.leaves[i].b)
        << "]";
  }
  out << "],\"singletons\":[";
  for (size_t i = 0; i < lam.singletons.size(); ++i) {
    if (i) out << ",";
    out << angle_pair_json(lam.singletons[i]);
  }
  out << "]}";
  return out.str();
}

inline Angle angle_from_json(const nlohmann::json& j) {
  if (j.is_array() && j.size() == 2) {
    BigInt num(j.at(0).get<std::string>());
    BigInt den(j.at(1).get<std::string>());
    if (den == 0) fail(ErrorCode::BadDocument, "zero denominator");
    return mod1(Rational(num, den));
  }
  fail(ErrorCode::BadDocument, "angle must be a [\"p\",\"q\"] pair");
}

inline Lamination lamination_from_json(const nlohmann::json& doc) {
  try {
    int d = doc.at("d").get<int>();
    std::vector<Leaf> leaves;
    for (const auto& l : doc.at("leaves"))
      leaves.emplace_back(angle_from_json(l.at(0)), angle_from_json(l.at(1)));
    std::vector<Angle> singles;
    if (doc.contains("singletons"))
      for (const auto& s : doc.at("singletons")) singles.push_back(angle_from_json(s));
    return make_lamination(d, std::move(leaves), std::move(singles));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::BadDocument, std::string("lamination document: ") + e.what());
  }
}

inline Lamination lamination_from_file(const std::string& path) {
  return lamination_from_json(parse_json_file(path));
}

/// Custom map document: {"num": [[re,im],...], "den": [[re,im],...]}.
inline AntiRationalMap map_from_json(const nlohmann::json& doc, uint64_t seed = 1) {
  try {
    auto read = [](const nlohmann::json& arr) {
      Poly<Complex> out;
      for (const auto& c : arr) out.push_back(Complex(c.at(0).get<double>(), c.at(1).get<double>()));
      return out;
    };
    return make_anti_rational(read(doc.at("num")), read(doc.at("den")), seed);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::BadDocument, std::string("map document: ") + e.what());
  }
}

// -- reports ----------------------------------------------------------------------

inline std::string classification_to_json(const PlaneGraph& g) {
  GraphClassification c = classify(g);
  std::ostringstream out;
  out << "{\"n\":" << g.n << ",\"edges\":" << g.edge_count() << ",\"faces\":" << g.face_count()
      << ",\"simple\":" << (c.is_simple ? "true" : "false")
      << ",\"k_connectivity\":" << c.k_connectivity << ",\"outerplanar\":"
      << (c.outerplanar_face_id ? "true" : "false") << ",\"outerplanar_face\":"
      << (c.outerplanar_face_id ? std::to_string(*c.outerplanar_face_id) : "null")
      << ",\"hamiltonian_count\":" << c.hamiltonian.size() << ",\"hamiltonian_cycles\":[";
  for (size_t i = 0; i < c.hamiltonian.size(); ++i) {
    if (i) out << ",";
    out << "[";
    for (size_t k = 0; k < c.hamiltonian[i].size(); ++k) {
      if (k) out << ",";
      out << c.hamiltonian[i][k];
    }
    out << "]";
  }
  out << "],\"polyhedral\":" << (c.is_polyhedral ? "true" : "false") << "}";
  return out.str();
}

inline std::string obstruction_to_json(const ObstructionReport& rep) {
  std::ostringstream out;
  out << "{\"obstructed\":" << (rep.obstructed ? "true" : "false") << ",\"witness\":[";
  for (size_t i = 0; i < rep.witness.size(); ++i) {
    if (i) out << ",";
    out << angle_pair_json(rep.witness[i]);
  }
  out << "],\"principal_classes\":" << rep.principal_classes
      << ",\"angles\":" << rep.graph.angles.size() << "}";
  return out.str();
}

inline std::string mate_to_json(const MateVerdict& v) {
  std::ostringstream out;
  out << "{\"mateable\":" << (v.mateable ? "true" : "false");
  if (v.mateable) {
    out << ",\"glued\":" << graph_to_json(v.glued);
  } else {
    out << ",\"witness_chords\":[";
    for (size_t i = 0; i < v.duplicated_chords.size(); ++i) {
      if (i) out << ",";
      out << "[" << v.duplicated_chords[i].first << "," << v.duplicated_chords[i].second << "]";
    }
    out << "],\"witness_leaves\":[";
    for (size_t i = 0; i < v.shared_leaves.size(); ++i) {
      if (i) out << ",";
      out << "[" << angle_pair_json(v.shared_leaves[i].a) << ","
          << angle_pair_json(v.shared_leaves[i].b) << "]";
    }
    out << "]";
  }
  out << "}";
  return out.str();
}

inline std::string dictionary_report_to_json(const DictionaryReport& rep) {
  std::ostringstream out;
  out << "{\"pass\":" << (rep.pass ? "true" : "false") << ",\"checks\":[";
  for (size_t i = 0; i < rep.checks.size(); ++i) {
    if (i) out << ",";
    out << "{\"item\":\"" << rep.checks[i].item << "\",\"pass\":"
        << (rep.checks[i].pass ? "true" : "false") << ",\"detail\":\"" << rep.checks[i].detail
        << "\"}";
  }
  out << "]}";
  return out.str();
}

}  // namespace kissing
