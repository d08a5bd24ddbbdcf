#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kissing/json_io.hpp"
#include "kissing/png.hpp"
#include "kissing/svg.hpp"

namespace kissing {

namespace detail {

inline Angle parse_fraction(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    try {
      return mod1(Rational(BigInt(text), BigInt(1)));
    } catch (...) {
      fail(ErrorCode::BadDocument, "cannot parse fraction " + text);
    }
  }
  try {
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) fail(ErrorCode::BadDocument, "zero denominator");
    return mod1(Rational(num, den));
  } catch (const std::exception&) {
    fail(ErrorCode::BadDocument, "cannot parse fraction " + text);
  }
}

inline Complex parse_point(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) fail(ErrorCode::BadDocument, "point must be x,y");
  try {
    return Complex(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
  } catch (const std::exception&) {
    fail(ErrorCode::BadDocument, "cannot parse point " + text);
  }
}

}  // namespace detail

/// Command-line entry point; returns the process exit code.
/// 0: success / PASS verdict. 1: FAIL verdict. 2: input or internal error.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"circle packings, kissing reflection groups and anti-rational maps"};
  app.require_subcommand(1);
  int threads = 2;
  uint64_t seed = 1;
  size_t cap = 10'000'000;
  app.add_option("--threads", threads, "worker threads for rendering");
  app.add_option("--seed", seed, "seed for root-finder restarts");
  app.add_option("--cap", cap, "orbit explosion guard");

  // graph-info
  auto* info = app.add_subcommand("graph-info", "classify a plane graph document");
  std::string info_file;
  info->add_option("file", info_file)->required();

  // pack
  auto* pack = app.add_subcommand("pack", "solve the circle packing of a graph");
  std::string pack_file, pack_out, pack_svg;
  double pack_tol = 1e-8;
  pack->add_option("file", pack_file)->required();
  pack->add_option("--tol", pack_tol);
  pack->add_option("--out", pack_out);
  pack->add_option("--svg", pack_svg);

  // limitset
  auto* limitset = app.add_subcommand("limitset", "cover the limit set by orbit disks");
  std::string ls_file, ls_svg, ls_png, ls_cycle, ls_tiles_svg;
  double ls_eps = 0.01;
  int ls_res = 1024, ls_tile_level = 0;
  limitset->add_option("file", ls_file)->required();
  limitset->add_option("--eps", ls_eps);
  limitset->add_option("--svg", ls_svg);
  limitset->add_option("--png", ls_png);
  limitset->add_option("--res", ls_res);
  limitset->add_option("--cycle", ls_cycle, "Hamiltonian cycle for side tiles, e.g. 0,1,2,3");
  limitset->add_option("--tile-level", ls_tile_level);
  limitset->add_option("--tiles-svg", ls_tiles_svg);

  // nielsen
  auto* nielsen = app.add_subcommand("nielsen", "iterate the Nielsen map");
  std::string ni_file, ni_point;
  int ni_steps = 10;
  nielsen->add_option("file", ni_file)->required();
  nielsen->add_option("--point", ni_point)->required();
  nielsen->add_option("--steps", ni_steps);

  // lamination
  auto* lam = app.add_subcommand("lamination", "principal lamination of an outerplanar graph");
  std::string lam_file;
  lam->add_option("file", lam_file)->required();

  // qmark
  auto* qmark = app.add_subcommand("qmark", "question-mark conjugacy point");
  int qm_d = 2;
  std::string qm_theta = "0";
  int qm_depth = 4096;
  qmark->add_option("--d", qm_d)->required();
  qmark->add_option("--theta", qm_theta)->required();
  qmark->add_option("--depth", qm_depth);

  // julia
  auto* julia = app.add_subcommand("julia", "render basins of a critically fixed map");
  std::string ju_map, ju_file, ju_out;
  int ju_res = 1024, ju_iters = 200;
  double ju_window = 2.0;
  julia->add_option("--map", ju_map);
  julia->add_option("--file", ju_file);
  julia->add_option("--res", ju_res);
  julia->add_option("--iters", ju_iters);
  julia->add_option("--window", ju_window);
  julia->add_option("--out", ju_out);

  // verify-map
  auto* verify = app.add_subcommand("verify-map", "check a graph/map dictionary pairing");
  std::string vm_map, vm_file, vm_graph;
  verify->add_option("--map", vm_map);
  verify->add_option("--file", vm_file);
  verify->add_option("--graph", vm_graph)->required();

  // mate
  auto* mate = app.add_subcommand("mate", "decide geometric mateability of two graphs");
  std::string mate_plus, mate_minus;
  int mate_offset = -1;
  mate->add_option("--plus", mate_plus)->required();
  mate->add_option("--minus", mate_minus)->required();
  mate->add_option("--offset", mate_offset);

  // unmate
  auto* unm = app.add_subcommand("unmate", "unmate along Hamiltonian cycles");
  std::string unm_file;
  bool unm_all = false;
  unm->add_option("file", unm_file)->required();
  unm->add_flag("--all", unm_all);

  // obstruct
  auto* obstruct = app.add_subcommand("obstruct", "Moore obstruction of two laminations");
  std::string ob_lp, ob_lq;
  obstruct->add_option("--lp", ob_lp)->required();
  obstruct->add_option("--lq", ob_lq)->required();

  // dictionary
  auto* dict = app.add_subcommand("dictionary", "combined dictionary report for a graph");
  std::string dict_file, dict_map;
  int dict_levels = 4;
  double dict_tol = 1e-8;
  dict->add_option("file", dict_file)->required();
  dict->add_option("--map", dict_map);
  dict->add_option("--levels", dict_levels);
  dict->add_option("--tol", dict_tol);

  std::vector<const char*> argv;
  std::string prog = "kissing";
  argv.push_back(prog.c_str());
  for (auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*info) {
      out << classification_to_json(graph_from_file(info_file)) << "\n";
      return 0;
    }
    if (*pack) {
      CirclePacking p = solve_packing(graph_from_file(pack_file), pack_tol);
      std::string doc = packing_to_json(p);
      if (!pack_out.empty()) {
        std::ofstream f(pack_out);
        f << doc << "\n";
      }
      if (!pack_svg.empty()) packing_to_svg(p, pack_svg);
      out << doc << "\n";
      return 0;
    }
    if (*limitset) {
      CirclePacking p = packing_from_file(ls_file);
      LimitSetCover cover = limit_set_approx(p, ls_eps, cap);
      if (!ls_svg.empty()) limit_set_to_svg(cover, p, ls_svg);
      if (!ls_png.empty()) cover_to_png(cover, ls_res, ls_png);
      size_t tiles_plus = 0, tiles_minus = 0;
      if (!ls_cycle.empty()) {
        std::vector<int> cycle;
        std::stringstream ss(ls_cycle);
        std::string item;
        while (std::getline(ss, item, ',')) cycle.push_back(std::stoi(item));
        SideTiles tiles = omega_side_tiles(p, cycle, ls_tile_level, cap);
        tiles_plus = tiles.plus.size();
        tiles_minus = tiles.minus.size();
        if (!ls_tiles_svg.empty()) side_tiles_to_svg(tiles, ls_tiles_svg);
      }
      out << "{\"disks\":" << cover.disks.size() << ",\"deepest_level\":" << cover.deepest_level
          << ",\"eps\":" << fmt(cover.eps);
      if (!ls_cycle.empty())
        out << ",\"tiles_plus\":" << tiles_plus << ",\"tiles_minus\":" << tiles_minus;
      out << "}\n";
      return 0;
    }
    if (*nielsen) {
      CirclePacking p = packing_from_file(ni_file);
      auto it = nielsen_itinerary(p, detail::parse_point(ni_point), ni_steps);
      out << "{\"symbols\":[";
      for (size_t i = 0; i < it.symbols.size(); ++i) {
        if (i) out << ",";
        out << it.symbols[i];
      }
      out << "],\"hit_cusp\":" << (it.hit_cusp ? "true" : "false") << "}\n";
      return 0;
    }
    if (*lam) {
      out << lamination_to_json(lamination_of(graph_from_file(lam_file))) << "\n";
      return 0;
    }
    if (*qmark) {
      Angle theta = detail::parse_fraction(qm_theta);
      Complex z = question_mark(theta, qm_d, qm_depth);
      out << "{\"d\":" << qm_d << ",\"theta\":\"" << theta.numerator().str() << "/"
          << theta.denominator().str() << "\",\"point\":[" << fmt(z.real()) << ","
          << fmt(z.imag()) << "]}\n";
      return 0;
    }
    if (*julia) {
      AntiRationalMap map = !ju_map.empty() ? platonic_map(ju_map)
                                            : map_from_json(parse_json_file(ju_file), seed);
      RenderResult img =
          julia_render(map, -ju_window, ju_window, -ju_window, ju_window, ju_res, ju_iters,
                       threads);
      if (!ju_out.empty()) render_to_png(img, ju_out);
      size_t julia_px = 0;
      for (int l : img.labels)
        if (l < 0) ++julia_px;
      out << "{\"res\":" << ju_res << ",\"basins\":" << img.basins << ",\"julia_fraction\":"
          << fmt(static_cast<double>(julia_px) / img.labels.size()) << "}\n";
      return 0;
    }
    if (*verify) {
      AntiRationalMap map = !vm_map.empty() ? platonic_map(vm_map)
                                            : map_from_json(parse_json_file(vm_file), seed);
      DictionaryReport rep = verify_dictionary(graph_from_file(vm_graph), map, seed);
      out << dictionary_report_to_json(rep) << "\n";
      return rep.pass ? 0 : 1;
    }
    if (*mate) {
      MateVerdict v =
          mate_graphs(graph_from_file(mate_plus), graph_from_file(mate_minus), mate_offset);
      out << mate_to_json(v) << "\n";
      return v.mateable ? 0 : 1;
    }
    if (*unm) {
      PlaneGraph g = graph_from_file(unm_file);
      auto list = shared_matings(g);
      out << "{\"count\":" << list.size() << ",\"unmatings\":[";
      size_t limit = unm_all ? list.size() : std::min<size_t>(1, list.size());
      for (size_t i = 0; i < limit; ++i) {
        if (i) out << ",";
        out << "{\"cycle\":[";
        for (size_t k = 0; k < list[i].cycle.size(); ++k) {
          if (k) out << ",";
          out << list[i].cycle[k];
        }
        out << "],\"plus\":" << graph_to_json(list[i].plus)
            << ",\"minus\":" << graph_to_json(list[i].minus) << "}";
      }
      out << "]}\n";
      return 0;
    }
    if (*obstruct) {
      ObstructionReport rep =
          detect_obstruction(lamination_from_file(ob_lp), lamination_from_file(ob_lq));
      out << obstruction_to_json(rep) << "\n";
      return rep.obstructed ? 1 : 0;
    }
    if (*dict) {
      PlaneGraph g = graph_from_file(dict_file);
      GraphClassification c = classify(g);
      std::ostringstream doc;
      doc << "{\"classification\":" << classification_to_json(g);
      bool two_connected = c.k_connectivity >= 2;
      bool three_connected = c.k_connectivity >= 3;
      bool outer = c.outerplanar_face_id.has_value();
      bool hamiltonian = !c.hamiltonian.empty();
      doc << ",\"predictions\":{\"connected_limit_set\":" << (two_connected ? "true" : "false")
          << ",\"gasket\":" << (three_connected ? "true" : "false")
          << ",\"anti_polynomial\":" << (outer && two_connected ? "true" : "false")
          << ",\"mating\":" << (hamiltonian && two_connected ? "true" : "false")
          << ",\"shared_matings\":" << (two_connected ? c.hamiltonian.size() : 0) << "}";
      CirclePacking p = solve_packing(g, dict_tol);
      doc << ",\"packing_residual\":" << fmt(p.residual);
      doc << ",\"level_connectivity\":[";
      for (int l = 0; l <= dict_levels; ++l) {
        if (l) doc << ",";
        doc << (level_connectivity(p, l, cap) ? "true" : "false");
      }
      doc << "]";
      if (!dict_map.empty()) {
        DictionaryReport rep = verify_dictionary(g, platonic_map(dict_map), seed);
        doc << ",\"map_verification\":" << dictionary_report_to_json(rep);
      }
      doc << "}";
      out << doc.str() << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace kissing
