#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kissing/cli.hpp"

using namespace kissing;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int exit_code = -1;
  std::string out, err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  Invocation result;
  result.exit_code = run(std::move(args), out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("kissing-test-" + std::to_string(std::rand()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content = "") const {
    fs::path p = path_ / name;
    if (!content.empty()) {
      std::ofstream f(p);
      f << content;
    }
    return p.string();
  }

 private:
  fs::path path_;
};

const char* kK4 = R"({"n":4,"rotation":[[1,3,2],[2,3,0],[0,3,1],[0,1,2]]})";
const char* kSq02 = R"({"n":4,"rotation":[[1,2,3],[2,0],[3,0,1],[0,2]]})";
const char* kSq13 = R"({"n":4,"rotation":[[1,3],[2,3,0],[3,1],[0,1,2]]})";
const char* kBasilica = R"({"d":3,"leaves":[[["0","1"],["3","4"]],[["1","2"],["1","4"]]],"singletons":[]})";

}  // namespace

TEST_CASE("graph-info reports the classification as JSON") {
  TempDir dir;
  auto res = invoke({"graph-info", dir.file("k4.json", kK4)});
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.out.find("\"simple\":true") != std::string::npos);
  REQUIRE(res.out.find("\"k_connectivity\":3") != std::string::npos);
  REQUIRE(res.out.find("\"hamiltonian_count\":3") != std::string::npos);
  // thin wrapper: identical to the library call
  REQUIRE(res.out == classification_to_json(graph_from_json(nlohmann::json::parse(kK4))) + "\n");
}

TEST_CASE("missing files exit with code 2") {
  auto res = invoke({"graph-info", "/nonexistent/file.json"});
  REQUIRE(res.exit_code == 2);
  REQUIRE_FALSE(res.err.empty());
}

TEST_CASE("pack writes a packing document and an SVG") {
  TempDir dir;
  std::string svg = dir.file("out.svg");
  std::string packed = dir.file("packing.json");
  auto res = invoke({"pack", dir.file("k4.json", kK4), "--tol", "1e-8", "--out", packed,
                     "--svg", svg});
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.out.find("\"residual\":") != std::string::npos);
  REQUIRE(fs::exists(svg));
  REQUIRE(fs::file_size(svg) > 100);
  // the emitted packing round-trips
  CirclePacking p = packing_from_file(packed);
  REQUIRE(p.graph.n == 4);
  REQUIRE(verify_contact(p, 1e-6).pass);
}

TEST_CASE("limitset consumes a packing document") {
  TempDir dir;
  std::string packed = dir.file("packing.json");
  invoke({"pack", dir.file("k4.json", kK4), "--out", packed});
  std::string png = dir.file("cover.png");
  auto res = invoke({"limitset", packed, "--eps", "0.2", "--svg", dir.file("ls.svg"), "--png",
                     png, "--res", "128"});
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.out.find("\"disks\":") != std::string::npos);
  REQUIRE(fs::exists(png));
  std::ifstream f(png, std::ios::binary);
  char magic[8];
  f.read(magic, 8);
  REQUIRE(std::string(magic + 1, magic + 4) == "PNG");
}

TEST_CASE("nielsen itinerary through the CLI") {
  TempDir dir;
  std::string packed = dir.file("packing.json");
  invoke({"pack", dir.file("k4.json", kK4), "--out", packed});
  CirclePacking p = packing_from_file(packed);
  Complex center = p.circles[1].center();
  std::ostringstream point;
  point << center.real() << "," << center.imag();
  auto res = invoke({"nielsen", packed, "--point", point.str(), "--steps", "1"});
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.out.find("\"symbols\":[1]") != std::string::npos);
}

TEST_CASE("lamination document for the chorded square") {
  TempDir dir;
  auto res = invoke({"lamination", dir.file("sq.json", kSq02)});
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.out.find("[[\"1\",\"8\"],[\"5\",\"8\"]]") != std::string::npos);
  REQUIRE(res.out.find("\"d\":3") != std::string::npos);
}

TEST_CASE("qmark evaluates the conjugacy") {
  auto res = invoke({"qmark", "--d", "2", "--theta", "1/2"});
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.out.find("\"point\":[-1,") != std::string::npos);
  auto bad = invoke({"qmark", "--d", "2", "--theta", "nonsense"});
  REQUIRE(bad.exit_code == 2);
}

TEST_CASE("julia renders deterministic basins") {
  TempDir dir;
  std::string png = dir.file("julia.png");
  auto res = invoke({"julia", "--map", "tetrahedron", "--res", "48", "--iters", "60", "--out",
                     png});
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.out.find("\"basins\":4") != std::string::npos);
  REQUIRE(fs::exists(png));
}

TEST_CASE("verify-map passes the matched pairing and fails a mismatch") {
  TempDir dir;
  std::string k4 = dir.file("k4.json", kK4);
  auto ok = invoke({"verify-map", "--map", "tetrahedron", "--graph", k4});
  REQUIRE(ok.exit_code == 0);
  REQUIRE(ok.out.find("\"pass\":true") != std::string::npos);
  auto bad = invoke({"verify-map", "--map", "octahedron", "--graph", k4});
  REQUIRE(bad.exit_code == 1);
  REQUIRE(bad.out.find("\"pass\":false") != std::string::npos);
}

TEST_CASE("mate verdicts map to exit codes") {
  TempDir dir;
  std::string plus = dir.file("p.json", kSq02);
  std::string minus_same = dir.file("m0.json", kSq02);
  std::string minus_other = dir.file("m1.json", kSq13);
  auto good = invoke({"mate", "--plus", plus, "--minus", minus_same, "--offset", "3"});
  REQUIRE(good.exit_code == 0);
  REQUIRE(good.out.find("\"mateable\":true") != std::string::npos);
  auto bad = invoke({"mate", "--plus", plus, "--minus", minus_other, "--offset", "3"});
  REQUIRE(bad.exit_code == 1);
  REQUIRE(bad.out.find("\"witness_chords\":[[0,2]]") != std::string::npos);
}

TEST_CASE("unmate lists the shared matings of K4") {
  TempDir dir;
  auto res = invoke({"unmate", dir.file("k4.json", kK4), "--all"});
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.out.find("\"count\":3") != std::string::npos);
}

TEST_CASE("obstruct compares laminations from documents") {
  TempDir dir;
  std::string lp = dir.file("lp.json");
  {
    std::ofstream f(lp);
    f << lamination_to_json(make_lamination(3, {leaf_for_chord(3, 0, 2)}, fixed_angles(3)));
  }
  std::string lq = dir.file("lq.json", kBasilica);
  auto good = invoke({"obstruct", "--lp", lp, "--lq", lq});
  REQUIRE(good.exit_code == 0);
  REQUIRE(good.out.find("\"obstructed\":false") != std::string::npos);
  std::string lq2 = dir.file("lq2.json");
  {
    std::ofstream f(lq2);
    f << lamination_to_json(make_lamination(3, {leaf_for_chord(3, 1, 3)}, fixed_angles(3)));
  }
  auto bad = invoke({"obstruct", "--lp", lp, "--lq", lq2});
  REQUIRE(bad.exit_code == 1);
  REQUIRE(bad.out.find("\"obstructed\":true") != std::string::npos);
}

TEST_CASE("dictionary report for K4 and for the bowtie") {
  TempDir dir;
  auto k4 = invoke({"dictionary", dir.file("k4.json", kK4), "--map", "tetrahedron"});
  REQUIRE(k4.exit_code == 0);
  REQUIRE(k4.out.find("\"gasket\":true") != std::string::npos);
  REQUIRE(k4.out.find("\"shared_matings\":3") != std::string::npos);
  REQUIRE(k4.out.find("\"map_verification\":{\"pass\":true") != std::string::npos);
  REQUIRE(k4.out.find("\"level_connectivity\":[true,true,true,true,true]") != std::string::npos);

  const char* bowtie = R"({"n":5,"rotation":[[1,2,3,4],[2,0],[0,1],[4,0],[0,3]]})";
  auto bt = invoke({"dictionary", dir.file("bowtie.json", bowtie), "--levels", "2"});
  REQUIRE(bt.exit_code == 0);
  REQUIRE(bt.out.find("\"connected_limit_set\":false") != std::string::npos);
  REQUIRE(bt.out.find("\"level_connectivity\":[true,false,false]") != std::string::npos);
}

TEST_CASE("repeated runs with a fixed seed are byte-identical") {
  TempDir dir;
  std::string k4 = dir.file("k4.json", kK4);
  for (std::vector<std::string> args : std::vector<std::vector<std::string>>{
           {"graph-info", k4},
           {"pack", k4},
           {"--seed", "7", "verify-map", "--map", "tetrahedron", "--graph", k4},
           {"qmark", "--d", "3", "--theta", "5/13"},
           {"dictionary", k4}}) {
    auto first = invoke(args);
    auto second = invoke(args);
    REQUIRE(first.exit_code == second.exit_code);
    REQUIRE(first.out == second.out);
  }
}

TEST_CASE("limitset emits side tiles along a Hamiltonian cycle") {
  TempDir dir;
  std::string packed = dir.file("packing.json");
  invoke({"pack", dir.file("k4.json", kK4), "--out", packed});
  std::string tiles = dir.file("tiles.svg");
  auto res = invoke({"limitset", packed, "--eps", "0.3", "--cycle", "0,1,2,3", "--tile-level",
                     "1", "--tiles-svg", tiles});
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.out.find("\"tiles_plus\":8") != std::string::npos);
  REQUIRE(res.out.find("\"tiles_minus\":8") != std::string::npos);
  REQUIRE(fs::exists(tiles));
}
