#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "arearel/encyc.hpp"
#include "arearel/render.hpp"
#include "arearel/suites.hpp"
#include "arearel/workspace.hpp"

using namespace arearel;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("arearel-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& rel) { return std::string(AREAREL_DATA_DIR) + "/" + rel; }

struct Run {
  int status;
  std::string out, err;
};

Run cli(const std::string& args, const fs::path& dir) {
  auto out = dir / "stdout.txt", err = dir / "stderr.txt";
  std::string cmd = std::string(AREAREL_CLI) + " --cache " + (dir / "cache").string() + " " + args + " >" +
                    out.string() + " 2>" + err.string();
  int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

size_t count(const std::string& s, const std::string& needle) {
  size_t n = 0;
  for (size_t at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("workspace computes once and reads back") {
  TempDir tmp;
  auto t2 = load_catalog_entry("T_2");
  Workspace a(tmp.path.string());
  auto first = a.area_polynomial(t2);
  CHECK_FALSE(first.from_cache);
  CHECK(fs::exists(a.entry_path(t2)));
  CHECK(to_text(first.poly) == to_text(HomogPoly(parse_poly("A^2-2AC+2AE+C^2+2CE+E^2-B^2-2BD-2BF-D^2+2DF-F^2"))));
  Workspace b(tmp.path.string());
  auto second = b.area_polynomial(t2);
  CHECK(second.from_cache);
  CHECK(second.poly == first.poly);
  CHECK(second.report.primes == first.report.primes);
}

TEST_CASE("isomorphic triangulations share one cache entry") {
  TempDir tmp;
  Workspace ws(tmp.path.string());
  auto t = load_catalog_entry("T_{2,1}");
  auto p = ws.area_polynomial(t).poly;
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<int> perm(t.vertex_count);
    for (int i = 0; i < t.vertex_count; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    auto r = relabel(t, perm);
    CHECK(ws.entry_path(r) == ws.entry_path(t));
    Workspace fresh(tmp.path.string());
    auto sp = fresh.area_polynomial(r);
    CHECK(sp.from_cache);
    CHECK(verify_vanishing(sp.poly, r, 5, trial).ok);
    CHECK(sp.poly.degree() == p.degree());
  }
  CHECK(std::distance(fs::directory_iterator(tmp.path / "poly"), fs::directory_iterator()) == 1);
}

TEST_CASE("corrupt cache entries are recomputed") {
  TempDir tmp;
  auto t1 = load_catalog_entry("T_1");
  std::string path;
  {
    Workspace ws(tmp.path.string());
    ws.area_polynomial(t1);
    path = ws.entry_path(t1);
  }
  auto good = slurp(path);
  // change a coefficient, keep the checksum
  auto doc = nlohmann::json::parse(good);
  auto& terms = doc["payload"]["report"]["poly"]["terms"];
  terms[0]["coeff"] = "7";
  std::ofstream(path) << doc.dump(1) << "\n";
  std::vector<std::string> log;
  Workspace ws(tmp.path.string());
  ws.set_log([&](const std::string& m) { log.push_back(m); });
  auto sp = ws.area_polynomial(t1);
  CHECK_FALSE(sp.from_cache);
  CHECK(to_text(sp.poly) == "A-B+C-D");
  CHECK(std::any_of(log.begin(), log.end(), [](auto& m) { return m.find("checksum") != std::string::npos; }));
  CHECK(slurp(path) == good);

  std::ofstream(path) << "{not json";
  Workspace again(tmp.path.string());
  CHECK_FALSE(again.area_polynomial(t1).from_cache);
  CHECK(slurp(path) == good);
}

TEST_CASE("checksum helpers") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex_string(std::string("\x01\xab", 2)) == "01ab");
}

TEST_CASE("rendering") {
  TempDir tmp;
  Workspace ws(tmp.path.string());
  auto t1 = load_catalog_entry("T_1");
  auto p = ws.area_polynomial(t1).poly;

  auto sym = drawing_from_json(nlohmann::json::parse(slurp(data("drawings/t1_symmetric.json"))));
  RenderOptions opt;
  opt.colors = canonical_coloring(t1, p);
  auto svg = render_svg(t1, sym, opt);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("viewBox=\"0 0 1 1\"") != std::string::npos);
  CHECK(count(svg, "<polygon") == 4);
  CHECK(count(svg, "#f2c14e") == 2);
  CHECK(count(svg, "#5b8cc0") == 2);
  CHECK(svg == render_svg(t1, sym, opt));

  auto j = nlohmann::json::parse(slurp(data("drawings/t1_vertex_on_ps.json")));
  auto d = drawing_from_json(j);
  auto ct = ConstrainedTriangulation::from_triangle_sets(t1, j["constraints"].get<std::vector<std::vector<int>>>());
  CHECK(validate_constrained(ct, d).empty());
  RenderOptions copt;
  copt.colors = opt.colors;
  copt.constraints = ct.constraints;
  copt.doomed = ct.doomed_triangles();
  auto csvg = render_svg(t1, d, copt);
  CHECK(count(csvg, "<polygon") == 3);
  CHECK(count(csvg, "<circle") == 1);
  CHECK(count(csvg, "stroke-dasharray") == 1);

  auto cx = drawing_from_json(nlohmann::json::parse(slurp(data("drawings/t2222_complex.json"))));
  CHECK_THROWS_AS(render_svg(load_catalog_entry("T_{2,2,2,2}"), cx, {}), std::invalid_argument);
}

TEST_CASE("suites are deterministic") {
  TempDir tmp;
  Workspace ws(tmp.path.string(), 3);
  for (auto name : {"bubble", "nugget"}) {
    auto a = run_suite(name, ws), b = run_suite(name, ws);
    CHECK(a.passed());
    CHECK(a.to_json().dump() == b.to_json().dump());
    CHECK(a.seed == 3);
  }
  CHECK_THROWS_AS(run_suite("nope", ws), std::invalid_argument);
  CHECK(suite_names().size() == 9);
}

TEST_CASE("command line") {
  TempDir tmp;
  auto en = cli("enum --interior 4", tmp.path);
  CHECK(en.status == 0);
  CHECK(en.out.find("interior 4: 6 triangulations") != std::string::npos);
  CHECK(count(en.out, "\n") == 7);

  auto po = cli("-q poly --tri T_1", tmp.path);
  CHECK(po.status == 0);
  CHECK(po.out == "A-B+C-D\n");
  auto pj = cli("-q poly --tri T_1 --json", tmp.path);
  CHECK(pj.status == 0);
  auto j = nlohmann::json::parse(pj.out);
  CHECK(j["poly"] == "A-B+C-D");
  CHECK(j["degree"] == 1);
  CHECK(cli("-q poly --tri T_1 --json", tmp.path).out == pj.out);

  auto co = cli("-q coloring --tri T_1", tmp.path);
  CHECK(co.status == 0);
  CHECK(co.out == "A (0,1,4) 0\nB (1,2,4) 1\nC (2,3,4) 0\nD (3,0,4) 1\n");

  auto ec = cli("-q encyc --vars 2", tmp.path);
  CHECK(ec.status == 0);
  CHECK(ec.out.find("E_1: 1 classes") != std::string::npos);
  CHECK(ec.out.find("E_2: 2 classes") != std::string::npos);
  auto ea = cli("-q encyc --vars 2 --abridged --json", tmp.path);
  CHECK(ea.status == 0);
  CHECK(count(ea.out, "\n") == 2);

  auto li = cli("limit --path " + data("paths/bubble.json") + " --kmax 5", tmp.path);
  CHECK(li.status == 0);
  CHECK(li.out.rfind("s,A,B,C", 0) == 0);
  CHECK(cli("limit --path " + data("paths/bubble.json") + " --kmax 5", tmp.path).out == li.out);

  auto svg = tmp.path / "t1.svg";
  auto re = cli("-q render --drawing " + data("drawings/t1_vertex_on_ps.json") + " --out " + svg.string(), tmp.path);
  CHECK(re.status == 0);
  CHECK(count(slurp(svg), "<circle") == 1);

  auto ve = cli("verify --suite bubble", tmp.path);
  CHECK(ve.status == 0);
  CHECK(nlohmann::json::parse(ve.out)["suite"] == "bubble");
  CHECK(cli("verify --suite bubble", tmp.path).out == ve.out);
}

TEST_CASE("command line errors") {
  TempDir tmp;
  CHECK(cli("poly --tri T_99", tmp.path).status == 2);
  CHECK(cli("verify --suite nope", tmp.path).status == 2);
  CHECK(cli("enum --interior 9", tmp.path).status == 2);
  CHECK(cli("encyc --vars 5", tmp.path).status == 2);
  CHECK(cli("", tmp.path).status == 2);
  CHECK(cli("limit --path /nonexistent.json", tmp.path).status == 2);
  auto cx = cli("render --drawing " + data("drawings/t2222_complex.json") + " --out " + (tmp.path / "x.svg").string(),
                tmp.path);
  CHECK(cx.status == 2);
  auto err = nlohmann::json::parse(cx.err.substr(cx.err.rfind('{')));
  CHECK(err["message"] == "complex drawings are not renderable");
  std::ofstream(tmp.path / "bad.json") << "[1, 2";
  CHECK(cli("limit --path " + (tmp.path / "bad.json").string(), tmp.path).status == 2);
}
