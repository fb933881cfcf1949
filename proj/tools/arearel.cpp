// arearel: command-line front end for the area polynomial library.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "arearel/encyc.hpp"
#include "arearel/limits.hpp"
#include "arearel/parallel.hpp"
#include "arearel/render.hpp"
#include "arearel/suites.hpp"
#include "arearel/workspace.hpp"

using namespace arearel;

namespace {

// Bad input from the command line or an input file; exits with status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Triangulation named_triangulation(const std::string& id) {
  if (id == "bubble") return bubble_example();
  if (id == "double-bubble") return double_bubble_example();
  try {
    return load_catalog_entry(id);
  } catch (const std::exception&) {
    throw UsageError("unknown triangulation " + id);
  }
}

Triangulation resolve_triangulation(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    auto j = read_json(arg);
    if (j.contains("triangles")) return triangulation_from_json(j);
    if (j.contains("triangulation")) return triangulation_from_json(j.at("triangulation"));
    if (j.contains("tri")) return named_triangulation(j.at("tri").get<std::string>());
    throw UsageError(arg + ": no triangulation");
  }
  return named_triangulation(arg);
}

std::string catalog_name_of(const Triangulation& t) {
  auto code = canonical_code(t);
  for (auto& n : catalog_names())
    if (canonical_code(load_catalog_entry(n)) == code) return n;
  return "-";
}

int cmd_enum(int k) {
  if (k < 0 || k > 5) throw UsageError("--interior must be in 0..5");
  auto ts = enumerate(k);
  std::cout << "interior " << k << ": " << ts.size() << " triangulations\n";
  for (auto& t : ts) std::cout << catalog_name_of(t) << " " << to_json(t).dump() << "\n";
  return 0;
}

int cmd_poly(Workspace& ws, const std::string& tri, bool json) {
  auto t = resolve_triangulation(tri);
  auto sp = ws.area_polynomial(t);
  if (json) {
    nlohmann::json j = {{"poly", to_text(sp.poly)},
                        {"degree", sp.poly.degree()},
                        {"nvars", sp.poly.nvars()},
                        {"canonical_code", hex_string(canonical_code(t))},
                        {"report", report_to_json(sp.report)}};
    if (!t.name.empty()) j["tri"] = t.name;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << to_text(sp.poly) << "\n";
  }
  return 0;
}

int cmd_coloring(Workspace& ws, const std::string& tri, bool json) {
  auto t = resolve_triangulation(tri);
  auto p = ws.area_polynomial(t).poly;
  auto colors = canonical_coloring(t, p);
  if (json) {
    nlohmann::json j = nlohmann::json::array();
    for (int i = 0; i < t.triangle_count(); ++i)
      j.push_back({{"var", variable_name(i)}, {"triangle", t.triangles[i]}, {"color", colors[i]}});
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  for (int i = 0; i < t.triangle_count(); ++i) {
    auto& tr = t.triangles[i];
    std::cout << variable_name(i) << " (" << tr[0] << "," << tr[1] << "," << tr[2] << ") " << colors[i] << "\n";
  }
  return 0;
}

int cmd_encyc(Workspace& ws, int l, bool abridged, bool json) {
  if (l < 1 || l > 4) throw UsageError("--vars must be in 1..4");
  auto vols = ws.volumes(l);
  int status = 0;
  if (abridged) {
    auto a = abridge(vols);
    vols = a.abridged;
    if (!a.closure_ok) {
      for (auto& m : a.mismatches) std::cerr << "closure: " << m << "\n";
      status = 1;
    }
  }
  for (auto& v : vols) {
    if (json) {
      auto j = volume_to_json(v);
      if (abridged) j["abridged"] = true;
      std::cout << j.dump() << "\n";
    } else {
      auto text = volume_to_text(v);
      if (abridged) text = "~" + text;
      std::cout << text;
    }
  }
  return status;
}

int cmd_verify(Workspace& ws, const std::string& suite) {
  auto r = run_suite(suite, ws);
  std::cout << r.to_json().dump(2) << "\n";
  return r.passed() ? 0 : 1;
}

int cmd_limit(const std::string& path, int kmax) {
  if (kmax < 2) throw UsageError("--kmax must be at least 2");
  auto pd = path_from_json(read_json(path));
  auto r = path_limit(pd, default_schedule(kmax));
  std::cout << limit_to_csv(r);
  if (!r.converged) std::cerr << "limit: not converged, estimate " << r.estimate << "\n";
  return 0;
}

int cmd_render(Workspace& ws, const std::string& path, const std::string& out, bool color) {
  auto j = read_json(path);
  Drawing d = drawing_from_json(j);
  Triangulation t =
      j.contains("triangulation") ? triangulation_from_json(j.at("triangulation")) : named_triangulation(d.tri);
  RenderOptions opt;
  if (j.contains("constraints")) {
    auto ct = ConstrainedTriangulation::from_triangle_sets(t, j.at("constraints").get<std::vector<std::vector<int>>>());
    auto bad = check_constraints(ct);
    if (bad.empty()) bad = validate_constrained(ct, d);
    if (!bad.empty()) throw UsageError(path + ": " + bad.front());
    opt.constraints = ct.constraints;
    opt.doomed = ct.doomed_triangles();
  }
  if (color && d.is_real()) opt.colors = canonical_coloring(t, ws.area_polynomial(t).poly);
  auto svg = render_svg(t, d, opt);
  std::ofstream os(out);
  if (!os) throw UsageError("cannot write " + out);
  os << svg;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Area polynomials of triangulated squares"};
  app.require_subcommand(1);
  uint64_t seed = 1;
  int jobs = default_jobs();
  std::string cache = Workspace::default_cache_dir();
  bool quiet = false;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--cache", cache, "Polynomial cache directory (default $AREAREL_CACHE)")->capture_default_str();
  app.add_flag("-q,--quiet", quiet, "No progress messages");

  int interior = 0;
  auto* en = app.add_subcommand("enum", "List triangulations with k interior vertices");
  en->add_option("--interior", interior, "Interior vertex count")->required();

  std::string tri;
  bool json = false;
  auto* po = app.add_subcommand("poly", "Area polynomial of a triangulation");
  po->add_option("--tri", tri, "Catalog name or JSON file")->required();
  po->add_flag("--json", json, "Print the polynomial with its interpolation report");

  auto* co = app.add_subcommand("coloring", "Canonical 2-coloring");
  co->add_option("--tri", tri, "Catalog name or JSON file")->required();
  co->add_flag("--json", json);

  int vars = 0;
  bool abridged = false;
  auto* ec = app.add_subcommand("encyc", "Volumes E_1..E_l");
  ec->add_option("--vars", vars, "Number of variables l")->required();
  ec->add_flag("--abridged", abridged, "Drop algebraic subdivisions");
  ec->add_flag("--json", json, "One JSON document per volume");

  std::string suite;
  std::vector<std::string> choices = suite_names();
  choices.push_back("all");
  auto* ve = app.add_subcommand("verify", "Run a verification suite");
  ve->add_option("--suite", suite)->required()->check(CLI::IsMember(choices));

  std::string path;
  int kmax = 6;
  auto* li = app.add_subcommand("limit", "Normalized areas along a path and their limit");
  li->add_option("--path", path, "Path JSON")->required();
  li->add_option("--kmax", kmax, "Schedule s = 10^-1 .. 10^-kmax")->capture_default_str();

  std::string out;
  bool no_color = false;
  auto* re = app.add_subcommand("render", "SVG of a real drawing");
  re->add_option("--drawing", path, "Drawing JSON")->required();
  re->add_option("--out", out, "Output SVG")->required();
  re->add_flag("--no-color", no_color, "Skip the canonical coloring");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Workspace ws(cache, seed, jobs);
  if (!quiet) ws.set_log([](const std::string& m) { std::cerr << m << "\n"; });
  try {
    if (*en) return cmd_enum(interior);
    if (*po) return cmd_poly(ws, tri, json);
    if (*co) return cmd_coloring(ws, tri, json);
    if (*ec) return cmd_encyc(ws, vars, abridged, json);
    if (*ve) return cmd_verify(ws, suite);
    if (*li) return cmd_limit(path, kmax);
    if (*re) return cmd_render(ws, path, out, !no_color);
  } catch (const UsageError& e) {
    std::cerr << nlohmann::json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << nlohmann::json{{"error", "invalid input"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << nlohmann::json{{"error", "invalid input"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "failure"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 2;
}
