#include "arearel/workspace.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace arearel {

namespace fs = std::filesystem;

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex_string(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

namespace {

std::string checksum_of(const nlohmann::json& payload) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(payload.dump())));
  return buf;
}

}  // namespace

Workspace::Workspace(std::string cache_dir, uint64_t seed, int jobs)
    : dir_(std::move(cache_dir)), seed_(seed), jobs_(jobs < 1 ? 1 : jobs) {}

std::string Workspace::default_cache_dir() {
  if (const char* env = std::getenv("AREAREL_CACHE"); env && *env) return env;
  return ".arearel-cache";
}

std::string Workspace::entry_path(const Triangulation& t) const {
  return (fs::path(dir_) / "poly" / (hex_string(canonical_code(t)) + ".json")).string();
}

StoredPoly Workspace::area_polynomial(const Triangulation& t) {
  require_valid(t);
  std::vector<int> map;
  Triangulation canon = canonical_form(t, &map);
  std::string code = canonical_code(t);
  StoredPoly out;

  auto it = memo_.find(code);
  if (it == memo_.end()) {
    std::string path = entry_path(t);
    std::optional<std::pair<HomogPoly, InterpolationReport>> found;
    if (std::ifstream in(path); in) {
      try {
        auto j = nlohmann::json::parse(in);
        auto& payload = j.at("payload");
        if (j.at("checksum").get<std::string>() != checksum_of(payload))
          note("cache: checksum mismatch in " + path + ", recomputing");
        else if (payload.at("code").get<std::string>() != hex_string(code))
          note("cache: code mismatch in " + path + ", recomputing");
        else {
          auto rep = report_from_json(payload.at("report"));
          found.emplace(rep.poly, rep);
        }
      } catch (const std::exception& e) {
        note("cache: unreadable " + path + " (" + e.what() + "), recomputing");
      }
    }
    if (found) {
      out.from_cache = true;
    } else {
      InterpolationConfig cfg;
      cfg.seed = seed_;
      cfg.jobs = jobs_;
      cfg.log = log_;
      note("computing area polynomial (" + std::to_string(t.triangle_count()) + " triangles)");
      auto [p, rep] = arearel::area_polynomial(canon, cfg);
      found.emplace(p, rep);
      nlohmann::json payload = {{"code", hex_string(code)}, {"triangulation", to_json(canon)},
                                {"report", report_to_json(rep)}};
      nlohmann::json doc = {{"checksum", checksum_of(payload)}, {"payload", payload}};
      fs::create_directories(fs::path(path).parent_path());
      std::string tmp = path + ".tmp";
      {
        std::ofstream os(tmp);
        os << doc.dump(1) << "\n";
      }
      fs::rename(tmp, path);
    }
    it = memo_.emplace(code, *found).first;
  }

  // canonical variable j is the triangle map[i] = j of t
  std::vector<int> perm(map.size());
  for (size_t i = 0; i < map.size(); ++i) perm[map[i]] = static_cast<int>(i);
  out.poly = HomogPoly(it->second.first.poly().permute(perm).normalized());
  out.report = it->second.second;
  return out;
}

const Triangulation& Workspace::catalog_entry(const std::string& name) {
  auto it = catalog_.find(name);
  if (it == catalog_.end()) it = catalog_.emplace(name, load_catalog_entry(name)).first;
  return it->second;
}

HomogPoly Workspace::catalog_poly(const std::string& name) {
  return area_polynomial(catalog_entry(name)).poly;
}

PolyStore Workspace::store_for(const std::vector<std::string>& names) {
  PolyStore s;
  for (auto& n : names) s.emplace(n, catalog_poly(n));
  return s;
}

std::vector<Volume> Workspace::volumes(int l) {
  std::vector<Volume> out;
  for (int k = 1; k <= l; ++k) {
    auto it = volumes_.find(k);
    if (it == volumes_.end())
      it = volumes_.emplace(k, build_volume(k, store_for(required_triangulations(k)), jobs_)).first;
    out.push_back(it->second);
  }
  return out;
}

}  // namespace arearel
