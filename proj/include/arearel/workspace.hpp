#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "arearel/areapoly.hpp"
#include "arearel/encyc.hpp"
#include "arearel/tri.hpp"

namespace arearel {

struct StoredPoly {
  HomogPoly poly;  ///< in the variables of the triangulation asked for
  InterpolationReport report;  ///< for the canonical relabeling
  bool from_cache = false;
};

/// Polynomial store on disk. One file per isomorphism class, named by the
/// hex canonical code; the payload carries an FNV-1a checksum that is
/// checked on every read. Bad entries are recomputed and rewritten.
class Workspace {
 public:
  explicit Workspace(std::string cache_dir = default_cache_dir(), uint64_t seed = 1, int jobs = 1);

  /// $AREAREL_CACHE if set, else ".arearel-cache" in the working directory.
  static std::string default_cache_dir();

  const std::string& cache_dir() const { return dir_; }
  uint64_t seed() const { return seed_; }
  int jobs() const { return jobs_; }
  void set_log(std::function<void(const std::string&)> log) { log_ = std::move(log); }

  StoredPoly area_polynomial(const Triangulation& t);
  HomogPoly catalog_poly(const std::string& name);
  PolyStore store_for(const std::vector<std::string>& names);

  /// E_1..E_l, computing any missing polynomial first. Volumes are kept
  /// for the life of the workspace.
  std::vector<Volume> volumes(int l);

  std::string entry_path(const Triangulation& t) const;

 private:
  std::string dir_;
  uint64_t seed_;
  int jobs_;
  std::function<void(const std::string&)> log_;
  std::map<std::string, std::pair<HomogPoly, InterpolationReport>> memo_;  // by canonical code
  std::map<std::string, Triangulation> catalog_;
  std::map<int, Volume> volumes_;

  void note(const std::string& msg) const {
    if (log_) log_(msg);
  }
  const Triangulation& catalog_entry(const std::string& name);
};

uint64_t fnv1a64(const std::string& bytes);
std::string hex_string(const std::string& bytes);

}  // namespace arearel
