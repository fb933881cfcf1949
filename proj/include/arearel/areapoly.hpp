#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "arearel/draw.hpp"
#include "arearel/poly.hpp"
#include "arearel/tri.hpp"

namespace arearel {

struct InterpolationConfig {
  uint64_t seed = 1;
  int min_primes = 3;
  int max_primes = 12;
  double margin = 0.10;
  int degree_cap = 8;
  int verify_samples = 20;
  int jobs = 1;
  /// Optional progress sink.
  std::function<void(const std::string&)> log;
};

/// Outcome of the kernel computation at one degree for one prime.
struct KernelTrial {
  int degree = 0;
  uint64_t prime = 0;
  size_t monomials = 0;
  size_t samples = 0;
  size_t kernel_dim = 0;
};

struct InterpolationReport {
  int degree = 0;
  std::vector<uint64_t> primes;            ///< primes whose kernels were combined
  std::vector<size_t> samples_per_prime;   ///< at the final degree
  std::vector<KernelTrial> trials;         ///< every kernel computation, in order
  HomogPoly poly;
  int verification_samples = 0;
  double seconds = 0;
};

/// Monomials of degree d in n variables, graded-lex greatest first.
std::vector<Exponents> monomials(int nvars, int degree);

/// Throws std::runtime_error if the degree cap is exceeded or the primes do
/// not agree within max_primes.
std::pair<HomogPoly, InterpolationReport> area_polynomial(const Triangulation& t,
                                                          const InterpolationConfig& config = {});

struct VanishingResult {
  bool ok = true;
  int trials = 0;
  std::optional<Drawing> counterexample;
  std::optional<Scalar> value;
};

/// Evaluates p at the areas of `trials` sampled drawings of t, exactly.
VanishingResult verify_vanishing(const HomogPoly& p, const Triangulation& t, int trials, uint64_t seed = 7);

/// Exact value of p at the areas of one drawing (any ground field Q or Q(i)).
Scalar evaluate_at_drawing(const HomogPoly& p, const Triangulation& t, const Drawing& d);

nlohmann::json report_to_json(const InterpolationReport& r);
InterpolationReport report_from_json(const nlohmann::json& j);

}  // namespace arearel
