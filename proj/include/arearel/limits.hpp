#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "arearel/draw.hpp"
#include "arearel/poly.hpp"
#include "arearel/tri.hpp"

namespace arearel {

using Complex = std::complex<double>;

/// Polynomial in the path parameter s, constant coefficient first.
struct CPoly {
  std::vector<Complex> c;
  Complex operator()(double s) const;
  static CPoly constant(Complex v) { return CPoly{{v}}; }
};
CPoly operator+(const CPoly& a, const CPoly& b);
CPoly operator-(const CPoly& a, const CPoly& b);
CPoly operator*(double k, const CPoly& a);

using PathPoint = std::array<CPoly, 2>;

struct PathDrawing {
  Triangulation tri;
  std::vector<PathPoint> coords;
};

struct FloatDrawing {
  std::vector<std::array<Complex, 2>> coords;
};

/// Throws std::invalid_argument if the corners fail the parallelogram
/// identity as polynomials or every vertex sits at one point at s = 0.
void check_path(const PathDrawing& pd);

FloatDrawing eval_path(const PathDrawing& pd, double s);
std::vector<Complex> float_areas(const Triangulation& t, const FloatDrawing& d);

/// The exact drawing at s = 0 (constant coefficients, read exactly).
Drawing drawing_at_zero(const PathDrawing& pd);

/// s_k = 10^-k for k = 1..kmax.
std::vector<double> default_schedule(int kmax = 6);

struct LimitResult {
  std::vector<double> schedule;
  std::vector<std::vector<Complex>> tuples;  ///< areas / sigma at each s
  std::vector<Complex> limit;                ///< extrapolated to s = 0
  double estimate = 0;                       ///< max difference of the last two extrapolants
  bool converged = false;
};

/// Throws std::domain_error if the total area vanishes on the schedule.
LimitResult path_limit(const PathDrawing& pd, const std::vector<double>& schedule, double tol = 1e-9);

/// Moves the vertices strictly inside the bubble `cycle` to the centroid of
/// the cycle. Throws std::invalid_argument if the cycle is not a bubble of
/// the drawing at s = 0.
PathDrawing burst_bubble(const PathDrawing& pd, const std::vector<int>& cycle);

/// |area(polygon S_i, i in subset)| / sum |area(S_i S_{i+1} R)| at each s.
/// Indices in `subset` are 0-based. Throws std::invalid_argument when the
/// spokes do not cluster away from the hub at the smallest s, and
/// std::domain_error when the denominator vanishes.
std::vector<double> wheel_ratio(const std::vector<PathPoint>& spokes, const PathPoint& hub,
                                const std::vector<int>& subset, const std::vector<double>& schedule);

/// Triangle `tri` replaced by a small triangle x,y,z joined to its corners,
/// with one more vertex inside x,y,z. New vertices are appended in the order x, y, z, star.
Triangulation insert_bubble(const Triangulation& t, int tri);

/// Square p,q,r,s with x,y,z and star; triangle order A_1..A_10 as
/// (q,r,y), (r,s,z), (p,q,x), (q,y,x), (r,z,y), (s,x,z), (s,p,x), (star,x,y), (star,y,z), (star,z,x).
Triangulation bubble_example();
/// x,y,z on the left side at heights a s^2, b s^2, c s^2, star at (1,0), square of side s.
PathDrawing bubble_path(double a, double b, double c);
/// Vertices 4..6 = y_1..y_3, 7..9 = x_1..x_3, 10 = star; 16 triangles.
Triangulation double_bubble_example();
PathDrawing double_bubble_path(const std::array<double, 3>& a, const std::array<double, 3>& b);

nlohmann::json path_to_json(const PathDrawing& pd);
/// Accepts {"tri": catalog name} or {"triangulation": {...}} plus "coords":
/// [{"x": [c0, c1, ...], "y": [...]}, ...], coefficients as numbers or [re, im].
PathDrawing path_from_json(const nlohmann::json& j);

/// Header "s,A,B,..." then one row per schedule point and a final "limit" row.
std::string limit_to_csv(const LimitResult& r);

}  // namespace arearel
