#ifndef DIRPARETO_GALLERY_HPP
#define DIRPARETO_GALLERY_HPP

#include <string>
#include <vector>

#include "dirpareto/problem_io.hpp"

namespace dirpareto::cli {

/// One command run of a gallery example with its expected verdict.
struct GalleryRun {
  std::string label;
  std::string command;
  ProblemFile problem;
  std::string expected;
};

struct GalleryExample {
  std::string name;
  std::string summary;
  std::vector<GalleryRun> runs;  // the first run decides the exit code
};

const std::vector<std::string>& gallery_names();

/// Throws Error(kInvalidArgument) for an unknown name.
GalleryExample gallery_example(const std::string& name);

/// Region bounded by the cardioid x = 1 - 2cos t + cos 2t, y = 2 sin t - sin 2t.
SetSpec cardioid_region();

/// H ∪ (closed region of the curve γ ∩ -H), H = {x + y >= 0}.
SetSpec curve_halfplane_set();

/// 64 directions (cos t, sin t), t = π + 0.25π (j + 1/2)/64.
std::vector<Vector> curve_halfplane_arc();

/// `count` equispaced directions on the closed arc [θ1, θ2].
std::vector<Vector> arc_directions(double theta1, double theta2, int count);

}  // namespace dirpareto::cli

#endif  // DIRPARETO_GALLERY_HPP
