#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "fredsing/kind.hpp"
#include "fredsing/model.hpp"

namespace fredsing {

using GalleryParams = std::map<std::string, double>;

struct GalleryFixture {
  std::string description;  // point family, e.g. "origin" or "(0, z)"
  Eigen::VectorXd point;
  KindLabel expected;
  std::string source;  // where the expected kind comes from
};

struct GalleryEntry {
  std::string name;
  GalleryParams params;
  MapModel model;
  std::vector<GalleryFixture> expected;
};

// Names: fold_t2, cusp_source_t3, transverse_k, family_kn, whitney,
// l2_truncated, eps_perturbed. Throws UnknownName / ParamOutOfRange.
GalleryEntry gallery_map(const std::string& name, const GalleryParams& params = {});

std::vector<std::string> gallery_names();

// The parameter cells used by the listing and the acceptance table, sorted by
// name then parameters.
std::vector<std::pair<std::string, GalleryParams>> gallery_catalogue();

std::string format_params(const GalleryParams& params);

}  // namespace fredsing
