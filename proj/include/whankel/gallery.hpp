#pragma once

#include <map>
#include <string>
#include <vector>

#include "whankel/functions.hpp"

namespace whankel::functions {

// Transform parameters plus entry-specific knobs (beta, t0, base, ...).
struct GalleryParams {
  double alpha = 0.0;
  double nu = 0.0;
  double mu = 0.0;
  std::map<std::string, double> knobs;

  double knob(const std::string& key, double fallback) const;
};

struct GalleryEntry {
  std::string name;
  std::string formula;
  std::string constraints;
  std::string role;
  std::vector<std::string> knobs;
  bool monotone = false;  // monotone for every admissible parameter choice
};

const std::vector<GalleryEntry>& gallery_registry();

// Throws InvalidArgument for unknown names, unknown knobs or parameter
// combinations outside the entry's constraints.
TestFunction gallery(const std::string& name, const GalleryParams& params = {});

// "name" or "name:key=val,key=val" with the transform parameters supplied
// separately.
TestFunction gallery_from_spec(const std::string& spec, double alpha, double nu, double mu);

}  // namespace whankel::functions
