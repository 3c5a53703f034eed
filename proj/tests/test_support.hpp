#pragma once

#include <string>

#include "towerkit/algebra.hpp"
#include "towerkit/random.hpp"

inline std::string data_path(const std::string& file) { return std::string(TOWERKIT_DATA_DIR) + "/" + file; }

// Random directed quiver with up to two arrows per pair and a few relations
// that are random combinations of parallel paths of length >= 2.
inline towerkit::QuiverPresentation random_presentation(towerkit::Rng& rng, int n) {
  using namespace towerkit;
  QuiverPresentation p;
  p.name = "rand" + std::to_string(n);
  p.quiver = Quiver(n);
  int count = 0;
  for (int s = 1; s <= n; ++s)
    for (int t = s + 1; t <= n; ++t) {
      auto arrows = rng.uniform(0, t == s + 1 ? 2 : 1);
      for (int k = 0; k < arrows; ++k) p.quiver.add_arrow("r" + std::to_string(++count), s, t);
    }
  auto relations = rng.uniform(0, 2);
  for (int r = 0; r < relations; ++r) {
    int i = static_cast<int>(rng.uniform(1, n));
    int j = static_cast<int>(rng.uniform(1, n));
    if (j < i + 2) continue;
    std::vector<Path> long_paths;
    for (const auto& path : enumerate_paths(p.quiver, i, j))
      if (path.length() >= 2) long_paths.push_back(path);
    if (long_paths.empty()) continue;
    PathVector v;
    v.source = i;
    v.target = j;
    for (const auto& path : long_paths)
      if (rng.uniform(0, 1) == 1) v.add(path, rng.nonzero_rational(3));
    if (v.is_zero()) v.add(long_paths.front(), 1);
    p.relations.push_back(v);
  }
  return p;
}
