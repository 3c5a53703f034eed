#pragma once

// Minimal projective resolutions, Ext via Hom(P_*, N), vertex filtrations.

#include <memory>
#include <vector>

#include "towerkit/module.hpp"

namespace towerkit {

struct Resolution {
  Module module;
  std::vector<std::vector<int>> generators;  // generators[k]: vertices of the summands of P_k
  std::vector<Module> terms;                 // P_0, P_1, ...
  std::vector<ModuleMap> differentials;      // differentials[k-1] = d_k : P_k -> P_{k-1}
  ModuleMap augmentation;                    // P_0 -> module

  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
};

using ResolutionPtr = std::shared_ptr<const Resolution>;

/// Memoized per (algebra, module). Throws Internal if the length exceeds n-1.
ResolutionPtr min_resolution(const Module& m);
void clear_resolution_cache();
std::size_t resolution_cache_size();

/// Exactness of P_* -> M -> 0 checked by rank at every vertex.
bool resolution_is_exact(const Resolution& r);
/// Every differential lands in the radical of its target.
bool resolution_is_minimal(const Resolution& r);

/// dim Ext^l(M, N) for l = 0..n-1.
std::vector<std::size_t> ext(const Module& m, const Module& n);

/// 0 = M_0 ⊂ M_1 ⊂ ... ⊂ M_n = M, M_p supported on vertices <= p.
std::vector<Submodule> vertex_filtration(const Module& m);

}  // namespace towerkit
