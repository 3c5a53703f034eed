#pragma once

// Ordinary extensions [[A, 0], [M, k]], the decomposition of an algebra into
// a chain of them, and symbolic towers of projective bundles.

#include <optional>
#include <string>
#include <vector>

#include "towerkit/collections.hpp"

namespace towerkit {

inline constexpr const char* kGuaranteedFlag = "guaranteed-by-paper, not computed";
inline constexpr const char* kAssertedFlag = "paper-asserted";

struct OrdinaryExtension {
  AlgebraPtr base;
  Module module;
  AlgebraPtr total;
  // new_arrows[g] is the arrow of `total` for the g-th top generator of module
  std::vector<std::size_t> new_arrows;
  ProjectiveCover cover;
};

OrdinaryExtension extend(const Module& m, const std::string& name = "");

struct DecompositionStep {
  int k = 0;
  AlgebraPtr base;                 // A_k
  AlgebraPtr total;                // A_{k+1}
  Module module;                   // M_k = rad P_{k+1} over A_k
  std::vector<Matrix> embedding;   // M_k -> P_{k+1} per vertex, coordinates in basis(i, k+1)
};

std::vector<DecompositionStep> decompose(const AlgebraPtr& alg);

/// Algebra map extend(A_k, M_k).total -> A_{k+1}: old arrows by name, new
/// arrows to the generators of M_k inside P_{k+1}.
AlgebraMorphism extension_morphism(const OrdinaryExtension& ext, const DecompositionStep& step);

struct MPolicy {
  std::optional<std::size_t> fixed;  // empty: dim M + 3

  static MPolicy parse(const std::string& text);
  std::size_t choose(std::size_t dim_m) const;
  std::string to_string() const;
};

struct StepCertificate {
  // ext_projectives[i-1] = dim Ext^l(P_i, M_k)
  std::vector<std::vector<std::size_t>> ext_projectives;
  std::vector<std::size_t> hom_dims;       // dim Hom(P_i, M_k)
  std::vector<std::size_t> expected_homs;  // |basis(i, k+1)| in the extended algebra
  std::vector<std::size_t> new_self_ext;   // Ext^l(P_{k+1}, P_{k+1}) over A_{k+1}
  bool higher_vanish = false;              // (a)
  bool homs_match = false;                 // (b)
  bool new_exceptional = false;            // (c)

  bool ok() const { return higher_vanish && homs_match && new_exceptional; }
};

struct TowerStep {
  int k = 0;
  std::string variant = "bundle";  // "bundle" (kernel-dual construction) or "projectivization"
  AlgebraPtr base;
  AlgebraPtr total;
  Module module;
  std::size_t dim_m = 0;
  std::size_t m = 0;
  std::size_t fiber_rank = 0;
  std::size_t new_bundle_rank = 0;
  std::size_t dim_increment = 0;
  std::vector<std::string> assumptions;
  StepCertificate certificate;
};

struct Tower {
  std::string base = "P1";
  std::size_t base_dim = 1;
  std::vector<std::string> base_records;
  std::vector<TowerStep> steps;
  std::size_t total_dim = 1;
  std::vector<std::size_t> bundle_ranks;

  bool certificates_ok() const;
};

/// Throws PolicyTooSmall when the policy picks m < dim M + 3.
Tower realize(const AlgebraPtr& alg, const MPolicy& policy = {});

/// Checks (a) higher Ext(P_i, M_k) = 0, (b) Hom(P_i, M_k) against the extended
/// algebra, (c) P_{k+1} exceptional and orthogonal to earlier projectives.
StepCertificate verify_step_certificates(const TowerStep& step);

/// Starting point for projectivization pipelines on a known variety.
Tower custom_base(const std::string& name, std::size_t dim, std::vector<std::size_t> bundle_ranks);

/// Projectivization P(M^vee) of a vector bundle representing M, of the given
/// rank. Appends the step to `tower`. Throws RankTooSmall when rank < 2.
TowerStep alt_step_bundle(Tower& tower, const Module& m, std::size_t bundle_rank);

}  // namespace towerkit
