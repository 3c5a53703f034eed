#pragma once

// JSON reports shared by the command-line tool and the acceptance suite.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "towerkit/error.hpp"
#include "towerkit/ncplane.hpp"
#include "towerkit/surface.hpp"

namespace towerkit {

using Json = nlohmann::ordered_json;

struct Report {
  Json json;
  int exit_code = 0;
};

/// 2 for input problems (parse errors, bad tensors), 1 for failed verdicts.
int exit_code_for(ErrorCode code);
Report error_report(const std::string& command, const Error& e);

Field parse_field(const std::string& text);

Report check_report(const std::string& quiver_path, const Field& field = {});
Report realize_report(const std::string& quiver_path, const std::string& m_policy, const Field& field = {});

struct IsingOptions {
  std::uint64_t seed = 1;
  int retries = 16;
  std::optional<FormMatrix> phi;  // overrides the seed
};
Report ising_report(const IsingOptions& opts);

struct TensorSource {
  enum Kind { File, Standard, Sklyanin } kind = Standard;
  std::string path;
  std::array<Rational, 3> abc{1, 2, 3};
};
Report ncplane_report(const TensorSource& src, int max_degree = 8);

Report collection_report(const std::string& quiver_path, const std::vector<std::string>& module_paths,
                         const Field& field = {});
Report sheaf_report(const std::string& recipe, const std::optional<std::string>& against);

/// Indented plain-text rendering of a report.
std::string render_text(const Json& j);

}  // namespace towerkit
