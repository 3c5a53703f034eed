#pragma once

// Quivers on ordered vertices 1..n with s(a) < t(a), paths, and the text DSL.
//
// Paths are stored in traversal order and written right-to-left:
// the path with arrows {a1, a2} (a1 first) prints as "a2*a1".

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "towerkit/linalg.hpp"

namespace towerkit {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

class Quiver {
 public:
  Quiver() = default;
  explicit Quiver(int n) : n_(n) {}

  int vertex_count() const { return n_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t idx) const { return arrows_.at(idx); }

  /// Throws Directedness / UnknownName / Parse on invalid input.
  std::size_t add_arrow(const std::string& name, int source, int target);
  /// Index of the named arrow, or throws UnknownName.
  std::size_t arrow_index(std::string_view name) const;
  bool has_arrow(std::string_view name) const;

  /// Arrows a with s(a) == source and t(a) == target, in declaration order.
  std::vector<std::size_t> arrows_between(int source, int target) const;

 private:
  int n_ = 0;
  std::vector<Arrow> arrows_;
};

struct Path {
  int source = 0;
  int target = 0;
  std::vector<std::size_t> arrows;  // traversal order

  static Path trivial(int vertex) { return Path{vertex, vertex, {}}; }
  std::size_t length() const { return arrows.size(); }

  auto operator<=>(const Path&) const = default;
  bool operator==(const Path&) const = default;
};

/// "e3" for trivial paths, otherwise "a2*a1".
std::string path_name(const Quiver& q, const Path& p);

/// Concatenation x*y (y first, then x). Requires s(x) == t(y).
Path compose(const Path& x, const Path& y);

/// Length first, then lexicographic on the written arrow-name sequence.
bool path_order_less(const Quiver& q, const Path& a, const Path& b);

/// All paths i -> j in path_order_less order; {e_i} when i == j.
std::vector<Path> enumerate_paths(const Quiver& q, int i, int j);

struct PathVector {
  int source = 0;
  int target = 0;
  std::map<Path, Rational> terms;  // no zero coefficients

  void add(const Path& p, const Rational& c);
  bool is_zero() const { return terms.empty(); }
};

std::string path_vector_to_string(const Quiver& q, const PathVector& v);

struct QuiverPresentation {
  std::string name = "Q";
  Quiver quiver;
  std::vector<PathVector> relations;
};

QuiverPresentation parse_quiver(std::string_view text);
QuiverPresentation load_quiver(const std::string& path);
std::string to_dsl(const QuiverPresentation& p);

/// Parses one linear combination such as "a2*b1 - 3/2*b2*a1".
PathVector parse_lincomb(const Quiver& q, std::string_view text);

}  // namespace towerkit
