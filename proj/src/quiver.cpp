#include "towerkit/quiver.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include "towerkit/error.hpp"

namespace towerkit {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

bool looks_numeric(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '/';
  });
}

int parse_vertex(const std::string& tok, int n, int line) {
  int v = 0;
  try {
    std::size_t used = 0;
    v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": bad vertex '" + tok + "'");
  }
  if (v < 1 || v > n)
    throw Error(ErrorCode::UnknownName, "line " + std::to_string(line) + ": unknown vertex " + tok);
  return v;
}

}  // namespace

std::size_t Quiver::add_arrow(const std::string& name, int source, int target) {
  if (!valid_identifier(name)) throw Error(ErrorCode::Parse, "bad arrow name '" + name + "'");
  if (has_arrow(name)) throw Error(ErrorCode::Parse, "duplicate arrow '" + name + "'");
  if (source < 1 || source > n_ || target < 1 || target > n_)
    throw Error(ErrorCode::UnknownName, "arrow '" + name + "' uses an unknown vertex");
  if (source >= target)
    throw Error(ErrorCode::Directedness, "arrow '" + name + "' goes " + std::to_string(source) +
                                              " -> " + std::to_string(target));
  arrows_.push_back(Arrow{name, source, target});
  return arrows_.size() - 1;
}

std::size_t Quiver::arrow_index(std::string_view name) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].name == name) return i;
  throw Error(ErrorCode::UnknownName, "unknown arrow '" + std::string(name) + "'");
}

bool Quiver::has_arrow(std::string_view name) const {
  return std::any_of(arrows_.begin(), arrows_.end(), [&](const Arrow& a) { return a.name == name; });
}

std::vector<std::size_t> Quiver::arrows_between(int source, int target) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].source == source && arrows_[i].target == target) out.push_back(i);
  return out;
}

std::string path_name(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e" + std::to_string(p.source);
  std::string out;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
    if (!out.empty()) out += "*";
    out += q.arrow(*it).name;
  }
  return out;
}

Path compose(const Path& x, const Path& y) {
  if (x.source != y.target) throw Error(ErrorCode::NonComposable, "paths do not compose");
  Path p{y.source, x.target, y.arrows};
  p.arrows.insert(p.arrows.end(), x.arrows.begin(), x.arrows.end());
  return p;
}

bool path_order_less(const Quiver& q, const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  for (std::size_t k = a.length(); k-- > 0;) {
    const std::string& na = q.arrow(a.arrows[k]).name;
    const std::string& nb = q.arrow(b.arrows[k]).name;
    if (na != nb) return na < nb;
  }
  return std::tie(a.source, a.target) < std::tie(b.source, b.target);
}

std::vector<Path> enumerate_paths(const Quiver& q, int i, int j) {
  std::vector<Path> out;
  if (i == j) {
    out.push_back(Path::trivial(i));
    return out;
  }
  if (i > j) return out;
  Path cur{i, i, {}};
  std::function<void(int)> dfs = [&](int v) {
    if (v == j) {
      cur.target = j;
      out.push_back(cur);
      return;
    }
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
      const Arrow& arr = q.arrow(a);
      if (arr.source != v || arr.target > j) continue;
      cur.arrows.push_back(a);
      dfs(arr.target);
      cur.arrows.pop_back();
    }
  };
  dfs(i);
  std::sort(out.begin(), out.end(), [&](const Path& a, const Path& b) { return path_order_less(q, a, b); });
  return out;
}

void PathVector::add(const Path& p, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

std::string path_vector_to_string(const Quiver& q, const PathVector& v) {
  if (v.terms.empty()) return "0";
  std::vector<std::pair<Path, Rational>> sorted(v.terms.begin(), v.terms.end());
  std::sort(sorted.begin(), sorted.end(),
            [&](const auto& a, const auto& b) { return path_order_less(q, a.first, b.first); });
  std::string out;
  bool first = true;
  for (const auto& [p, c] : sorted) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += path_name(q, p);
    first = false;
  }
  return out;
}

namespace {

void add_terms(const Quiver& q, std::string_view text, int sign, PathVector& out, bool& have_endpoints) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(ErrorCode::Parse, "empty linear combination");
  if (s == "0") return;

  std::vector<std::pair<int, std::string>> terms;
  std::size_t pos = 0;
  int cur_sign = 1;
  if (s[0] == '+' || s[0] == '-') {
    cur_sign = s[0] == '-' ? -1 : 1;
    pos = 1;
  }
  std::size_t start = pos;
  for (std::size_t k = pos; k <= s.size(); ++k) {
    if (k == s.size() || s[k] == '+' || s[k] == '-') {
      if (k == start) throw Error(ErrorCode::Parse, "dangling sign in '" + s + "'");
      terms.emplace_back(cur_sign, s.substr(start, k - start));
      if (k < s.size()) cur_sign = s[k] == '-' ? -1 : 1;
      start = k + 1;
    }
  }

  for (const auto& [tsign, term] : terms) {
    std::vector<std::string> factors;
    std::stringstream ss(term);
    std::string f;
    while (std::getline(ss, f, '*')) factors.push_back(f);
    if (factors.empty() || std::any_of(factors.begin(), factors.end(), [](const auto& x) { return x.empty(); }))
      throw Error(ErrorCode::Parse, "malformed term '" + term + "'");
    Rational coeff = sign * tsign;
    std::size_t first_arrow = 0;
    if (looks_numeric(factors[0])) {
      coeff *= parse_rational(factors[0]);
      first_arrow = 1;
    }
    if (first_arrow == factors.size()) throw Error(ErrorCode::ShortRelation, "constant term '" + term + "'");
    Path p;
    // written right-to-left: the last factor is traversed first
    for (std::size_t k = factors.size(); k-- > first_arrow;) {
      std::size_t a = q.arrow_index(factors[k]);
      const Arrow& arr = q.arrow(a);
      if (p.arrows.empty()) {
        p.source = arr.source;
      } else if (q.arrow(p.arrows.back()).target != arr.source) {
        throw Error(ErrorCode::NonComposable, "'" + term + "' is not a path");
      }
      p.arrows.push_back(a);
      p.target = arr.target;
    }
    if (!have_endpoints) {
      out.source = p.source;
      out.target = p.target;
      have_endpoints = true;
    } else if (p.source != out.source || p.target != out.target) {
      throw Error(ErrorCode::NonParallel, "terms of '" + std::string(text) + "' are not parallel");
    }
    out.add(p, coeff);
  }
}

}  // namespace

PathVector parse_lincomb(const Quiver& q, std::string_view text) {
  PathVector v;
  bool have = false;
  auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    add_terms(q, text, 1, v, have);
  } else {
    add_terms(q, text.substr(0, eq), 1, v, have);
    add_terms(q, text.substr(eq + 1), -1, v, have);
  }
  return v;
}

QuiverPresentation parse_quiver(std::string_view text) {
  QuiverPresentation pres;
  bool have_vertices = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    std::string where = "line " + std::to_string(line_no) + ": ";
    if (kw == "quiver") {
      std::string name;
      ls >> name;
      if (name.empty()) throw Error(ErrorCode::Parse, where + "missing quiver name");
      pres.name = name;
    } else if (kw == "vertices") {
      if (have_vertices) throw Error(ErrorCode::Parse, where + "duplicate 'vertices'");
      std::string tok, extra;
      ls >> tok;
      int n = 0;
      try {
        std::size_t used = 0;
        n = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error(ErrorCode::Parse, where + "bad vertex count '" + tok + "'");
      }
      if (n < 1 || (ls >> extra)) throw Error(ErrorCode::Parse, where + "bad vertex count");
      pres.quiver = Quiver(n);
      have_vertices = true;
    } else if (kw == "arrow") {
      if (!have_vertices) throw Error(ErrorCode::Parse, where + "'arrow' before 'vertices'");
      std::string name, s, arrow_tok, t, extra;
      ls >> name >> s >> arrow_tok >> t;
      if (t.empty() || arrow_tok != "->" || (ls >> extra))
        throw Error(ErrorCode::Parse, where + "expected 'arrow <name> <s> -> <t>'");
      int n = pres.quiver.vertex_count();
      pres.quiver.add_arrow(name, parse_vertex(s, n, line_no), parse_vertex(t, n, line_no));
    } else if (kw == "relation") {
      if (!have_vertices) throw Error(ErrorCode::Parse, where + "'relation' before 'vertices'");
      std::string rest = trim(line.substr(kw.size()));
      PathVector v = parse_lincomb(pres.quiver, rest);
      for (const auto& [p, c] : v.terms)
        if (p.length() < 2)
          throw Error(ErrorCode::ShortRelation, where + "relation contains a path of length < 2");
      if (v.is_zero()) continue;
      pres.relations.push_back(std::move(v));
    } else {
      throw Error(ErrorCode::Parse, where + "unknown keyword '" + kw + "'");
    }
  }
  if (!have_vertices) throw Error(ErrorCode::Parse, "missing 'vertices' line");
  return pres;
}

QuiverPresentation load_quiver(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_quiver(ss.str());
}

std::string to_dsl(const QuiverPresentation& p) {
  std::ostringstream out;
  out << "quiver " << p.name << "\n";
  out << "vertices " << p.quiver.vertex_count() << "\n";
  for (const auto& a : p.quiver.arrows()) out << "arrow " << a.name << " " << a.source << " -> " << a.target << "\n";
  for (const auto& r : p.relations) out << "relation " << path_vector_to_string(p.quiver, r) << "\n";
  return out.str();
}

}  // namespace towerkit
