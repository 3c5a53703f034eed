#include "towerkit/module.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "towerkit/error.hpp"

namespace towerkit {

namespace {

std::size_t idx(int vertex) { return static_cast<std::size_t>(vertex - 1); }

void require_same_algebra(const Module& a, const Module& b) {
  if (a.algebra()->id() != b.algebra()->id())
    throw Error(ErrorCode::MixedAlgebras, "modules '" + a.name() + "' and '" + b.name() + "' live over different algebras");
}

}  // namespace

Module::Module(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<Matrix> rho, std::string name)
    : alg_(std::move(alg)), name_(std::move(name)), dims_(std::move(dims)), rho_(std::move(rho)) {
  const Quiver& q = alg_->quiver();
  if (dims_.size() != static_cast<std::size_t>(q.vertex_count()))
    throw Error(ErrorCode::InvalidModule, name_ + ": expected " + std::to_string(q.vertex_count()) + " dimensions");
  if (rho_.size() != q.arrows().size())
    throw Error(ErrorCode::InvalidModule, name_ + ": expected one matrix per arrow");
  for (std::size_t a = 0; a < rho_.size(); ++a) {
    const Arrow& arr = q.arrow(a);
    if (rho_[a].rows() != dim(arr.source) || rho_[a].cols() != dim(arr.target))
      throw Error(ErrorCode::InvalidModule, name_ + ": map " + arr.name + " has shape " + std::to_string(rho_[a].rows()) +
                                                "x" + std::to_string(rho_[a].cols()) + ", expected " +
                                                std::to_string(dim(arr.source)) + "x" + std::to_string(dim(arr.target)));
    if (!(rho_[a].field() == alg_->field()))
      throw Error(ErrorCode::InvalidModule, name_ + ": map " + arr.name + " over the wrong field");
  }
  for (std::size_t r = 0; r < alg_->presentation().relations.size(); ++r) {
    const PathVector& g = alg_->presentation().relations[r];
    Matrix sum(dim(g.source), dim(g.target), alg_->field());
    for (const auto& [p, c] : g.terms) sum += c * rho_path(p);
    if (!sum.is_zero())
      throw Error(ErrorCode::InvalidModule,
                  name_ + ": relation " + path_vector_to_string(q, g) + " does not act by zero");
  }
}

Module Module::zero(AlgebraPtr alg) {
  const Quiver& q = alg->quiver();
  std::vector<Matrix> rho;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) rho.emplace_back(0, 0, alg->field());
  std::vector<std::size_t> dims(static_cast<std::size_t>(q.vertex_count()), 0);
  return Module(std::move(alg), std::move(dims), std::move(rho), "0");
}

std::size_t Module::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }

Matrix Module::rho_path(const Path& p) const {
  Matrix out = Matrix::identity(dim(p.source), alg_->field());
  for (auto a : p.arrows) out = out * rho_[a];
  return out;
}

Matrix Module::act(const Element& x) const {
  Matrix out(dim(x.source), dim(x.target), alg_->field());
  const auto& b = alg_->basis(x.source, x.target);
  for (std::size_t k = 0; k < b.size(); ++k)
    if (x.coords[k] != 0) out += x.coords[k] * rho_path(b[k]);
  return out;
}

std::string Module::fingerprint() const {
  std::ostringstream out;
  out << alg_->id() << "|";
  for (auto d : dims_) out << d << ",";
  for (const auto& m : rho_) out << "|" << m.to_string();
  return out.str();
}

bool ModuleMap::is_homomorphism() const {
  const Quiver& q = source.algebra()->quiver();
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& arr = q.arrow(a);
    if (!(comps[idx(arr.source)] * source.rho(a) == target.rho(a) * comps[idx(arr.target)])) return false;
  }
  return true;
}

bool ModuleMap::is_zero() const {
  for (const auto& c : comps)
    if (!c.is_zero()) return false;
  return true;
}

bool ModuleMap::is_isomorphism() const {
  if (!is_homomorphism()) return false;
  for (const auto& c : comps)
    if (c.rows() != c.cols() || rank(c) != c.rows()) return false;
  return true;
}

ModuleMap identity_map(const Module& m) {
  ModuleMap f{m, m, {}};
  for (auto d : m.dims()) f.comps.push_back(Matrix::identity(d, m.algebra()->field()));
  return f;
}

ModuleMap zero_map(const Module& source, const Module& target) {
  require_same_algebra(source, target);
  ModuleMap f{source, target, {}};
  for (std::size_t i = 0; i < source.dims().size(); ++i)
    f.comps.emplace_back(target.dims()[i], source.dims()[i], source.algebra()->field());
  return f;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  ModuleMap h{f.source, g.target, {}};
  for (std::size_t i = 0; i < f.comps.size(); ++i) h.comps.push_back(g.comps[i] * f.comps[i]);
  return h;
}

ModuleMap linear_combination(const std::vector<ModuleMap>& maps, const std::vector<Rational>& coeffs) {
  if (maps.empty()) throw Error(ErrorCode::Internal, "empty linear combination of maps");
  ModuleMap out = zero_map(maps[0].source, maps[0].target);
  for (std::size_t k = 0; k < maps.size(); ++k)
    for (std::size_t i = 0; i < out.comps.size(); ++i) out.comps[i] += coeffs[k] * maps[k].comps[i];
  return out;
}

Module projective_sum(const AlgebraPtr& alg, const std::vector<int>& vertices) {
  const Quiver& q = alg->quiver();
  const int n = q.vertex_count();
  std::vector<std::size_t> dims(static_cast<std::size_t>(n), 0);
  // offsets[j-1][g]: start of copy g inside the space at vertex j
  std::vector<std::vector<std::size_t>> offsets(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    for (int v : vertices) {
      offsets[idx(j)].push_back(dims[idx(j)]);
      dims[idx(j)] += j <= v ? alg->hom_dim(j, v) : 0;
    }
  }
  std::vector<Matrix> rho;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& arr = q.arrow(a);
    Matrix m(dims[idx(arr.source)], dims[idx(arr.target)], alg->field());
    for (std::size_t g = 0; g < vertices.size(); ++g) {
      int v = vertices[g];
      if (arr.target > v) continue;
      const auto& tb = alg->basis(arr.target, v);
      for (std::size_t k = 0; k < tb.size(); ++k) {
        Path p{arr.source, v, {a}};
        p.arrows.insert(p.arrows.end(), tb[k].arrows.begin(), tb[k].arrows.end());
        Vec nf = alg->normal_form(p);
        for (std::size_t r = 0; r < nf.size(); ++r)
          if (nf[r] != 0) m.set(offsets[idx(arr.source)][g] + r, offsets[idx(arr.target)][g] + k, nf[r]);
      }
    }
    rho.push_back(std::move(m));
  }
  std::string name;
  for (int v : vertices) name += (name.empty() ? "P" : "+P") + std::to_string(v);
  return Module(alg, std::move(dims), std::move(rho), name.empty() ? "0" : name);
}

Module projective(const AlgebraPtr& alg, int i) { return projective_sum(alg, {i}); }

Module simple(const AlgebraPtr& alg, int i) {
  const Quiver& q = alg->quiver();
  std::vector<std::size_t> dims(static_cast<std::size_t>(q.vertex_count()), 0);
  dims.at(idx(i)) = 1;
  std::vector<Matrix> rho;
  for (const auto& arr : q.arrows()) rho.emplace_back(dims[idx(arr.source)], dims[idx(arr.target)], alg->field());
  return Module(alg, std::move(dims), std::move(rho), "S" + std::to_string(i));
}

Module direct_sum(const Module& a, const Module& b) {
  require_same_algebra(a, b);
  const Quiver& q = a.algebra()->quiver();
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < a.dims().size(); ++i) dims.push_back(a.dims()[i] + b.dims()[i]);
  std::vector<Matrix> rho;
  for (std::size_t k = 0; k < q.arrows().size(); ++k) {
    const Arrow& arr = q.arrow(k);
    Matrix m(dims[idx(arr.source)], dims[idx(arr.target)], a.algebra()->field());
    m.set_block(0, 0, a.rho(k));
    m.set_block(a.dim(arr.source), a.dim(arr.target), b.rho(k));
    rho.push_back(std::move(m));
  }
  return Module(a.algebra(), std::move(dims), std::move(rho), a.name() + "+" + b.name());
}

HomSpace hom(const Module& m, const Module& n) {
  require_same_algebra(m, n);
  const AlgebraPtr& alg = m.algebra();
  const Quiver& q = alg->quiver();
  const int nv = q.vertex_count();
  std::vector<std::size_t> off(static_cast<std::size_t>(nv) + 1, 0);
  for (int j = 1; j <= nv; ++j) off[idx(j) + 1] = off[idx(j)] + n.dim(j) * m.dim(j);
  const std::size_t unknowns = off.back();

  std::size_t eqs = 0;
  for (const auto& arr : q.arrows()) eqs += n.dim(arr.source) * m.dim(arr.target);
  Matrix sys(eqs, unknowns, alg->field());
  std::size_t row = 0;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& arr = q.arrow(a);
    const int s = arr.source;
    const int t = arr.target;
    const Matrix& rm = m.rho(a);  // dM_s x dM_t
    const Matrix& rn = n.rho(a);  // dN_s x dN_t
    // (f_s rho^M_a - rho^N_a f_t)[r][c] = 0
    for (std::size_t r = 0; r < n.dim(s); ++r) {
      for (std::size_t c = 0; c < m.dim(t); ++c) {
        for (std::size_t k = 0; k < m.dim(s); ++k)
          if (rm(k, c) != 0) sys.add_to(row, off[idx(s)] + r * m.dim(s) + k, rm(k, c));
        for (std::size_t k = 0; k < n.dim(t); ++k)
          if (rn(r, k) != 0) sys.add_to(row, off[idx(t)] + k * m.dim(t) + c, -rn(r, k));
        ++row;
      }
    }
  }
  Matrix ker = kernel(sys);
  HomSpace out;
  for (std::size_t b = 0; b < ker.cols(); ++b) {
    ModuleMap f{m, n, {}};
    for (int j = 1; j <= nv; ++j) {
      Matrix c(n.dim(j), m.dim(j), alg->field());
      for (std::size_t r = 0; r < n.dim(j); ++r)
        for (std::size_t k = 0; k < m.dim(j); ++k) c.set(r, k, ker(off[idx(j)] + r * m.dim(j) + k, b));
      f.comps.push_back(std::move(c));
    }
    out.basis.push_back(std::move(f));
  }
  return out;
}

std::size_t hom_dim(const Module& m, const Module& n) { return hom(m, n).dim(); }

Submodule submodule(const Module& m, const std::vector<Matrix>& gens) {
  const AlgebraPtr& alg = m.algebra();
  const Quiver& q = alg->quiver();
  const int nv = q.vertex_count();
  std::vector<Matrix> span(gens.begin(), gens.end());
  // images only move to smaller vertices, so one descending sweep closes the span
  for (int t = nv; t >= 1; --t) {
    span[idx(t)] = column_basis(span[idx(t)]);
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
      const Arrow& arr = q.arrow(a);
      if (arr.target != t) continue;
      span[idx(arr.source)] = hstack(span[idx(arr.source)], m.rho(a) * span[idx(t)]);
    }
  }
  std::vector<std::size_t> dims;
  for (int j = 1; j <= nv; ++j) dims.push_back(span[idx(j)].cols());
  std::vector<Matrix> rho;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& arr = q.arrow(a);
    auto sol = solve(span[idx(arr.source)], m.rho(a) * span[idx(arr.target)]);
    if (!sol) throw Error(ErrorCode::Internal, "submodule not closed");
    rho.push_back(*sol);
  }
  Module sub(alg, std::move(dims), std::move(rho), "sub(" + m.name() + ")");
  ModuleMap inc{sub, m, span};
  return Submodule{std::move(sub), std::move(inc)};
}

Quotient quotient(const Module& m, const std::vector<Matrix>& sub) {
  const AlgebraPtr& alg = m.algebra();
  const Quiver& q = alg->quiver();
  const int nv = q.vertex_count();
  std::vector<Matrix> comp, proj;
  std::vector<std::size_t> dims;
  for (int j = 1; j <= nv; ++j) {
    Matrix b = column_basis(sub[idx(j)]);
    Matrix c = complement_basis(b, m.dim(j));
    Matrix t = hstack(b, c);
    Matrix tinv = *inverse(t);
    comp.push_back(c);
    proj.push_back(tinv.block(b.cols(), 0, c.cols(), m.dim(j)));
    dims.push_back(c.cols());
  }
  std::vector<Matrix> rho;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& arr = q.arrow(a);
    rho.push_back(proj[idx(arr.source)] * m.rho(a) * comp[idx(arr.target)]);
  }
  Module quo(alg, std::move(dims), std::move(rho), m.name() + "/sub");
  ModuleMap pi{m, quo, proj};
  return Quotient{std::move(quo), std::move(pi)};
}

Submodule kernel(const ModuleMap& f) {
  std::vector<Matrix> gens;
  for (const auto& c : f.comps) gens.push_back(kernel(c));
  Submodule s = submodule(f.source, gens);
  s.module.set_name("ker");
  return s;
}

Submodule image(const ModuleMap& f) {
  std::vector<Matrix> gens;
  for (const auto& c : f.comps) gens.push_back(c);
  Submodule s = submodule(f.target, gens);
  s.module.set_name("im");
  return s;
}

Matrix radical_at(const Module& m, int i) {
  const Quiver& q = m.algebra()->quiver();
  Matrix span(m.dim(i), 0, m.algebra()->field());
  for (std::size_t a = 0; a < q.arrows().size(); ++a)
    if (q.arrow(a).source == i) span = hstack(span, m.rho(a));
  return column_basis(span);
}

Submodule radical(const Module& m) {
  std::vector<Matrix> gens;
  for (int i = 1; i <= m.algebra()->n(); ++i) gens.push_back(radical_at(m, i));
  Submodule s = submodule(m, gens);
  s.module.set_name("rad(" + m.name() + ")");
  return s;
}

Quotient top(const Module& m) {
  std::vector<Matrix> gens;
  for (int i = 1; i <= m.algebra()->n(); ++i) gens.push_back(radical_at(m, i));
  Quotient t = quotient(m, gens);
  t.module.set_name("top(" + m.name() + ")");
  return t;
}

std::vector<std::size_t> top_dims(const Module& m) {
  std::vector<std::size_t> out;
  for (int i = 1; i <= m.algebra()->n(); ++i) out.push_back(m.dim(i) - radical_at(m, i).cols());
  return out;
}

ProjectiveCover projective_cover(const Module& m) {
  if (m.is_zero()) throw Error(ErrorCode::ZeroModule, "projective cover of the zero module");
  const AlgebraPtr& alg = m.algebra();
  const int nv = alg->n();
  ProjectiveCover pc;
  for (int i = 1; i <= nv; ++i) {
    Matrix c = complement_basis(radical_at(m, i), m.dim(i));
    for (std::size_t k = 0; k < c.cols(); ++k) {
      pc.generators.push_back(i);
      pc.tops.push_back(c.column(k));
    }
  }
  pc.projective = projective_sum(alg, pc.generators);
  pc.epi = ModuleMap{pc.projective, m, {}};
  for (int j = 1; j <= nv; ++j) {
    Matrix comp(m.dim(j), pc.projective.dim(j), alg->field());
    std::size_t col = 0;
    for (std::size_t g = 0; g < pc.generators.size(); ++g) {
      int v = pc.generators[g];
      if (j > v) continue;
      for (const auto& b : alg->basis(j, v)) {
        comp.set_block(0, col, m.rho_path(b) * pc.tops[g]);
        ++col;
      }
    }
    pc.epi.comps.push_back(std::move(comp));
  }
  return pc;
}

Module restrict_module(const Module& m, const AlgebraPtr& sub) {
  const Quiver& big = m.algebra()->quiver();
  const Quiver& small = sub->quiver();
  std::vector<std::size_t> dims(m.dims().begin(), m.dims().begin() + small.vertex_count());
  std::vector<Matrix> rho;
  for (const auto& arr : small.arrows()) rho.push_back(m.rho(big.arrow_index(arr.name)));
  return Module(sub, std::move(dims), std::move(rho), m.name());
}

std::optional<ModuleMap> find_isomorphism(const Module& m, const Module& n, std::uint64_t seed) {
  if (m.dims() != n.dims()) return std::nullopt;
  HomSpace h = hom(m, n);
  if (m.is_zero()) return zero_map(m, n);
  if (h.dim() == 0) return std::nullopt;
  Rng rng(seed);
  for (int attempt = 0; attempt < 24; ++attempt) {
    std::vector<Rational> coeffs;
    for (std::size_t k = 0; k < h.dim(); ++k) coeffs.push_back(rng.small_rational(attempt < 4 ? 3 : 50));
    if (attempt == 0)
      for (auto& c : coeffs) c = 1;
    ModuleMap f = linear_combination(h.basis, coeffs);
    if (f.is_isomorphism()) return f;
  }
  return std::nullopt;
}

Module random_module(const AlgebraPtr& alg, Rng& rng, int max_copies) {
  const int nv = alg->n();
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<int> gens;
    for (int i = 1; i <= nv; ++i) {
      auto copies = rng.uniform(0, max_copies);
      for (int c = 0; c < copies; ++c) gens.push_back(i);
    }
    if (gens.empty()) continue;
    Module p = projective_sum(alg, gens);
    std::vector<Matrix> sub;
    for (int j = 1; j <= nv; ++j) {
      std::size_t d = p.dim(j);
      // a few random vectors from the radical keep the quotient's top intact
      Matrix rad = radical_at(p, j);
      auto count = rad.cols() == 0 ? 0 : rng.uniform(0, static_cast<std::int64_t>(rad.cols()));
      Matrix g(d, static_cast<std::size_t>(count), alg->field());
      for (std::int64_t c = 0; c < count; ++c) {
        Matrix coeff(rad.cols(), 1, alg->field());
        for (std::size_t r = 0; r < rad.cols(); ++r) coeff.set(r, 0, rng.small_rational(3));
        g.set_block(0, static_cast<std::size_t>(c), rad * coeff);
      }
      sub.push_back(std::move(g));
    }
    Submodule s = submodule(p, sub);
    Quotient qm = quotient(p, s.inclusion.comps);
    if (qm.module.is_zero()) continue;
    qm.module.set_name("R");
    return qm.module;
  }
  return simple(alg, 1);
}

namespace {

Matrix parse_matrix_literal(const std::string& text, std::size_t rows, std::size_t cols, Field field) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "[]" || s == "[[]]") {
    if (rows != 0 && cols != 0) throw Error(ErrorCode::Parse, "empty matrix where " + std::to_string(rows) + "x" + std::to_string(cols) + " expected");
    return Matrix(rows, cols, field);
  }
  if (s.size() < 4 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]")
    throw Error(ErrorCode::Parse, "malformed matrix literal '" + text + "'");
  std::string body = s.substr(2, s.size() - 4);
  std::vector<std::vector<Rational>> parsed;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = body.find("],[", pos);
    std::string row = body.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    std::vector<Rational> vals;
    std::stringstream rs(row);
    std::string tok;
    while (std::getline(rs, tok, ',')) vals.push_back(parse_rational(tok));
    parsed.push_back(std::move(vals));
    if (end == std::string::npos) break;
    pos = end + 3;
  }
  if (parsed.size() != rows) throw Error(ErrorCode::Parse, "matrix has " + std::to_string(parsed.size()) + " rows, expected " + std::to_string(rows));
  for (const auto& r : parsed)
    if (r.size() != cols) throw Error(ErrorCode::Parse, "matrix row has " + std::to_string(r.size()) + " entries, expected " + std::to_string(cols));
  return Matrix::from_rows(parsed, cols, field);
}

}  // namespace

Module parse_module(std::string_view text, const AlgebraPtr& alg) {
  const Quiver& q = alg->quiver();
  std::istringstream in{std::string(text)};
  std::string raw;
  std::string name = "M";
  std::vector<std::size_t> dims;
  std::vector<std::optional<std::string>> literal(q.arrows().size());
  bool have_header = false;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string kw;
    if (!(ls >> kw)) continue;
    std::string where = "line " + std::to_string(line_no) + ": ";
    if (kw == "module") {
      std::string over, qname;
      ls >> name >> over >> qname;
      if (over != "over" || qname.empty()) throw Error(ErrorCode::Parse, where + "expected 'module <name> over <quiver>'");
      if (qname != alg->name())
        throw Error(ErrorCode::Parse, where + "module is over '" + qname + "', algebra is '" + alg->name() + "'");
      have_header = true;
    } else if (kw == "dims") {
      std::string tok;
      while (ls >> tok) {
        try {
          std::size_t used = 0;
          long v = std::stol(tok, &used);
          if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
          dims.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
          throw Error(ErrorCode::Parse, where + "bad dimension '" + tok + "'");
        }
      }
    } else if (kw == "map") {
      std::string arrow, eq;
      ls >> arrow >> eq;
      if (eq != "=") throw Error(ErrorCode::Parse, where + "expected 'map <arrow> = [[...]]'");
      std::string rest;
      std::getline(ls, rest);
      literal[q.arrow_index(arrow)] = rest;
    } else {
      throw Error(ErrorCode::Parse, where + "unknown keyword '" + kw + "'");
    }
  }
  if (!have_header) throw Error(ErrorCode::Parse, "missing 'module' header");
  if (dims.size() != static_cast<std::size_t>(q.vertex_count()))
    throw Error(ErrorCode::Parse, "expected " + std::to_string(q.vertex_count()) + " dimensions");
  std::vector<Matrix> rho;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& arr = q.arrow(a);
    std::size_t r = dims[idx(arr.source)], c = dims[idx(arr.target)];
    rho.push_back(literal[a] ? parse_matrix_literal(*literal[a], r, c, alg->field()) : Matrix(r, c, alg->field()));
  }
  return Module(alg, std::move(dims), std::move(rho), name);
}

Module load_module(const std::string& path, const AlgebraPtr& alg) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_module(ss.str(), alg);
}

std::string to_module_text(const Module& m) {
  std::ostringstream out;
  out << "module " << m.name() << " over " << m.algebra()->name() << "\n";
  out << "dims";
  for (auto d : m.dims()) out << " " << d;
  out << "\n";
  const Quiver& q = m.algebra()->quiver();
  for (std::size_t a = 0; a < q.arrows().size(); ++a)
    if (!m.rho(a).is_zero()) out << "map " << q.arrow(a).name << " = " << m.rho(a).to_string() << "\n";
  return out.str();
}

}  // namespace towerkit
