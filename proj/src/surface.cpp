#include "towerkit/surface.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "towerkit/error.hpp"
#include "towerkit/random.hpp"

namespace towerkit {

namespace {

constexpr std::size_t kVars = 4;

// class degree of one P1 factor: 0 for nonnegative exponents, 1 when all <= -1
int mode(int e0, int e1) {
  if (e0 >= 0 && e1 >= 0) return 0;
  if (e0 <= -1 && e1 <= -1) return 1;
  return -1;
}
int xmode(const Exponent& e) { return mode(e[0], e[1]); }
int ymode(const Exponent& e) { return mode(e[2], e[3]); }

std::vector<std::array<int, 2>> p1_basis(int deg, int k) {
  std::vector<std::array<int, 2>> out;
  if (k == 0)
    for (int i = deg; i >= 0; --i) out.push_back({i, deg - i});
  else if (k == 1)
    for (int i = -1; i >= deg + 1; --i) out.push_back({i, deg - i});
  return out;
}

Rational eval_x(const Exponent& e, const std::array<Rational, 2>& p) {
  Rational v = 1;
  for (int i = 0; i < 2; ++i) {
    int n = e[static_cast<std::size_t>(i)];
    const Rational& base = p[static_cast<std::size_t>(i)];
    if (n >= 0) {
      for (int k = 0; k < n; ++k) v *= base;
    } else {
      if (base == 0) throw Error(ErrorCode::Internal, "evaluating a pole");
      for (int k = 0; k < -n; ++k) v /= base;
    }
  }
  return v;
}

bool same_point(const std::array<Rational, 2>& p, const std::array<Rational, 2>& q) {
  return p[0] * q[1] == p[1] * q[0];
}

std::pair<int, int> bidegree(const Exponent& e) { return {e[0] + e[1], e[2] + e[3]}; }

struct SumBasis {
  std::vector<std::size_t> offset;
  std::vector<std::map<Exponent, std::size_t>> index;
  std::vector<std::vector<Exponent>> basis;
  std::size_t total = 0;
};

SumBasis sum_basis(const std::vector<Atom>& atoms, int k) {
  SumBasis sb;
  for (const auto& a : atoms) {
    sb.offset.push_back(sb.total);
    auto b = coh_basis(a, k);
    std::map<Exponent, std::size_t> idx;
    for (std::size_t i = 0; i < b.size(); ++i) idx[b[i]] = i;
    sb.index.push_back(std::move(idx));
    sb.total += b.size();
    sb.basis.push_back(std::move(b));
  }
  return sb;
}

// Adds scale * (m . g) into column `col` of out, where m is a basis class on
// atom s and g a sum of Laurent monomials (classes of a line bundle). The
// product is read in the basis of atom t, with the Koszul sign of the
// Kunneth decomposition.
void accumulate_product(const Atom& s, const Exponent& m, const Polynomial& g, const Atom& t,
                        const std::map<Exponent, std::size_t>& tindex, std::size_t row_off, std::size_t col,
                        const Rational& scale, Matrix& out) {
  if (s.kind == Atom::Fiber && t.kind == Atom::Line) return;
  for (const auto& [n, c] : g.terms()) {
    int nx = xmode(n), ny = ymode(n);
    if (nx < 0 || ny < 0) throw Error(ErrorCode::Internal, "factor is not a cohomology class");
    Exponent prod(kVars, 0);
    Rational coeff = scale * c;
    int my = ymode(m);
    if (t.kind == Atom::Line) {
      if (nx + xmode(m) > 1 || ny + my > 1) continue;
      for (std::size_t i = 0; i < kVars; ++i) prod[i] = m[i] + n[i];
      if (xmode(prod) != xmode(m) + nx || ymode(prod) != my + ny) continue;
      if (my == 1 && nx == 1) coeff = -coeff;
    } else {
      // restriction to {p} x P1 only sees H^0 in the x direction
      if (nx != 0) continue;
      if (s.kind == Atom::Line && xmode(m) != 0) continue;
      if (ny + my > 1) continue;
      if (s.kind == Atom::Line) coeff *= eval_x(m, t.p);
      coeff *= eval_x(n, t.p);
      prod[2] = m[2] + n[2];
      prod[3] = m[3] + n[3];
      if (ymode(prod) != my + ny) continue;
    }
    auto it = tindex.find(prod);
    if (it == tindex.end()) continue;
    if (coeff != 0) out.add_to(row_off + it->second, col, coeff);
  }
}

void check_entry(const Atom& s, const Atom& t, const Polynomial& f) {
  if (f.is_zero()) return;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::DegreeMismatch, "map " + s.to_string() + " -> " + t.to_string() + ": " + why);
  };
  if (t.kind == Atom::Line && s.kind == Atom::Fiber) fail("a fiber sheaf has no nonzero maps to a line bundle");
  if (s.kind == Atom::Fiber && !same_point(s.p, t.p)) fail("fibers over different points");
  for (const auto& [e, c] : f.terms()) {
    if (xmode(e) != 0 || ymode(e) != 0) fail("entries must be polynomial forms");
    auto [dx, dy] = bidegree(e);
    if (t.kind == Atom::Line) {
      if (dx != t.a - s.a || dy != t.b - s.b) fail("entry has bidegree (" + std::to_string(dx) + "," + std::to_string(dy) + ")");
    } else {
      int sb = s.kind == Atom::Line ? s.b : s.d;
      if (dx != 0 || dy != t.d - sb) fail("entry has bidegree (" + std::to_string(dx) + "," + std::to_string(dy) + ")");
    }
  }
}

Polynomial y_form_2vars(const Polynomial& f) {
  Polynomial out(2);
  for (const auto& [e, c] : f.terms()) out.add_term({e[2], e[3]}, c);
  return out;
}

Polynomial det_poly(const std::vector<std::vector<Polynomial>>& m, std::size_t nv) {
  std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(nv, 1);
  if (n == 1) return m[0][0];
  Polynomial out(nv);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][c] * det_poly(minor, nv);
    if (c % 2) out -= term;
    else out += term;
  }
  return out;
}

void check_fiberwise_surjective(const std::vector<Atom>& sources, const std::vector<Atom>& targets, const FormMatrix& phi) {
  std::vector<bool> done(targets.size(), false);
  for (std::size_t r0 = 0; r0 < targets.size(); ++r0) {
    if (done[r0]) continue;
    std::vector<std::size_t> rows;
    for (std::size_t r = r0; r < targets.size(); ++r)
      if (same_point(targets[r].p, targets[r0].p)) {
        rows.push_back(r);
        done[r] = true;
      }
    // restricted to L_p the map is a matrix of binary forms in y
    std::vector<std::vector<Polynomial>> m;
    for (std::size_t r : rows) {
      std::vector<Polynomial> row;
      for (std::size_t s = 0; s < sources.size(); ++s) {
        row.push_back(y_form_2vars(phi[r][s]));
      }
      m.push_back(std::move(row));
    }
    std::vector<Polynomial> minors;
    std::vector<std::size_t> pick(rows.size());
    int maxdeg = 0;
    auto rec = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
      if (depth == rows.size()) {
        std::vector<std::vector<Polynomial>> sub;
        for (const auto& row : m) {
          std::vector<Polynomial> cols;
          for (std::size_t c : pick) cols.push_back(row[c]);
          sub.push_back(std::move(cols));
        }
        Polynomial d = det_poly(sub, 2);
        if (!d.is_zero()) {
          if (!d.is_homogeneous()) throw Error(ErrorCode::DegreeMismatch, "fiber map is not homogeneous");
          maxdeg = std::max(maxdeg, d.degree());
          minors.push_back(std::move(d));
        }
        return;
      }
      for (std::size_t c = start; c < sources.size(); ++c) {
        pick[depth] = c;
        self(self, depth + 1, c + 1);
      }
    };
    rec(rec, 0, 0);
    std::string where = targets[r0].to_string();
    if (minors.empty()) throw Error(ErrorCode::DegenerateMap, "map onto " + where + " vanishes identically");
    EliminationResult e = common_zero(minors, 2 * maxdeg + 2, 4);
    if (e.status != ZeroStatus::NoCommonZero)
      throw Error(ErrorCode::DegenerateMap, "map onto " + where + " is not surjective on the whole fiber");
  }
}

// x-cover lift of the connecting map Hom(sub, B) -> Ext^1(quot, B) for B a kernel
struct KernelLift {
  std::vector<Matrix> kernels;  // H^0(B(-sub_k)) inside H^0(S(-sub_k))
  Matrix delta;                 // columns in H^0(T(-quot)) coordinates
  Matrix image;                 // H^0(S(-quot)) -> H^0(T(-quot))
};

KernelLift kernel_lift(const BuiltSheaf& a, const BuiltSheaf& b) {
  const Atom& q = a.quot;
  BuiltSheaf bq = b.twist(-q.a, -q.b);
  for (const auto& s : bq.sources)
    if (coh(s)[1] != 0)
      throw Error(ErrorCode::UnsupportedRecipeDepth, "H^1 of " + s.to_string() + " is nonzero; no x-cover lift");
  KernelLift out;
  out.image = coh_map(bq.sources, bq.targets, bq.phi)[0];
  SumBasis tb = sum_basis(bq.targets, 0);

  std::vector<Matrix> cols;
  std::size_t class_off = 0;
  for (std::size_t k = 0; k < a.sub.size(); ++k) {
    const Atom& sk = a.sub[k];
    Atom hom_atom = Atom::line(sk.a - q.a, sk.b - q.b);
    auto ebasis = coh_basis(hom_atom, 1);
    Polynomial e(kVars);
    for (std::size_t i = 0; i < ebasis.size(); ++i) {
      const Rational& c = a.ext_class(class_off + i, 0);
      if (c == 0) continue;
      if (xmode(ebasis[i]) != 1) throw Error(ErrorCode::UnsupportedRecipeDepth, "extension class has a y-type component");
      e.add_term(ebasis[i], c);
    }
    class_off += ebasis.size();

    BuiltSheaf bk = b.twist(-sk.a, -sk.b);
    Matrix phi0 = coh_map(bk.sources, bk.targets, bk.phi)[0];
    Matrix ker = kernel(phi0);
    out.kernels.push_back(ker);
    SumBasis sb = sum_basis(bk.sources, 0);
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      Matrix col(tb.total, 1);
      std::vector<Polynomial> eta0, eta1;
      for (std::size_t i = 0; i < bk.sources.size(); ++i) {
        Polynomial section(kVars);
        for (std::size_t r = 0; r < sb.basis[i].size(); ++r)
          section.add_term(sb.basis[i][r], ker(sb.offset[i] + r, c));
        Polynomial cochain = section * e;
        Polynomial h0(kVars), h1(kVars);
        for (const auto& [ex, cf] : cochain.terms()) {
          if (ex[1] >= 0)
            h0.add_term(ex, cf);
          else if (ex[0] >= 0)
            h1.add_term(ex, -cf);
          else
            throw Error(ErrorCode::Internal, "cochain is not a coboundary");
        }
        eta0.push_back(std::move(h0));
        eta1.push_back(std::move(h1));
      }
      for (std::size_t r = 0; r < bq.targets.size(); ++r) {
        const Atom& t = bq.targets[r];
        const auto& eta = t.p[0] != 0 ? eta0 : eta1;
        Polynomial value(kVars);
        for (std::size_t i = 0; i < bq.sources.size(); ++i) {
          if (bq.phi[r][i].is_zero()) continue;
          Polynomial restricted(kVars);
          for (const auto& [ex, cf] : eta[i].terms())
            restricted.add_term({0, 0, ex[2], ex[3]}, cf * eval_x(ex, t.p));
          value += restricted * bq.phi[r][i];
        }
        for (const auto& [ex, cf] : value.terms()) {
          auto it = tb.index[r].find(ex);
          if (it == tb.index[r].end()) throw Error(ErrorCode::Internal, "lift leaves H^0 of the fiber");
          col.add_to(tb.offset[r] + it->second, 0, cf);
        }
      }
      cols.push_back(col);
    }
  }
  out.delta = Matrix(tb.total, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) out.delta.set_block(0, c, cols[c]);
  return out;
}

std::size_t relative_rank(const Matrix& image, const Matrix& delta) {
  if (delta.cols() == 0) return 0;
  return rank(hstack(image, delta)) - rank(image);
}

// Ext^j(sub, B) -> Ext^{j+1}(quot, B) for B a sum of atoms
std::size_t split_delta_rank(const BuiltSheaf& a, const std::vector<Atom>& parts, int j) {
  const Atom& q = a.quot;
  std::vector<Atom> tgt_atoms;
  for (const auto& p : parts) tgt_atoms.push_back(p.twist(-q.a, -q.b));
  SumBasis tb = sum_basis(tgt_atoms, j + 1);
  std::vector<Matrix> cols;
  std::size_t class_off = 0;
  for (const auto& sk : a.sub) {
    Atom hom_atom = Atom::line(sk.a - q.a, sk.b - q.b);
    auto ebasis = coh_basis(hom_atom, 1);
    Polynomial e(kVars);
    for (std::size_t i = 0; i < ebasis.size(); ++i) e.add_term(ebasis[i], a.ext_class(class_off + i, 0));
    class_off += ebasis.size();
    for (std::size_t l = 0; l < parts.size(); ++l) {
      Atom src = parts[l].twist(-sk.a, -sk.b);
      for (const auto& m : coh_basis(src, j)) {
        Matrix col(tb.total, 1);
        accumulate_product(src, m, e, tgt_atoms[l], tb.index[l], tb.offset[l], 0, 1, col);
        cols.push_back(col);
      }
    }
  }
  Matrix d(tb.total, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) d.set_block(0, c, cols[c]);
  return rank(d);
}

Dims3 add(const Dims3& x, const Dims3& y) { return {x[0] + y[0], x[1] + y[1], x[2] + y[2]}; }

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Atom Atom::line(int a, int b) {
  Atom x;
  x.kind = Line;
  x.a = a;
  x.b = b;
  return x;
}

Atom Atom::fiber(const Rational& p0, const Rational& p1, int d) {
  if (p0 == 0 && p1 == 0) throw Error(ErrorCode::Parse, "fiber point [0:0] is not a point");
  Atom x;
  x.kind = Fiber;
  x.p = {p0, p1};
  x.d = d;
  return x;
}

Atom Atom::twist(int ta, int tb) const {
  Atom x = *this;
  if (kind == Line) {
    x.a += ta;
    x.b += tb;
  } else {
    x.d += tb;
  }
  return x;
}

long Atom::chi() const { return kind == Line ? static_cast<long>(a + 1) * (b + 1) : d + 1; }

std::string Atom::to_string() const {
  if (kind == Line) return "O(" + std::to_string(a) + "," + std::to_string(b) + ")";
  return "O_L[" + towerkit::to_string(p[0]) + ":" + towerkit::to_string(p[1]) + "](" + std::to_string(d) + ")";
}

std::vector<Exponent> coh_basis(const Atom& s, int k) {
  std::vector<Exponent> out;
  if (s.kind == Atom::Fiber) {
    for (const auto& y : p1_basis(s.d, k)) out.push_back({0, 0, y[0], y[1]});
    return out;
  }
  for (int kx = 1; kx >= 0; --kx) {
    int ky = k - kx;
    if (ky < 0 || ky > 1) continue;
    for (const auto& x : p1_basis(s.a, kx))
      for (const auto& y : p1_basis(s.b, ky)) out.push_back({x[0], x[1], y[0], y[1]});
  }
  return out;
}

Dims3 coh(const Atom& s) { return {coh_basis(s, 0).size(), coh_basis(s, 1).size(), coh_basis(s, 2).size()}; }

Dims3 coh(const std::vector<Atom>& parts) {
  Dims3 h{0, 0, 0};
  for (const auto& p : parts) h = add(h, coh(p));
  return h;
}

Polynomial zero_form() { return Polynomial(kVars); }

Polynomial parse_form(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorCode::Parse, "empty form");
  Polynomial out(kVars);
  std::size_t pos = 0;
  while (pos < s.size()) {
    Rational sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw Error(ErrorCode::Parse, "bad form '" + text + "'");
    Rational coeff = sign;
    Exponent e(kVars, 0);
    std::stringstream ts(term);
    std::string factor;
    while (std::getline(ts, factor, '*')) {
      if (factor.empty()) throw Error(ErrorCode::Parse, "bad form '" + text + "'");
      if (factor[0] == 'x' || factor[0] == 'y') {
        if (factor.size() < 2 || (factor[1] != '0' && factor[1] != '1'))
          throw Error(ErrorCode::Parse, "unknown variable '" + factor + "'");
        std::size_t v = (factor[0] == 'x' ? 0 : 2) + static_cast<std::size_t>(factor[1] - '0');
        int power = 1;
        if (factor.size() > 2) {
          if (factor[2] != '^') throw Error(ErrorCode::Parse, "bad factor '" + factor + "'");
          try {
            power = std::stoi(factor.substr(3));
          } catch (const std::exception&) {
            throw Error(ErrorCode::Parse, "bad exponent in '" + factor + "'");
          }
          if (power < 0) throw Error(ErrorCode::Parse, "negative exponent in '" + factor + "'");
        }
        e[v] += power;
      } else {
        coeff *= parse_rational(factor);
      }
    }
    out.add_term(e, coeff);
    pos = end;
  }
  return out;
}

std::array<Matrix, 3> coh_map(const std::vector<Atom>& src, const std::vector<Atom>& tgt, const FormMatrix& f) {
  if (f.size() != tgt.size()) throw Error(ErrorCode::DegreeMismatch, "form matrix needs one row per target");
  for (const auto& row : f)
    if (row.size() != src.size()) throw Error(ErrorCode::DegreeMismatch, "form matrix needs one column per source");
  for (std::size_t t = 0; t < tgt.size(); ++t)
    for (std::size_t s = 0; s < src.size(); ++s) check_entry(src[s], tgt[t], f[t][s]);
  std::array<Matrix, 3> out;
  for (int k = 0; k < 3; ++k) {
    SumBasis sb = sum_basis(src, k), tb = sum_basis(tgt, k);
    Matrix m(tb.total, sb.total);
    for (std::size_t s = 0; s < src.size(); ++s)
      for (std::size_t r = 0; r < sb.basis[s].size(); ++r)
        for (std::size_t t = 0; t < tgt.size(); ++t) {
          if (f[t][s].is_zero()) continue;
          accumulate_product(src[s], sb.basis[s][r], f[t][s], tgt[t], tb.index[t], tb.offset[t], sb.offset[s] + r, 1, m);
        }
    out[static_cast<std::size_t>(k)] = std::move(m);
  }
  return out;
}

BuiltSheaf BuiltSheaf::twist(int ta, int tb) const {
  BuiltSheaf s = *this;
  for (auto* list : {&s.parts, &s.sources, &s.targets, &s.sub})
    for (auto& x : *list) x = x.twist(ta, tb);
  s.quot = quot.twist(ta, tb);
  return s;
}

std::size_t BuiltSheaf::rank() const {
  std::size_t r = 0;
  switch (kind) {
    case Split:
      for (const auto& p : parts) r += p.rank();
      return r;
    case Kernel:
      for (const auto& p : sources) r += p.rank();
      for (const auto& p : targets) r -= p.rank();
      return r;
    case Extension:
      for (const auto& p : sub) r += p.rank();
      return r + quot.rank();
  }
  return r;
}

long BuiltSheaf::recipe_chi() const {
  long c = 0;
  switch (kind) {
    case Split:
      for (const auto& p : parts) c += p.chi();
      return c;
    case Kernel:
      for (const auto& p : sources) c += p.chi();
      for (const auto& p : targets) c -= p.chi();
      return c;
    case Extension:
      for (const auto& p : sub) c += p.chi();
      return c + quot.chi();
  }
  return c;
}

BuiltSheaf split_sheaf(const std::string& name, std::vector<Atom> parts) {
  BuiltSheaf s;
  s.kind = BuiltSheaf::Split;
  s.name = name;
  s.parts = std::move(parts);
  return s;
}

BuiltSheaf kernel_sheaf(const std::string& name, std::vector<Atom> sources, std::vector<Atom> targets, FormMatrix phi) {
  for (const auto& t : targets)
    if (t.kind != Atom::Fiber) throw Error(ErrorCode::UnsupportedRecipeDepth, "kernel targets must be fiber sheaves");
  for (const auto& s : sources)
    if (s.kind != Atom::Line) throw Error(ErrorCode::UnsupportedRecipeDepth, "kernel sources must be line bundles");
  coh_map(sources, targets, phi);  // degree checks
  check_fiberwise_surjective(sources, targets, phi);
  BuiltSheaf s;
  s.kind = BuiltSheaf::Kernel;
  s.name = name;
  s.sources = std::move(sources);
  s.targets = std::move(targets);
  s.phi = std::move(phi);
  return s;
}

BuiltSheaf extension_sheaf(const std::string& name, std::vector<Atom> sub, Atom quot, Matrix ext_class) {
  if (quot.kind != Atom::Line) throw Error(ErrorCode::UnsupportedRecipeDepth, "extension quotient must be a line bundle");
  std::size_t need = 0;
  for (const auto& s : sub) {
    if (s.kind != Atom::Line) throw Error(ErrorCode::UnsupportedRecipeDepth, "extension sub must be line bundles");
    need += coh(Atom::line(s.a - quot.a, s.b - quot.b))[1];
  }
  if (ext_class.rows() != need || ext_class.cols() != 1)
    throw Error(ErrorCode::Parse, "extension class needs " + std::to_string(need) + " coordinates");
  BuiltSheaf s;
  s.kind = BuiltSheaf::Extension;
  s.name = name;
  s.sub = std::move(sub);
  s.quot = quot;
  s.ext_class = std::move(ext_class);
  return s;
}

Dims3 cohomology(const BuiltSheaf& s) {
  switch (s.kind) {
    case BuiltSheaf::Split:
      return coh(s.parts);
    case BuiltSheaf::Kernel: {
      auto maps = coh_map(s.sources, s.targets, s.phi);
      Dims3 hs = coh(s.sources), ht = coh(s.targets);
      std::size_t r0 = rank(maps[0]), r1 = rank(maps[1]), r2 = rank(maps[2]);
      if (ht[2] != r2) throw Error(ErrorCode::Internal, "H^2 of the target is not covered");
      return {hs[0] - r0, (ht[0] - r0) + (hs[1] - r1), (ht[1] - r1) + (hs[2] - r2)};
    }
    case BuiltSheaf::Extension: {
      Dims3 hs = coh(s.sub), hq = coh(s.quot);
      std::size_t rk[3] = {0, 0, 0};
      for (int j = 0; j < 2; ++j)
        if (hq[static_cast<std::size_t>(j)] != 0 && hs[static_cast<std::size_t>(j) + 1] != 0) {
          // H^j(quot) -> H^{j+1}(sub), cup with the class
          SumBasis sb = sum_basis(s.sub, j + 1);
          auto qb = coh_basis(s.quot, j);
          Matrix d(sb.total, qb.size());
          std::size_t class_off = 0;
          for (std::size_t k = 0; k < s.sub.size(); ++k) {
            Atom hom_atom = Atom::line(s.sub[k].a - s.quot.a, s.sub[k].b - s.quot.b);
            auto eb = coh_basis(hom_atom, 1);
            Polynomial e(kVars);
            for (std::size_t i = 0; i < eb.size(); ++i) e.add_term(eb[i], s.ext_class(class_off + i, 0));
            class_off += eb.size();
            for (std::size_t c = 0; c < qb.size(); ++c)
              accumulate_product(s.quot, qb[c], e, s.sub[k], sb.index[k], sb.offset[k], c, 1, d);
          }
          rk[j] = rank(d);
        }
      return {hs[0] + (hq[0] - rk[0]), (hs[1] - rk[0]) + (hq[1] - rk[1]), (hs[2] - rk[1]) + (hq[2] - rk[2])};
    }
  }
  return {0, 0, 0};
}

long chi(const Dims3& h) { return static_cast<long>(h[0]) - static_cast<long>(h[1]) + static_cast<long>(h[2]); }

BuiltSheaf build_U() {
  Matrix cls(4, 1);
  cls.set(0, 0, 1);
  cls.set(3, 0, 1);
  return extension_sheaf("U", {Atom::line(0, 0), Atom::line(0, 0)}, Atom::line(2, -1), cls);
}

BuiltSheaf build_F(const FormMatrix& phi, const FiberPoints& pts) {
  std::vector<Atom> src{Atom::line(2, 0), Atom::line(2, 0)};
  std::vector<Atom> tgt{Atom::fiber(pts.p1[0], pts.p1[1], 1), Atom::fiber(pts.p2[0], pts.p2[1], 1)};
  if (same_point(pts.p1, pts.p2)) throw Error(ErrorCode::DegenerateMap, "the two fibers coincide");
  BuiltSheaf f = kernel_sheaf("F", src, tgt, phi);
  Matrix h0 = coh_map(f.sources, f.targets, f.phi)[0];
  if (rank(h0) != h0.rows())
    throw Error(ErrorCode::DegenerateMap, "phi is not surjective on global sections (rank " + std::to_string(rank(h0)) + ")");
  return f;
}

FormMatrix random_phi(std::uint64_t seed, bool split_det) {
  Rng rng(seed);
  auto linear = [&] {
    Polynomial f(kVars);
    f.add_term({0, 0, 1, 0}, rng.small_rational(4));
    f.add_term({0, 0, 0, 1}, rng.small_rational(4));
    return f;
  };
  FormMatrix phi(2, std::vector<Polynomial>(2, zero_form()));
  if (!split_det) {
    for (auto& row : phi)
      for (auto& e : row) e = linear();
    return phi;
  }
  Rational p[2][2], q[2][2];
  for (auto& row : p)
    for (auto& x : row) x = rng.small_rational(3);
  for (auto& row : q)
    for (auto& x : row) x = rng.small_rational(3);
  Polynomial m[2] = {linear(), linear()};
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      Polynomial e(kVars);
      for (std::size_t k = 0; k < 2; ++k) e += (p[r][k] * q[k][c]) * m[k];
      phi[r][c] = e;
    }
  return phi;
}

BuiltSheaf build_F_seeded(std::uint64_t seed, std::uint64_t* used_seed, int tries, bool split_det, const FiberPoints& pts) {
  for (int t = 0; t < tries; ++t) {
    std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    try {
      BuiltSheaf f = build_F(random_phi(s, split_det), pts);
      if (used_seed) *used_seed = s;
      return f;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateMap) throw;
    }
  }
  throw Error(ErrorCode::DegenerateMap, "no surjective phi after " + std::to_string(tries) + " seeds from " + std::to_string(seed));
}

Dims3 ext_pair(const BuiltSheaf& a, const BuiltSheaf& b) {
  if (a.kind == BuiltSheaf::Split) {
    Dims3 h{0, 0, 0};
    for (const auto& p : a.parts) {
      if (p.kind != Atom::Line) throw Error(ErrorCode::UnsupportedRecipeDepth, "Ext out of a fiber sheaf");
      h = add(h, cohomology(b.twist(-p.a, -p.b)));
    }
    return h;
  }
  if (a.kind == BuiltSheaf::Kernel) throw Error(ErrorCode::UnsupportedRecipeDepth, "Ext out of a kernel sheaf");

  if (b.kind == BuiltSheaf::Extension) {
    // second-variable sequence; only usable when every connecting map has a zero end
    Dims3 es = ext_pair(a, split_sheaf("sub", b.sub));
    Dims3 eq = ext_pair(a, split_sheaf("quot", {b.quot}));
    for (std::size_t j = 0; j + 1 < 3; ++j)
      if (eq[j] != 0 && es[j + 1] != 0)
        throw Error(ErrorCode::UnsupportedRecipeDepth, "connecting map between two extensions");
    return add(es, eq);
  }

  Dims3 hq = cohomology(b.twist(-a.quot.a, -a.quot.b));
  Dims3 hs{0, 0, 0};
  for (const auto& s : a.sub) hs = add(hs, cohomology(b.twist(-s.a, -s.b)));
  std::size_t rk[3] = {0, 0, 0};
  for (int j = 0; j < 2; ++j) {
    auto ju = static_cast<std::size_t>(j);
    if (hs[ju] == 0 || hq[ju + 1] == 0) continue;
    switch (b.kind) {
      case BuiltSheaf::Split:
        rk[j] = split_delta_rank(a, b.parts, j);
        break;
      case BuiltSheaf::Kernel: {
        if (j != 0) throw Error(ErrorCode::UnsupportedRecipeDepth, "connecting map into Ext^2 of a kernel sheaf");
        KernelLift lift = kernel_lift(a, b);
        rk[0] = relative_rank(lift.image, lift.delta);
        break;
      }
      case BuiltSheaf::Extension:
        throw Error(ErrorCode::UnsupportedRecipeDepth, "connecting map between two extensions");
    }
  }
  return {hq[0] + (hs[0] - rk[0]), (hq[1] - rk[0]) + (hs[1] - rk[1]), (hq[2] - rk[1]) + (hs[2] - rk[2])};
}

RhomResult rhom_module(const BuiltSheaf& f, const BuiltSheaf& u, const AlgebraPtr& base, const Module* reference) {
  if (f.kind != BuiltSheaf::Kernel || u.kind != BuiltSheaf::Extension)
    throw Error(ErrorCode::UnsupportedRecipeDepth, "rhom_module expects a kernel sheaf and an extension");
  Dims3 hf = cohomology(f);
  Dims3 eu = ext_pair(u, f);
  if (hf[1] || hf[2] || eu[1] || eu[2]) throw Error(ErrorCode::NotDegreeZero, "RHom(O + U, F) has higher cohomology");
  for (const auto& s : u.sub)
    if (s.kind != Atom::Line || s.a != 0 || s.b != 0)
      throw Error(ErrorCode::UnsupportedRecipeDepth, "U must be an extension of a line bundle by copies of O");
  if (cohomology(f.twist(-u.quot.a, -u.quot.b))[0] != 0 || coh(u.quot)[0] != 0)
    throw Error(ErrorCode::UnsupportedRecipeDepth, "Hom(U, F) does not embed into Hom(O^r, F)");
  if (base->n() != 2 || base->quiver().arrows().size() != u.sub.size())
    throw Error(ErrorCode::MixedAlgebras, "base algebra must be a Kronecker quiver with one arrow per copy of O");

  KernelLift lift = kernel_lift(u, f);
  const std::size_t h0 = hf[0];
  const std::size_t nsub = u.sub.size();
  // g in Hom(O^r, F) extends over U iff its connecting image is a coboundary
  Matrix joint = hstack(lift.delta, lift.image);
  Matrix ker = kernel(joint);
  Matrix hom = column_basis(ker.block(0, 0, lift.delta.cols(), ker.cols()));
  if (hom.cols() != eu[0]) throw Error(ErrorCode::Internal, "Hom(U, F) dimension disagrees with the long exact sequence");

  RhomResult out;
  std::vector<Matrix> rho;
  for (std::size_t k = 0; k < nsub; ++k) rho.push_back(hom.block(k * h0, 0, h0, hom.cols()));
  out.module = Module(base, {h0, hom.cols()}, rho, "RHom(O+U,F)");

  if (h0 == 2 && hom.cols() == 2 && nsub == 2) {
    auto det2 = [](const Matrix& m) -> Rational { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); };
    Rational c0 = det2(rho[0]), c2 = det2(rho[1]);
    Rational c1 = det2(rho[0] + rho[1]) - c0 - c2;
    out.pencil = {c0, c1, c2};
    Rational disc = c1 * c1 - 4 * c0 * c2;
    out.pencil_distinct_roots = disc != 0;
    bool square = disc >= 0 && mpz_perfect_square_p(disc.get_num_mpz_t()) && mpz_perfect_square_p(disc.get_den_mpz_t());
    out.pencil_splits = out.pencil_distinct_roots && square;
    if (out.pencil_splits) {
      mpz_class sn, sd;
      mpz_sqrt(sn.get_mpz_t(), disc.get_num_mpz_t());
      mpz_sqrt(sd.get_mpz_t(), disc.get_den_mpz_t());
      Rational root = Rational(sn) / Rational(sd);
      root.canonicalize();
      out.arrow_change = Matrix(2, 2);
      if (c0 != 0) {
        out.arrow_change.set(0, 0, (-c1 + root) / (2 * c0));
        out.arrow_change.set(1, 0, 1);
        out.arrow_change.set(0, 1, (-c1 - root) / (2 * c0));
        out.arrow_change.set(1, 1, 1);
      } else {
        out.arrow_change.set(0, 0, 1);
        out.arrow_change.set(1, 0, 0);
        out.arrow_change.set(0, 1, -c2);
        out.arrow_change.set(1, 1, c1);
      }
      std::vector<Matrix> adapted;
      for (std::size_t k = 0; k < 2; ++k)
        adapted.push_back(out.arrow_change(0, k) * rho[0] + out.arrow_change(1, k) * rho[1]);
      out.adapted = Module(base, {h0, hom.cols()}, adapted, "RHom(O+U,F) adapted");
      if (reference) {
        auto iso = find_isomorphism(out.adapted, *reference);
        if (iso) {
          out.isomorphic = true;
          out.intertwiner = *iso;
        }
      }
    }
  }
  return out;
}

BuiltSheaf parse_sheaf(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string name = "sheaf";
  std::vector<Atom> parts, sources, targets, sub;
  std::optional<Atom> quot;
  FormMatrix rows;
  std::vector<Rational> cls;
  bool has_ext = false;
  std::size_t lineno = 0;
  auto parse_atom = [&](std::istringstream& ls) {
    std::string kind;
    ls >> kind;
    if (kind == "lb") {
      int a, b;
      if (!(ls >> a >> b)) throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": lb needs two integers");
      return Atom::line(a, b);
    }
    if (kind == "fiber") {
      std::string p0, p1;
      int d;
      if (!(ls >> p0 >> p1 >> d)) throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": fiber needs p0 p1 d");
      return Atom::fiber(parse_rational(p0), parse_rational(p1), d);
    }
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected 'lb' or 'fiber', got '" + kind + "'");
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "sheaf") {
      ls >> name;
    } else if (key == "lb" || key == "fiber") {
      std::istringstream again(line);
      parts.push_back(parse_atom(again));
    } else if (key == "source") {
      sources.push_back(parse_atom(ls));
    } else if (key == "target") {
      targets.push_back(parse_atom(ls));
    } else if (key == "sub") {
      sub.push_back(parse_atom(ls));
    } else if (key == "quot") {
      quot = parse_atom(ls);
    } else if (key == "kernel") {
      std::string rest;
      std::getline(ls, rest);
      std::vector<Polynomial> row;
      std::stringstream rs(rest);
      std::string cell;
      while (std::getline(rs, cell, ',')) row.push_back(parse_form(cell));
      rows.push_back(std::move(row));
    } else if (key == "ext") {
      has_ext = true;
      std::string tok;
      while (ls >> tok) cls.push_back(parse_rational(tok));
    } else {
      throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": unknown keyword '" + key + "'");
    }
  }
  if (!sources.empty() || !targets.empty() || !rows.empty()) {
    if (!parts.empty() || !sub.empty() || quot || has_ext) throw Error(ErrorCode::Parse, "mixed recipe kinds");
    return kernel_sheaf(name, sources, targets, rows);
  }
  if (!sub.empty() || quot || has_ext) {
    if (!parts.empty()) throw Error(ErrorCode::Parse, "mixed recipe kinds");
    if (!quot) throw Error(ErrorCode::Parse, "extension needs a 'quot' line");
    return extension_sheaf(name, sub, *quot, Matrix::column_vector(cls));
  }
  if (parts.empty()) throw Error(ErrorCode::Parse, "empty sheaf recipe");
  return split_sheaf(name, parts);
}

BuiltSheaf load_sheaf(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_sheaf(ss.str());
}

}  // namespace towerkit
