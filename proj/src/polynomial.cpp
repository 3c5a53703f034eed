#include "towerkit/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "towerkit/error.hpp"

namespace towerkit {

namespace {

int total(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

// graded lex: higher degree wins, ties by lex
bool grlex_less(const Exponent& a, const Exponent& b) {
  int da = total(a), db = total(b);
  if (da != db) return da < db;
  return a < b;
}

const Exponent* leading(const Polynomial& p) {
  const Exponent* best = nullptr;
  for (const auto& [e, c] : p.terms())
    if (!best || grlex_less(*best, e)) best = &e;
  return best;
}

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  Exponent e(nvars, 0);
  e.at(i) = 1;
  return monomial(e);
}

Polynomial Polynomial::monomial(const Exponent& e, const Rational& c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total(e));
  return d;
}

bool Polynomial::is_homogeneous() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    if (d >= 0 && total(e) != d) return false;
    d = total(e);
  }
  return true;
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_) throw Error(ErrorCode::Internal, "exponent has the wrong number of variables");
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.nvars_, b.nvars_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial operator*(const Rational& s, const Polynomial& p) {
  Polynomial out(p.nvars_);
  if (s == 0) return out;
  for (const auto& [e, c] : p.terms_) out.terms_.emplace(e, s * c);
  return out;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != nvars_) throw Error(ErrorCode::Internal, "point has the wrong number of coordinates");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (images.size() != nvars_) throw Error(ErrorCode::Internal, "substitution has the wrong number of images");
  std::size_t nv = images.empty() ? 0 : images[0].nvars();
  Polynomial out(nv);
  for (const auto& [e, c] : terms_) {
    Polynomial t = Polynomial::constant(nv, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t = t * images[i];
    out += t;
  }
  return out;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::vector<Exponent> order;
  for (const auto& [e, c] : terms_) order.push_back(e);
  std::sort(order.begin(), order.end(), [](const Exponent& a, const Exponent& b) { return grlex_less(b, a); });
  std::ostringstream os;
  bool first = true;
  for (const auto& e : order) {
    Rational c = terms_.at(e);
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool constant_term = total(e) == 0;
    if (c != 1 || constant_term) os << towerkit::to_string(c) << (constant_term ? "" : "*");
    bool first_var = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << (i < names.size() ? names[i] : "t" + std::to_string(i));
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

DivisionResult divide(const Polynomial& p, const Polynomial& divisor) {
  if (divisor.is_zero()) throw Error(ErrorCode::Internal, "division by the zero polynomial");
  const Exponent lg = *leading(divisor);
  const Rational lc = divisor.coefficient(lg);
  DivisionResult out{Polynomial(p.nvars()), Polynomial(p.nvars())};
  Polynomial rest = p;
  while (!rest.is_zero()) {
    Exponent lt = *leading(rest);
    Rational c = rest.coefficient(lt);
    bool divisible = true;
    Exponent q(lt.size());
    for (std::size_t i = 0; i < lt.size(); ++i) {
      q[i] = lt[i] - lg[i];
      if (q[i] < 0) divisible = false;
    }
    if (divisible) {
      Polynomial t = Polynomial::monomial(q, c / lc);
      out.quotient += t;
      rest -= t * divisor;
    } else {
      Polynomial t = Polynomial::monomial(lt, c);
      out.remainder += t;
      rest -= t;
    }
  }
  return out;
}

Polynomial det3(const std::vector<std::vector<Polynomial>>& m) {
  if (m.size() != 3 || m[0].size() != 3 || m[1].size() != 3 || m[2].size() != 3)
    throw Error(ErrorCode::Internal, "det3 needs a 3x3 matrix");
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::vector<Exponent> monomials_of_degree(std::size_t n, int d) {
  std::vector<Exponent> out;
  if (d < 0 || n == 0) return out;
  Exponent e(n, 0);
  // recursive fill, first variable with the largest exponent first
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  Rational lc = p.coefficient(*leading(p));
  return Rational(1) / lc * p;
}

EliminationResult common_zero(const std::vector<Polynomial>& gens, int max_degree, int box) {
  EliminationResult out;
  std::vector<Polynomial> nonzero;
  std::size_t n = 0;
  for (const auto& g : gens) {
    if (!g.is_homogeneous()) throw Error(ErrorCode::Internal, "common_zero needs homogeneous generators");
    n = std::max(n, g.nvars());
    if (!g.is_zero()) nonzero.push_back(g);
  }
  if (n == 0) throw Error(ErrorCode::Internal, "common_zero needs at least one variable");

  // a basis of each graded piece of the generator span keeps the matrices small
  std::map<int, std::vector<Polynomial>> by_degree;
  for (const auto& g : nonzero) by_degree[g.degree()].push_back(g);
  for (auto& [d, list] : by_degree) {
    auto mons = monomials_of_degree(n, d);
    Matrix m(list.size(), mons.size());
    for (std::size_t r = 0; r < list.size(); ++r)
      for (std::size_t c = 0; c < mons.size(); ++c) m.set(r, c, list[r].coefficient(mons[c]));
    Echelon e = rref(m);
    std::vector<Polynomial> reduced;
    for (std::size_t r = 0; r < e.rank(); ++r) {
      Polynomial p(n);
      for (std::size_t c = 0; c < mons.size(); ++c) p.add_term(mons[c], e.reduced(r, c));
      reduced.push_back(std::move(p));
    }
    list = std::move(reduced);
  }

  if (!by_degree.empty()) {
    int start = by_degree.begin()->first;
    for (int d = start; d <= max_degree; ++d) {
      auto mons = monomials_of_degree(n, d);
      std::map<Exponent, std::size_t> col;
      for (std::size_t c = 0; c < mons.size(); ++c) col[mons[c]] = c;
      std::vector<Polynomial> rows;
      for (const auto& [gd, list] : by_degree) {
        if (gd > d) continue;
        for (const auto& shift : monomials_of_degree(n, d - gd))
          for (const auto& g : list) rows.push_back(Polynomial::monomial(shift) * g);
      }
      Matrix m(rows.size(), mons.size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [e, c] : rows[r].terms()) m.set(r, col.at(e), c);
      std::size_t rk = rank(m);
      out.hilbert.push_back(mons.size() - rk);
      if (rk == mons.size()) {
        out.status = ZeroStatus::NoCommonZero;
        out.saturation_degree = d;
        return out;
      }
    }
  }

  // integer search, projective points normalized so the first nonzero entry is positive
  std::vector<int> pt(n, -box);
  while (true) {
    int g = 0;
    for (int v : pt) g = std::gcd(g, std::abs(v));
    auto first = std::find_if(pt.begin(), pt.end(), [](int v) { return v != 0; });
    if (g == 1 && first != pt.end() && *first > 0) {
      std::vector<Rational> q(pt.begin(), pt.end());
      bool all = true;
      for (const auto& p : nonzero)
        if (p.evaluate(q) != 0) {
          all = false;
          break;
        }
      if (all) {
        out.status = ZeroStatus::CommonZero;
        out.witness = q;
        return out;
      }
    }
    std::size_t i = 0;
    while (i < n && pt[i] == box) pt[i++] = -box;
    if (i == n) break;
    ++pt[i];
  }
  return out;
}

}  // namespace towerkit
