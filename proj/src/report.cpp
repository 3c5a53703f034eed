#include "towerkit/report.hpp"

#include <sstream>

#include "towerkit/realize.hpp"

namespace towerkit {

namespace {

constexpr const char* kIsingText = R"(quiver ising
vertices 3
arrow a1 1 -> 2
arrow b1 1 -> 2
arrow a2 2 -> 3
arrow b2 2 -> 3
relation a2*b1
relation b2*a1
)";

constexpr const char* kBondalText = R"(module bondal over ising
dims 1 1 1
map a1 = [[1]]
map a2 = [[1]]
)";

constexpr const char* kBeilinsonText = R"(quiver beilinson
vertices 3
arrow a1 1 -> 2
arrow b1 1 -> 2
arrow c1 1 -> 2
arrow a2 2 -> 3
arrow b2 2 -> 3
arrow c2 2 -> 3
relation a2*b1 - b2*a1
relation a2*c1 - c2*a1
relation b2*c1 - c2*b1
)";

const std::vector<std::string> kPlaneVars{"x", "y", "z"};
const std::vector<std::string> kSurfaceVars{"x0", "x1", "y0", "y1"};

Json header(const std::string& command) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

Json asserted(const std::string& claim) { return Json{{"claim", claim}, {"provenance", kAssertedFlag}}; }

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    out.push_back(row);
  }
  return out;
}

Json dims3(const Dims3& h) { return Json{h[0], h[1], h[2]}; }

Json module_json(const Module& m) {
  Json j;
  j["name"] = m.name();
  j["dims"] = m.dims();
  Json act = Json::object();
  const Quiver& q = m.algebra()->quiver();
  for (std::size_t a = 0; a < q.arrows().size(); ++a) act[q.arrow(a).name] = matrix_json(m.rho(a));
  j["action"] = act;
  return j;
}

Json algebra_json(const AlgebraPtr& alg) {
  Json j;
  j["name"] = alg->name();
  j["field"] = alg->field().name();
  j["vertices"] = alg->n();
  Json arrows = Json::array();
  for (const auto& a : alg->quiver().arrows()) arrows.push_back(a.name + ": " + std::to_string(a.source) + " -> " + std::to_string(a.target));
  j["arrows"] = arrows;
  Json rels = Json::array();
  for (const auto& r : alg->presentation().relations) rels.push_back(path_vector_to_string(alg->quiver(), r));
  j["relations"] = rels;
  j["dim"] = alg->dim();
  return j;
}

std::vector<Module> projectives(const AlgebraPtr& alg) {
  std::vector<Module> out;
  for (int i = 1; i <= alg->n(); ++i) out.push_back(projective(alg, i));
  return out;
}

Json verdict_json(const ExtTable& table, const Verdict& v) {
  Json j;
  j["names"] = table.names;
  j["ext"] = table.entries;
  j["exceptional"] = v.exceptional;
  j["strong"] = v.strong;
  Json w = Json::array();
  for (const auto& x : v.witnesses) w.push_back(describe(x));
  j["witnesses"] = w;
  return j;
}

Json certificate_json(const StepCertificate& c) {
  Json j;
  j["ext_projectives"] = c.ext_projectives;
  j["hom_dims"] = c.hom_dims;
  j["expected_homs"] = c.expected_homs;
  j["new_self_ext"] = c.new_self_ext;
  j["higher_vanish"] = c.higher_vanish;
  j["homs_match"] = c.homs_match;
  j["new_exceptional"] = c.new_exceptional;
  j["ok"] = c.ok();
  return j;
}

Json tower_json(const Tower& t) {
  Json j;
  j["base"] = t.base;
  j["base_dim"] = t.base_dim;
  j["base_records"] = t.base_records;
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json sj;
    sj["k"] = s.k;
    sj["variant"] = s.variant;
    sj["module_dims"] = s.module.dims();
    sj["dim_m"] = s.dim_m;
    sj["m"] = s.m;
    sj["fiber_rank"] = s.fiber_rank;
    sj["new_bundle_rank"] = s.new_bundle_rank;
    sj["dim_increment"] = s.dim_increment;
    sj["assumptions"] = s.assumptions;
    sj["certificate"] = certificate_json(s.certificate);
    steps.push_back(sj);
  }
  j["steps"] = steps;
  j["total_dim"] = t.total_dim;
  j["bundle_ranks"] = t.bundle_ranks;
  j["certificates_ok"] = t.certificates_ok();
  return j;
}

Json side_json(const SideCertificate& s) {
  Json j;
  j["status"] = to_string(s.status);
  if (s.status == NondegStatus::Nondegenerate) j["saturation_degree"] = s.degree;
  if (!s.witness.empty()) j["witness"] = rationals(s.witness);
  j["hilbert"] = s.hilbert;
  return j;
}

std::string poly(const Polynomial& p, const std::vector<std::string>& names) { return p.to_string(names); }

Json forms_json(const FormMatrix& f) {
  Json out = Json::array();
  for (const auto& row : f) {
    Json r = Json::array();
    for (const auto& p : row) r.push_back(poly(p, kSurfaceVars));
    out.push_back(r);
  }
  return out;
}

void finish(Report& r, bool pass) {
  r.json["verdict"] = pass ? "pass" : "fail";
  r.exit_code = pass ? 0 : 1;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::Directedness:
    case ErrorCode::UnknownName:
    case ErrorCode::NonParallel:
    case ErrorCode::ShortRelation:
    case ErrorCode::NonComposable:
    case ErrorCode::InvalidModule:
    case ErrorCode::MixedAlgebras:
    case ErrorCode::BadRank:
    case ErrorCode::FieldCharacteristic:
    case ErrorCode::DegreeMismatch:
      return 2;
    default:
      return 1;
  }
}

Report error_report(const std::string& command, const Error& e) {
  Report r;
  r.json = header(command);
  r.json["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
  r.json["verdict"] = "error";
  r.exit_code = exit_code_for(e.code());
  return r;
}

Field parse_field(const std::string& text) {
  if (text == "q" || text == "Q") return Field::rationals();
  if (text.rfind("fp:", 0) == 0) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(text.substr(3));
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad field '" + text + "'");
    }
    return Field::prime(p);
  }
  throw Error(ErrorCode::Parse, "field must be q or fp:<p>, got '" + text + "'");
}

Report check_report(const std::string& quiver_path, const Field& field) {
  Report r;
  r.json = header("check");
  r.json["input"] = quiver_path;
  AlgebraPtr alg = QuiverAlgebra::build(load_quiver(quiver_path), field);
  r.json["algebra"] = algebra_json(alg);

  CartanEuler ce = cartan_euler(alg);
  r.json["cartan"] = ce.cartan;
  r.json["euler"] = ce.euler;
  r.json["euler_is_inverse_transpose"] = ce.inverse_transpose;

  auto proj = projectives(alg);
  ExtTable table = ext_table(proj);
  Verdict v = verdict(table);
  r.json["projectives"] = verdict_json(table, v);

  std::size_t gldim = 0;
  for (int i = 1; i <= alg->n(); ++i) gldim = std::max(gldim, min_resolution(simple(alg, i))->length());
  r.json["global_dimension"] = gldim;

  bool round_trip = false;
  if (v.strong) {
    EndPresentation pres = end_algebra(proj, alg->name() + "_end");
    MorphismReport mr = verify(projective_end_morphism(pres, alg));
    round_trip = pres.bijective && mr.ok();
    r.json["end_algebra"] = {{"presentation", to_dsl(pres.presentation)},
                             {"dim", pres.algebra->dim()},
                             {"canonical_rank", pres.canonical_rank},
                             {"canonical_bijective", pres.bijective},
                             {"morphism", {{"endpoints", mr.endpoints_ok}, {"relations", mr.relations_ok}, {"bijective", mr.bijective}}},
                             {"round_trip", round_trip}};
  } else {
    r.json["end_algebra"] = {{"skipped", "projectives are not strong exceptional"}};
  }
  finish(r, v.strong && round_trip && ce.inverse_transpose);
  return r;
}

Report realize_report(const std::string& quiver_path, const std::string& m_policy, const Field& field) {
  Report r;
  r.json = header("realize");
  r.json["input"] = quiver_path;
  MPolicy policy = MPolicy::parse(m_policy);
  r.json["m_policy"] = policy.to_string();
  AlgebraPtr alg = QuiverAlgebra::build(load_quiver(quiver_path), field);
  r.json["algebra"] = {{"name", alg->name()}, {"vertices", alg->n()}, {"dim", alg->dim()}};
  Tower t = realize(alg, policy);
  r.json["tower"] = tower_json(t);
  std::size_t sum = 0;
  for (auto x : t.bundle_ranks) sum += x;
  r.json["rank_sum"] = sum;
  r.json["rank_sum_equals_dim"] = sum == alg->dim();
  r.json["asserted"] = Json::array({asserted("the tower is a smooth projective variety"),
                                    asserted("the global-generation assumptions of each step hold")});
  finish(r, t.certificates_ok() && sum == alg->dim());
  return r;
}

Report ising_report(const IsingOptions& opts) {
  Report r;
  r.json = header("ising");
  r.json["seed"] = opts.seed;
  bool pass = true;
  auto require = [&](bool ok) {
    pass = pass && ok;
    return ok;
  };

  AlgebraPtr ising = QuiverAlgebra::build(parse_quiver(kIsingText));
  auto proj = projectives(ising);
  Verdict v = verdict(proj);
  bool homs_two = true;
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) homs_two = homs_two && ising->hom_dim(i, j) == 2;
  require(ising->dim() == 9 && homs_two && v.strong);
  r.json["algebra"] = {{"dim", ising->dim()}, {"cartan", cartan_euler(ising).cartan}, {"homs_all_two", homs_two},
                       {"projectives_strong", v.strong}};

  Module bondal = parse_module(kBondalText, ising);
  auto self = ext(bondal, bondal);
  bool bondal_exc = self.size() == 3 && self[0] == 1 && self[1] == 0 && self[2] == 0;
  require(bondal_exc);
  r.json["bondal_module"] = {{"dims", bondal.dims()}, {"self_ext", self}, {"exceptional", bondal_exc}};

  BuiltSheaf o = split_sheaf("O", {Atom::line(0, 0)});
  BuiltSheaf q = split_sheaf("O(2,-1)", {Atom::line(2, -1)});
  BuiltSheaf u = build_U();
  BuiltSheaf f;
  FormMatrix phi;
  if (opts.phi) {
    phi = *opts.phi;
    f = build_F(phi);
    r.json["phi_source"] = "given";
  } else {
    std::uint64_t used = 0;
    f = build_F_seeded(opts.seed, &used, opts.retries);
    phi = random_phi(used);
    r.json["phi_source"] = "seed";
    r.json["used_seed"] = used;
  }
  r.json["phi"] = forms_json(phi);

  Dims3 hq = cohomology(q), hu = cohomology(u), hf = cohomology(f);
  Dims3 e_qo = ext_pair(q, o), e_ou = ext_pair(o, u), e_uo = ext_pair(u, o), e_uu = ext_pair(u, u);
  Dims3 e_uf = ext_pair(u, f), e_of = ext_pair(o, f);
  require(hq == Dims3{0, 0, 0} && e_qo == Dims3{0, 2, 0});
  require(hu == Dims3{2, 0, 0} && hf == Dims3{2, 0, 0} && e_uf == Dims3{2, 0, 0});
  bool pair_strong = e_uu == Dims3{1, 0, 0} && e_uo == Dims3{0, 0, 0} && e_ou[1] == 0 && e_ou[2] == 0;
  require(pair_strong);
  r.json["surface"] = {
      {"cohomology", {{"O(2,-1)", dims3(hq)}, {"U", dims3(hu)}, {"F", dims3(hf)}}},
      {"ext", {{"O(2,-1),O", dims3(e_qo)}, {"O,U", dims3(e_ou)}, {"U,O", dims3(e_uo)}, {"U,U", dims3(e_uu)},
               {"O,F", dims3(e_of)}, {"U,F", dims3(e_uf)}}},
      {"collection_O_U_strong", pair_strong},
      {"chi", {{"U", {chi(hu), u.recipe_chi()}}, {"F", {chi(hf), f.recipe_chi()}}}}};

  auto steps = decompose(ising);
  const DecompositionStep& last = steps.back();
  RhomResult rh = rhom_module(f, u, last.base, &last.module);
  require(rh.isomorphic && rh.intertwiner.is_isomorphism());
  r.json["rhom"] = {{"module", module_json(rh.module)},
                    {"pencil", rationals({rh.pencil[0], rh.pencil[1], rh.pencil[2]})},
                    {"pencil_distinct_roots", rh.pencil_distinct_roots},
                    {"pencil_splits", rh.pencil_splits},
                    {"arrow_change", matrix_json(rh.arrow_change)},
                    {"adapted", module_json(rh.adapted)},
                    {"reference_dims", last.module.dims()},
                    {"isomorphic_to_radical_P3", rh.isomorphic}};

  Tower tower = custom_base("P1xP1", 2, {1, 3});
  alt_step_bundle(tower, rh.isomorphic ? rh.adapted : last.module, 2);
  require(tower.total_dim == 3 && tower.certificates_ok());
  r.json["tower"] = tower_json(tower);
  r.json["X_dim"] = tower.total_dim;
  r.json["asserted"] = Json::array({Json{{"claim", "full exceptional collection on X"}, {"length", 8}, {"provenance", kAssertedFlag}},
                                    asserted("the length-6 collection on X is not extendable to a full one"),
                                    asserted("X is a smooth projective variety")});
  finish(r, pass);
  return r;
}

Report ncplane_report(const TensorSource& src, int max_degree) {
  Report r;
  r.json = header("ncplane");
  r.json["max_degree"] = max_degree;
  Tensor t;
  switch (src.kind) {
    case TensorSource::File:
      t = load_tensor(src.path);
      r.json["tensor"] = {{"source", "file"}, {"path", src.path}};
      break;
    case TensorSource::Standard:
      t = standard_tensor();
      r.json["tensor"] = {{"source", "standard"}};
      break;
    case TensorSource::Sklyanin:
      t = sklyanin(src.abc[0], src.abc[1], src.abc[2]);
      r.json["tensor"] = {{"source", "sklyanin"}, {"abc", rationals({src.abc[0], src.abc[1], src.abc[2]})}};
      break;
  }
  r.json["tensor"]["mu"] = matrix_json(t.mu);
  kernel_relations(t);
  AlgebraPtr alg = algebra_from_mu(t);
  r.json["relations"] = algebra_json(alg)["relations"];

  NondegeneracyCertificate cert = nondegenerate(t, max_degree);
  r.json["nondegeneracy"] = {{"U", side_json(cert.u)}, {"V", side_json(cert.v)}, {"status", to_string(cert.status())}};
  if (cert.status() != NondegStatus::Nondegenerate) {
    finish(r, false);
    return r;
  }
  bool pass = true;

  Polynomial gu = gamma(t, Side::U), gv = gamma(t, Side::V);
  r.json["gamma"] = {{"U", poly(gu, kPlaneVars)}, {"V", poly(gv, kPlaneVars)}, {"identically_zero", gu.is_zero() && gv.is_zero()}};

  CorrespondenceCertificate corr = gamma_correspondence(t, max_degree);
  if (!corr.skipped.empty()) {
    r.json["correspondence"] = {{"skipped", corr.skipped}};
  } else {
    Json kappa = Json::array();
    for (const auto& k : corr.kappa) kappa.push_back(poly(k, kPlaneVars));
    r.json["correspondence"] = {{"adjugate_row", corr.adjugate_row}, {"kappa", kappa},
                                {"composed_degree", corr.composed.degree()}, {"quotient", poly(corr.quotient, kPlaneVars)},
                                {"remainder", poly(corr.remainder, kPlaneVars)}, {"divisible", corr.divisible}};
    pass = pass && corr.divisible;
  }

  Tensor op = opposite(t);
  bool involution = opposite(op).mu == t.mu;
  NondegStatus op_status = nondegenerate(op, max_degree).status();
  pass = pass && involution && op_status == NondegStatus::Nondegenerate;
  r.json["opposite"] = {{"involution", involution}, {"nondegeneracy", to_string(op_status)}};

  auto proj = projectives(alg);
  ExtTable table = ext_table(proj);
  Verdict v = verdict(table);
  AlgebraPtr beilinson = QuiverAlgebra::build(parse_quiver(kBeilinsonText));
  bool standard_relations = same_relation_ideal(alg, beilinson);
  pass = pass && v.strong && alg->dim() == 15;
  r.json["algebra"] = {{"dim", alg->dim()}, {"cartan", cartan_euler(alg).cartan}, {"projectives", verdict_json(table, v)},
                       {"matches_standard_relations", standard_relations}};

  FMuReport fm = p2_F_mu(t, max_degree);
  pass = pass && fm.fiber_injective && fm.chi == fm.chi_rr;
  r.json["F_mu"] = {{"rank", fm.rank},
                    {"cohomology", {fm.h0, fm.h1, fm.h2}},
                    {"chern", {fm.c1, fm.c2}},
                    {"chi", fm.chi},
                    {"chi_riemann_roch", fm.chi_rr},
                    {"fiber_map", side_json(fm.fiber)},
                    {"fiber_injective", fm.fiber_injective},
                    {"matches_S2_T(-1)", fm.rank == fm.sym_rank && fm.h0 == fm.sym_h0 && fm.c1 == fm.sym_c1 && fm.c2 == fm.sym_c2}};

  Module m = decompose(alg).back().module;
  Tower tower = custom_base("P2", 2, {1, 2});
  alt_step_bundle(tower, m, fm.rank);
  bool homs_match_h0 = m.dim(1) == fm.h0;
  pass = pass && tower.total_dim == 4 && fm.rank == 3 && tower.certificates_ok() && homs_match_h0;
  r.json["tower"] = tower_json(tower);
  r.json["X_dim"] = tower.total_dim;
  r.json["F_rank"] = fm.rank;
  r.json["h0_F_equals_module_dim"] = homs_match_h0;
  r.json["asserted"] = Json::array({asserted("X is a smooth projective variety"),
                                    asserted("the construction deforms over the Hilbert scheme")});
  finish(r, pass);
  return r;
}

Report collection_report(const std::string& quiver_path, const std::vector<std::string>& module_paths, const Field& field) {
  Report r;
  r.json = header("collection");
  r.json["input"] = quiver_path;
  r.json["modules"] = module_paths;
  AlgebraPtr alg = QuiverAlgebra::build(load_quiver(quiver_path), field);
  std::vector<Module> coll;
  for (const auto& p : module_paths) coll.push_back(load_module(p, alg));
  if (coll.empty()) coll = projectives(alg);
  ExtTable table = ext_table(coll);
  Verdict v = verdict(table);
  r.json["verdict_detail"] = verdict_json(table, v);
  bool ok = v.exceptional;
  if (v.strong) {
    EndPresentation pres = end_algebra(coll);
    r.json["end_algebra"] = {{"presentation", to_dsl(pres.presentation)}, {"hom_dims", pres.hom_dims},
                             {"canonical_bijective", pres.bijective}};
    ok = ok && pres.bijective;
  }
  finish(r, ok);
  return r;
}

Report sheaf_report(const std::string& recipe, const std::optional<std::string>& against) {
  Report r;
  r.json = header("sheaf");
  r.json["input"] = recipe;
  BuiltSheaf s = load_sheaf(recipe);
  Dims3 h = cohomology(s);
  bool ok = chi(h) == s.recipe_chi();
  r.json["sheaf"] = {{"name", s.name}, {"rank", s.rank()}, {"cohomology", dims3(h)}, {"chi", chi(h)}, {"recipe_chi", s.recipe_chi()}};
  if (against) {
    BuiltSheaf b = load_sheaf(*against);
    r.json["against"] = *against;
    r.json["ext"] = dims3(ext_pair(s, b));
  }
  finish(r, ok);
  return r;
}

namespace {

bool is_scalar_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (x.is_structured() && !is_scalar_array(x)) return false;
  return true;
}

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::string inline_array(const Json& j) {
  std::string out = "[";
  bool first = true;
  for (const auto& x : j) {
    out += (first ? "" : ", ") + (x.is_array() ? inline_array(x) : scalar(x));
    first = false;
  }
  return out + "]";
}

void render(std::ostringstream& os, const Json& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !is_scalar_array(v))) {
        os << pad << k << ":\n";
        render(os, v, indent + 1);
      } else if (v.is_array()) {
        os << pad << k << ": " << inline_array(v) << "\n";
      } else if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
        os << pad << k << ": |\n";
        std::istringstream lines(v.get<std::string>());
        for (std::string line; std::getline(lines, line);) os << pad << "  " << line << "\n";
      } else {
        os << pad << k << ": " << scalar(v) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object()) {
        os << pad << "-\n";
        render(os, v, indent + 1);
      } else {
        os << pad << "- " << (v.is_array() ? inline_array(v) : scalar(v)) << "\n";
      }
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& j) {
  std::ostringstream os;
  render(os, j, 0);
  return os.str();
}

}  // namespace towerkit
