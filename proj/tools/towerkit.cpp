#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "towerkit/report.hpp"

using namespace towerkit;

namespace {

FormMatrix parse_phi(const std::string& text) {
  std::vector<Polynomial> forms;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    forms.push_back(parse_form(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (forms.size() != 4) throw Error(ErrorCode::Parse, "--phi needs four comma-separated forms l11,l12,l21,l22");
  return {{forms[0], forms[1]}, {forms[2], forms[3]}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"towerkit: exceptional collections, realizations and sheaf checks"};
  app.require_subcommand(1);

  bool json = false;
  std::string field_text = "q";
  app.add_flag("--json", json, "print the JSON report");
  app.add_option("--field", field_text, "q or fp:<p>");

  std::string quiver, m_policy = "default", recipe, against, tensor_file, phi_text;
  std::vector<std::string> modules;
  std::uint64_t seed = 1;
  int retries = 16, max_degree = 8;
  bool standard = false;
  std::vector<std::string> sklyanin_abc;

  auto* check = app.add_subcommand("check", "algebra dimensions, Cartan matrix, projective collection, end-algebra round trip");
  check->add_option("quiver", quiver)->required();

  auto* realize = app.add_subcommand("realize", "tower of projective bundles realizing the algebra");
  realize->add_option("quiver", quiver)->required();
  realize->add_option("--m-policy", m_policy, "default or fixed:<k>");

  auto* ising = app.add_subcommand("ising", "surface pipeline on P1 x P1");
  ising->add_option("--seed", seed);
  ising->add_option("--retries", retries, "reseeding attempts for a degenerate phi");
  ising->add_option("--phi", phi_text, "l11,l12,l21,l22 linear forms in y0,y1");

  auto* ncplane = app.add_subcommand("ncplane", "noncommutative plane pipeline");
  auto* tensor_opt = ncplane->add_option("--tensor", tensor_file, "6x9 tensor file");
  auto* std_opt = ncplane->add_flag("--standard", standard);
  auto* skl_opt = ncplane->add_option("--sklyanin", sklyanin_abc, "a b c")->expected(3);
  tensor_opt->excludes(std_opt)->excludes(skl_opt);
  std_opt->excludes(skl_opt);
  ncplane->add_option("--max-degree", max_degree, "elimination bound");

  auto* collection = app.add_subcommand("collection", "Ext table and verdict of a module collection");
  collection->add_option("quiver", quiver)->required();
  collection->add_option("modules", modules, "module files; the projectives when omitted");

  auto* sheaf = app.add_subcommand("sheaf", "cohomology of a sheaf recipe on P1 x P1");
  sheaf->add_option("recipe", recipe)->required();
  sheaf->add_option("--against", against, "second recipe for Ext");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  Report report;
  try {
    Field field = parse_field(field_text);
    if (*check) {
      report = check_report(quiver, field);
    } else if (*realize) {
      report = realize_report(quiver, m_policy, field);
    } else if (*ising) {
      IsingOptions opts;
      opts.seed = seed;
      opts.retries = retries;
      if (!phi_text.empty()) opts.phi = parse_phi(phi_text);
      report = ising_report(opts);
    } else if (*ncplane) {
      TensorSource src;
      if (!tensor_file.empty()) {
        src.kind = TensorSource::File;
        src.path = tensor_file;
      } else if (!sklyanin_abc.empty()) {
        src.kind = TensorSource::Sklyanin;
        for (std::size_t i = 0; i < 3; ++i) src.abc[i] = parse_rational(sklyanin_abc[i]);
      }
      report = ncplane_report(src, max_degree);
    } else if (*collection) {
      report = collection_report(quiver, modules, field);
    } else if (*sheaf) {
      report = sheaf_report(recipe, against.empty() ? std::nullopt : std::optional<std::string>(against));
    }
  } catch (const Error& e) {
    report = error_report(command, e);
  }

  if (json)
    std::cout << report.json.dump(2) << "\n";
  else
    std::cout << render_text(report.json);
  return report.exit_code;
}
