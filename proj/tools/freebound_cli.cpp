// Command-line front end for the verification campaigns.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "freebound/campaign.hpp"

namespace fb = freebound::campaign;

namespace {

struct Shared {
  std::string out;
  std::string format = "json";
  std::string plot_dir;
  std::vector<std::string> tolerances;
  std::uint64_t seed = 1;
};

void add_output_flags(CLI::App* sub, Shared& shared) {
  sub->add_option("--out", shared.out, "Report file (default: stdout, or $FREEBOUND_OUTPUT_DIR/<cmd>.<fmt>)");
  sub->add_option("--format", shared.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--plot-dir", shared.plot_dir, "Directory for plot-data CSV files");
  sub->add_option("--tol", shared.tolerances, "Tolerance override key=value (repeatable)");
  sub->add_option("--seed", shared.seed, "Random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of sharp inequalities on domains with a free boundary"};
  app.require_subcommand(1);
  // -h is left free so --h can name the grid spacing.
  app.set_help_flag("--help", "Print this help message and exit");

  fb::CampaignConfig config;
  Shared shared;
  double h = 0.0;
  std::vector<double> p_list;

  struct Entry {
    fb::Subcommand kind;
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {fb::Subcommand::kConstants, "constants", "Sharp constants for dimension n and exponents p"},
      {fb::Subcommand::kIsoperim, "isoperim", "Fixed-boundary isoperimetric ratio of a domain"},
      {fb::Subcommand::kRearrange, "rearrange", "Rearrangement checks on random fields"},
      {fb::Subcommand::kSobolev, "sobolev", "Sobolev quotients and concentrating bubbles"},
      {fb::Subcommand::kMoser, "moser", "Moser-Trudinger functional and its rearranged form"},
      {fb::Subcommand::kCounterexample, "counterexample", "Closed-form blow-up bounds without concavity"},
      {fb::Subcommand::kEig, "eig", "Principal frequency against the half-disk reference"},
      {fb::Subcommand::kSymmetrize, "symmetrize", "Golden-angle reflection symmetrization"},
  };
  std::map<CLI::App*, fb::Subcommand> kinds;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->set_help_flag("--help", "Print this help message and exit");
    kinds[sub] = e.kind;
    add_output_flags(sub, shared);
    switch (e.kind) {
      case fb::Subcommand::kConstants:
        sub->add_option("--n", config.dimension, "Dimension n >= 2");
        sub->add_option("--p", p_list, "Exponent p in [1, n) (repeatable)");
        break;
      case fb::Subcommand::kCounterexample:
        sub->add_option("--a", config.a_list, "Curvature parameter a > 1 (repeatable)");
        sub->add_option("--tau0", config.tau0, "Aperture constant in (0, 1/100]");
        break;
      default:
        sub->add_option("--domain", config.domain, "Domain JSON file or built-in name");
        break;
    }
    if (e.kind == fb::Subcommand::kIsoperim) {
      sub->add_option("--write-domain", config.write_domain, "Also write the domain as JSON");
    }
    if (e.kind == fb::Subcommand::kRearrange || e.kind == fb::Subcommand::kSobolev ||
        e.kind == fb::Subcommand::kMoser || e.kind == fb::Subcommand::kEig) {
      sub->add_option("--h", h, "Grid spacing");
    }
    if (e.kind == fb::Subcommand::kRearrange || e.kind == fb::Subcommand::kSobolev) {
      sub->add_option("--p", p_list, "Gradient exponent (repeatable)");
    }
    if (e.kind == fb::Subcommand::kRearrange || e.kind == fb::Subcommand::kSobolev ||
        e.kind == fb::Subcommand::kMoser) {
      sub->add_option("--samples", config.samples, "Number of random fields")->check(CLI::NonNegativeNumber);
    }
    if (e.kind == fb::Subcommand::kSymmetrize) {
      sub->add_option("--steps", config.steps, "Iteration budget")->check(CLI::NonNegativeNumber);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fb::kExitParse;
  }

  CLI::App* chosen = app.get_subcommands().front();
  config.subcommand = kinds.at(chosen);
  if (const auto* opt = chosen->get_option_no_throw("--h"); opt && opt->count() > 0) config.grid_h = h;
  config.p_list = p_list;
  config.seed = shared.seed;
  config.format = shared.format == "csv" ? fb::Format::kCsv : fb::Format::kJson;
  config.plot_dir = shared.plot_dir;
  for (const auto& item : shared.tolerances) {
    const auto eq = item.find('=');
    double value = 0.0;
    try {
      if (eq == std::string::npos) throw std::invalid_argument("missing '='");
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      std::cerr << "error: --tol expects key=value, got '" << item << "'\n";
      return fb::kExitParse;
    }
    config.tolerances[item.substr(0, eq)] = value;
  }

  const char* env_dir = std::getenv("FREEBOUND_OUTPUT_DIR");
  const std::string ext = config.format == fb::Format::kCsv ? ".csv" : ".json";
  std::string out_path = shared.out;
  if (out_path.empty() && env_dir && *env_dir) {
    out_path = (std::filesystem::path(env_dir) / (std::string(fb::to_string(config.subcommand)) + ext)).string();
  }
  config.output_path = out_path;

  const auto result = fb::run_campaign(config);
  const std::string text = fb::render(result, config.format);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    const auto parent = std::filesystem::path(out_path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return fb::kExitParse;
    }
    out << text;
  }
  if (!config.plot_dir.empty() && !result.plots.empty()) fb::emit_plot_data(result.plots, config.plot_dir);
  for (const auto& f : result.failures) {
    std::cerr << freebound::io::Json{{"check", f.check}, {"detail", f.detail}}.dump() << '\n';
  }
  return result.exit_code;
}
