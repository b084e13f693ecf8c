#pragma once

// Verification campaigns behind the command-line tool.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freebound/geometry.hpp"
#include "freebound/io.hpp"

namespace freebound::campaign {

enum class Subcommand : std::uint8_t {
  kConstants,
  kIsoperim,
  kRearrange,
  kSobolev,
  kMoser,
  kCounterexample,
  kEig,
  kSymmetrize,
};

enum class Format : std::uint8_t { kJson, kCsv };

std::string_view to_string(Subcommand s);

inline constexpr int kExitPass = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitInequality = 4;

struct CampaignConfig {
  Subcommand subcommand = Subcommand::kConstants;
  // File path or built-in name; empty selects the subcommand's default.
  std::string domain;
  std::optional<double> grid_h;
  std::vector<double> p_list;
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 1;
  int samples = 5;
  int dimension = 2;
  std::vector<double> a_list;
  double tau0 = 0.01;
  int steps = 50;
  std::string output_path;  // empty: stdout
  Format format = Format::kJson;
  std::string plot_dir;      // empty: no plot files
  std::string write_domain;  // isoperim: also write the domain JSON here
};

// Names: halfdisk, square-bottom-free, square-fixed, l-shape, annulus, disk,
// trapezoid, counterexample:<a>. Anything else is read as a JSON file.
geometry::LabeledDomain resolve_domain(const std::string& name);

struct Failure {
  std::string check;
  std::string detail;
};

struct PlotSeries {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct CampaignResult {
  int exit_code = kExitPass;
  std::vector<Failure> failures;
  io::Json report;
  std::vector<PlotSeries> plots;
};

// Tolerance keys (defaults): iso 0.01, equimeasure 4 (multiple of h times the
// contour length), profile 0.02, rearrangement 0.02, sobolev 0.02, sharpness 0.10,
// moser 0.02, frequency 0.02, area 1e-6, ratio 1e-9. Unknown keys are parse
// errors.
//
// Never throws: parse and validation problems map to exit 2, violated
// hypotheses to exit 3 and failed inequalities to exit 4.
CampaignResult run_campaign(const CampaignConfig& config);

// Serializes the report in the configured format.
std::string render(const CampaignResult& result, Format format);

// One CSV per series in `dir`, named <series>.csv.
void emit_plot_data(const std::vector<PlotSeries>& plots, const std::string& dir);

}  // namespace freebound::campaign
