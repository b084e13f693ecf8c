#include "freebound/campaign.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include "freebound/constants.hpp"
#include "freebound/domains.hpp"
#include "freebound/errors.hpp"
#include "freebound/field.hpp"
#include "freebound/quotients.hpp"
#include "freebound/raster.hpp"
#include "freebound/rearrange.hpp"
#include "freebound/spectral.hpp"

namespace freebound::campaign {

namespace {

using io::Json;

const std::map<std::string, double> kDefaultTolerances = {
    {"area", 1e-6},     {"equimeasure", 4.0}, {"frequency", 0.02}, {"iso", 0.01},
    {"rearrangement", 0.02},  {"moser", 0.02},      {"profile", 0.02},    {"ratio", 1e-9},
    {"sharpness", 0.10}, {"sobolev", 0.02},
};

class Context {
 public:
  explicit Context(const CampaignConfig& config) : config_(config) {
    for (const auto& [key, value] : config.tolerances) {
      if (!kDefaultTolerances.count(key)) throw ValidationError("unknown tolerance key '" + key + "'");
      if (!(value >= 0.0)) throw ValidationError("tolerance '" + key + "' must be nonnegative");
    }
  }

  double tol(const std::string& key) const {
    const auto it = config_.tolerances.find(key);
    return it != config_.tolerances.end() ? it->second : kDefaultTolerances.at(key);
  }

  void expect(bool ok, const std::string& check, const std::string& detail) {
    if (!ok) failures.push_back({check, detail});
  }

  std::string domain_name(const char* fallback) const {
    return config_.domain.empty() ? std::string(fallback) : config_.domain;
  }

  double h(double fallback) const {
    const double value = config_.grid_h.value_or(fallback);
    if (!(value > 0.0)) throw ValidationError("grid spacing must be positive");
    return value;
  }

  std::vector<double> p_list(std::vector<double> fallback) const {
    return config_.p_list.empty() ? fallback : config_.p_list;
  }

  // Independent seeds per campaign item, drawn up front so results do not
  // depend on scheduling.
  std::vector<std::uint64_t> item_seeds(int count) const {
    std::seed_seq seq{static_cast<std::uint32_t>(config_.seed), static_cast<std::uint32_t>(config_.seed >> 32)};
    std::vector<std::uint32_t> raw(static_cast<std::size_t>(2 * std::max(count, 0)));
    seq.generate(raw.begin(), raw.end());
    std::vector<std::uint64_t> seeds;
    for (std::size_t k = 0; k + 1 < raw.size(); k += 2) {
      seeds.push_back((static_cast<std::uint64_t>(raw[k]) << 32) | raw[k + 1]);
    }
    return seeds;
  }

  const CampaignConfig& config() const { return config_; }

  std::vector<Failure> failures;
  std::vector<PlotSeries> plots;

 private:
  const CampaignConfig& config_;
};

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(10);
  out << x;
  return out.str();
}

template <typename Fn>
auto run_parallel(int count, Fn fn) {
  using Result = decltype(fn(0));
  std::vector<std::future<Result>> futures;
  for (int k = 0; k < count; ++k) futures.push_back(std::async(std::launch::async, fn, k));
  std::vector<Result> results;
  for (auto& f : futures) results.push_back(f.get());
  return results;
}

Json concavity_json(const geometry::ConcavityResult& c) {
  Json out;
  out["concave"] = c.concave;
  out["vacuous"] = c.vacuous;
  if (c.witness) {
    out["witness"] = {{c.witness->first.x, c.witness->first.y}, {c.witness->second.x, c.witness->second.y}};
  }
  return out;
}

Json run_constants(Context& ctx) {
  const constants::Dimension n(ctx.config().dimension);
  Json rows = Json::array();
  for (double p : ctx.p_list({1.0})) {
    const auto c = constants::sharp_constants(n, p);
    Json row;
    row["n"] = n.value();
    row["p"] = p;
    row["p_star"] = constants::critical_exponent(n, p);
    row["k_np"] = c.k_np;
    row["beta_n"] = c.beta_n;
    row["omega_nm1"] = c.omega_nm1;
    row["iso_free"] = c.iso_free;
    row["iso_std"] = c.iso_std;
    rows.push_back(row);
  }
  return rows;
}

Json run_isoperim(Context& ctx) {
  const auto domain = resolve_domain(ctx.domain_name("halfdisk"));
  if (!ctx.config().write_domain.empty()) io::write_domain_file(domain, ctx.config().write_domain);
  const auto report = geometry::isoperimetric_report(domain);
  const auto concavity = geometry::is_concave_free_boundary(domain);
  Json row;
  row["gamma1_length"] = report.gamma1_length;
  row["area"] = report.area;
  row["ratio"] = report.ratio;
  row["bound"] = report.bound;
  row["margin"] = report.margin;
  row["concavity"] = concavity_json(concavity);
  if (concavity.concave) {
    ctx.expect(report.ratio >= report.bound * (1.0 - ctx.tol("iso")), "isoperimetric",
               "ratio " + fmt(report.ratio) + " below bound " + fmt(report.bound));
  }
  return Json::array({row});
}

Json run_rearrange(Context& ctx) {
  const auto domain = resolve_domain(ctx.domain_name("halfdisk"));
  const double h = ctx.h(1.0 / 64.0);
  const auto grid = raster::rasterize(domain, h);
  const auto p_list = ctx.p_list({1.5, 2.0, 3.0});
  for (double p : p_list) {
    if (!(p > 1.0)) throw DomainError("rearrangement checks need p > 1");
  }
  const bool concave = geometry::is_concave_free_boundary(domain).concave;
  const auto seeds = ctx.item_seeds(ctx.config().samples);

  struct Item {
    double equimeasure_excess = 0.0;
    std::vector<rearrange::InequalitySides> profile;
    std::vector<rearrange::InequalitySides> rearrangement;
  };
  const auto items = run_parallel(static_cast<int>(seeds.size()), [&](int k) {
    std::mt19937_64 rng(seeds[static_cast<std::size_t>(k)]);
    const auto f = field::random_bump_field(grid, rng);
    const auto star = rearrange::radial_rearrangement(f);
    Item item;
    for (double t : rearrange::quantile_levels(f, 20)) {
      const double gap = std::abs(rearrange::distribution_function(f, t) -
                                  rearrange::distribution_function(star.field, t));
      const double surface = rearrange::level_stats(f, t, 2.0).surface;
      item.equimeasure_excess = std::max(item.equimeasure_excess, gap / (h * surface));
    }
    for (double p : p_list) {
      item.profile.push_back(rearrange::check_profile_energy(f, p));
      if (concave) item.rearrangement.push_back(rearrange::check_rearrangement_energy(f, p));
    }
    return item;
  });

  Json rows = Json::array();
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto& item = items[k];
    ctx.expect(item.equimeasure_excess <= ctx.tol("equimeasure"), "equimeasurability",
               "field " + std::to_string(k) + " excess " + fmt(item.equimeasure_excess));
    for (std::size_t j = 0; j < p_list.size(); ++j) {
      Json row;
      row["field"] = k;
      row["p"] = p_list[j];
      row["equimeasure_excess"] = item.equimeasure_excess;
      row["profile_lhs"] = item.profile[j].lhs;
      row["profile_rhs"] = item.profile[j].rhs;
      ctx.expect(item.profile[j].holds(ctx.tol("profile")), "profile",
                 "field " + std::to_string(k) + " p " + fmt(p_list[j]));
      if (concave) {
        row["rearrangement_lhs"] = item.rearrangement[j].lhs;
        row["rearrangement_rhs"] = item.rearrangement[j].rhs;
        ctx.expect(item.rearrangement[j].holds(ctx.tol("rearrangement")), "rearrangement",
                   "field " + std::to_string(k) + " p " + fmt(p_list[j]));
      }
      rows.push_back(row);
    }
  }
  return rows;
}

Json sobolev_row(const quotients::SobolevReport& r, const std::string& kind, double epsilon) {
  Json row;
  row["kind"] = kind;
  row["epsilon"] = epsilon;
  row["p"] = r.p;
  row["p_star"] = r.p_star;
  row["grad_norm"] = r.grad_norm;
  row["lp_star_norm"] = r.lp_star_norm;
  row["quotient"] = r.quotient;
  row["bound"] = r.bound;
  row["margin"] = r.margin;
  return row;
}

Json run_sobolev(Context& ctx) {
  const auto domain = resolve_domain(ctx.domain_name("halfdisk"));
  const double h = ctx.h(1.0 / 128.0);
  const auto grid = raster::rasterize(domain, h);
  if (!geometry::is_concave_free_boundary(domain).concave) {
    throw PreconditionError("free boundary is not concave");
  }
  const std::vector<double> ladder{0.2, 0.1, 0.05};
  const auto seeds = ctx.item_seeds(ctx.config().samples);
  Json rows = Json::array();
  for (double p : ctx.p_list({1.5})) {
    if (!(p > 1.0 && p < 2.0)) throw DomainError("Sobolev exponent must lie in (1, 2)");
    PlotSeries series{"sobolev_ladder_p" + fmt(p), {"epsilon", "quotient", "bound"}, {}};
    const auto bubbles = run_parallel(static_cast<int>(ladder.size()), [&](int k) {
      return quotients::sobolev_report(quotients::talenti_bubble(grid, p, ladder[static_cast<std::size_t>(k)]), p);
    });
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      const auto& r = bubbles[k];
      rows.push_back(sobolev_row(r, "bubble", ladder[k]));
      series.rows.push_back({ladder[k], r.quotient, r.bound});
      ctx.expect(r.quotient >= r.bound * (1.0 - ctx.tol("sobolev")), "sobolev",
                 "bubble eps " + fmt(ladder[k]) + " quotient " + fmt(r.quotient) + " below bound " + fmt(r.bound));
    }
    const auto& last = bubbles.back();
    ctx.expect((last.quotient - last.bound) / last.bound <= ctx.tol("sharpness"), "sharpness",
               "smallest bubble gap " + fmt((last.quotient - last.bound) / last.bound));
    ctx.plots.push_back(std::move(series));

    const auto fields = run_parallel(static_cast<int>(seeds.size()), [&](int k) {
      std::mt19937_64 rng(seeds[static_cast<std::size_t>(k)]);
      return quotients::sobolev_report(field::random_bump_field(grid, rng), p);
    });
    for (std::size_t k = 0; k < fields.size(); ++k) {
      rows.push_back(sobolev_row(fields[k], "random", 0.0));
      ctx.expect(fields[k].quotient >= fields[k].bound * (1.0 - ctx.tol("sobolev")), "sobolev",
                 "random field " + std::to_string(k) + " quotient " + fmt(fields[k].quotient));
    }
  }
  return rows;
}

Json run_moser(Context& ctx) {
  const auto domain = resolve_domain(ctx.domain_name("halfdisk"));
  const double h = ctx.h(1.0 / 64.0);
  const auto grid = raster::rasterize(domain, h);
  const auto seeds = ctx.item_seeds(ctx.config().samples);
  const auto reports = run_parallel(static_cast<int>(seeds.size()), [&](int k) {
    std::mt19937_64 rng(seeds[static_cast<std::size_t>(k)]);
    auto f = field::random_bump_field(grid, rng);
    double energy = 0.0;
    for (std::size_t c = 0; c < f.size(); ++c) {
      const auto g = f.gradient(c);
      energy += geometry::dot(g, g) * grid->cell_area();
    }
    return quotients::moser_report(f.scaled(1.0 / std::sqrt(energy)));
  });
  Json rows = Json::array();
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    Json row;
    row["field"] = k;
    row["energy"] = r.energy;
    row["functional"] = r.functional;
    row["area"] = r.area;
    row["rearranged_functional"] = r.rearranged_functional;
    row["rearranged_energy"] = r.rearranged_energy;
    row["identity_deviation"] = r.identity_deviation;
    rows.push_back(row);
    ctx.expect(r.identity_deviation <= ctx.tol("moser"), "moser_identity",
               "field " + std::to_string(k) + " deviation " + fmt(r.identity_deviation));
    ctx.expect(r.functional >= r.area, "moser_floor", "field " + std::to_string(k));
  }
  return rows;
}

Json run_counterexample(Context& ctx) {
  std::vector<double> a_list = ctx.config().a_list;
  if (a_list.empty()) {
    for (int k = 1; k <= 20; ++k) a_list.push_back(std::pow(10.0, k));
  }
  std::vector<quotients::CounterexampleParams> params_list;
  for (double a : a_list) params_list.push_back({a, ctx.config().tau0, std::nullopt});
  const auto rows = quotients::counterexample_blowup(params_list);
  const auto check = quotients::check_blowup(rows);
  ctx.expect(check.increasing, "blowup_monotone", "lower bound not strictly increasing in a");
  ctx.expect(check.energy_in_range, "blowup_energy", "energy bound outside (0, 1)");
  PlotSeries series{"counterexample", {"a", "energy_bound", "functional_lower_bound"}, {}};
  Json out = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["a"] = r.a;
    row["tau0"] = r.tau0;
    row["log_inv_lambda"] = r.log_inv_lambda;
    row["energy_deficit"] = r.energy_deficit;
    row["energy_bound"] = r.energy_bound;
    row["functional_lower_bound"] = r.functional_lower_bound;
    out.push_back(row);
    series.rows.push_back({r.a, r.energy_bound, r.functional_lower_bound});
  }
  ctx.plots.push_back(std::move(series));
  return out;
}

Json run_eig(Context& ctx) {
  const auto domain = resolve_domain(ctx.domain_name("square-bottom-free"));
  const double h = ctx.h(1.0 / 64.0);
  std::vector<double> spacings;
  for (double s : {4.0 * h, 2.0 * h, h}) {
    const auto box = domain.bounds();
    if (std::max(box.width(), box.height()) / s >= 8.0) spacings.push_back(s);
  }
  const auto reports = run_parallel(static_cast<int>(spacings.size()), [&](int k) {
    return spectral::check_principal_frequency(domain, spacings[static_cast<std::size_t>(k)]);
  });
  PlotSeries series{"eig_refinement", {"h", "lambda", "reference"}, {}};
  Json rows = Json::array();
  for (const auto& r : reports) {
    Json row;
    row["h"] = r.h;
    row["lambda"] = r.lambda;
    row["reference"] = r.reference;
    row["margin"] = r.margin;
    row["iterations"] = r.iterations;
    row["residual"] = r.residual;
    row["vacuous_concavity"] = r.vacuous_concavity;
    rows.push_back(row);
    series.rows.push_back({r.h, r.lambda, r.reference});
  }
  const auto& finest = reports.back();
  ctx.expect(finest.margin >= -ctx.tol("frequency") * finest.reference, "frequency",
             "lambda " + fmt(finest.lambda) + " below reference " + fmt(finest.reference));
  ctx.plots.push_back(std::move(series));
  return rows;
}

Json run_symmetrize(Context& ctx) {
  const auto domain = resolve_domain(ctx.domain_name("trapezoid"));
  geometry::IterationOptions options;
  options.max_steps = ctx.config().steps;
  const auto records = geometry::symmetrize_iterate(domain, options);
  PlotSeries series{"symmetrization", {"step", "ratio", "area"}, {}};
  Json rows = Json::array();
  const double area0 = records.front().area;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    Json row;
    row["step"] = r.step;
    row["theta"] = r.theta;
    row["ratio"] = r.ratio;
    row["area"] = r.area;
    row["free_projection"] = r.free_projection;
    row["outcome"] = std::string(geometry::to_string(r.outcome));
    rows.push_back(row);
    series.rows.push_back({static_cast<double>(r.step), r.ratio, r.area});
    ctx.expect(std::abs(r.area - area0) <= ctx.tol("area") * area0, "area",
               "step " + std::to_string(r.step) + " area " + fmt(r.area));
    if (k > 0) {
      ctx.expect(r.ratio <= records[k - 1].ratio + ctx.tol("ratio"), "ratio",
                 "step " + std::to_string(r.step) + " ratio increased to " + fmt(r.ratio));
    }
  }
  ctx.plots.push_back(std::move(series));
  return rows;
}

Json config_json(const CampaignConfig& c) {
  Json out;
  out["domain"] = c.domain;
  out["h"] = c.grid_h ? Json(*c.grid_h) : Json(nullptr);
  out["p"] = c.p_list;
  out["seed"] = c.seed;
  out["samples"] = c.samples;
  Json tol = Json::object();
  for (const auto& [key, value] : c.tolerances) tol[key] = value;
  out["tolerances"] = tol;
  return out;
}

}  // namespace

std::string_view to_string(Subcommand s) {
  switch (s) {
    case Subcommand::kConstants: return "constants";
    case Subcommand::kIsoperim: return "isoperim";
    case Subcommand::kRearrange: return "rearrange";
    case Subcommand::kSobolev: return "sobolev";
    case Subcommand::kMoser: return "moser";
    case Subcommand::kCounterexample: return "counterexample";
    case Subcommand::kEig: return "eig";
    case Subcommand::kSymmetrize: return "symmetrize";
  }
  return "unknown";
}

geometry::LabeledDomain resolve_domain(const std::string& name) {
  if (name == "halfdisk") return domains::half_disk();
  if (name == "square-bottom-free") return domains::unit_square(true);
  if (name == "square-fixed") return domains::unit_square(false);
  if (name == "l-shape") return domains::l_shape();
  if (name == "annulus") return domains::square_annulus();
  if (name == "disk") return domains::disk();
  if (name == "trapezoid") return domains::right_trapezoid();
  const std::string prefix = "counterexample:";
  if (name.rfind(prefix, 0) == 0) {
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(name.substr(prefix.size()), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != name.size() - prefix.size()) {
      throw ValidationError("bad counterexample parameter in '" + name + "'");
    }
    return quotients::counterexample_domain({a, 0.01, std::nullopt});
  }
  return io::read_domain_file(name);
}

CampaignResult run_campaign(const CampaignConfig& config) {
  CampaignResult result;
  Json results;
  std::vector<Failure> failures;
  std::vector<PlotSeries> plots;
  std::string error;
  try {
    Context ctx(config);
    switch (config.subcommand) {
      case Subcommand::kConstants: results = run_constants(ctx); break;
      case Subcommand::kIsoperim: results = run_isoperim(ctx); break;
      case Subcommand::kRearrange: results = run_rearrange(ctx); break;
      case Subcommand::kSobolev: results = run_sobolev(ctx); break;
      case Subcommand::kMoser: results = run_moser(ctx); break;
      case Subcommand::kCounterexample: results = run_counterexample(ctx); break;
      case Subcommand::kEig: results = run_eig(ctx); break;
      case Subcommand::kSymmetrize: results = run_symmetrize(ctx); break;
    }
    failures = std::move(ctx.failures);
    plots = std::move(ctx.plots);
    result.exit_code = failures.empty() ? kExitPass : kExitInequality;
  } catch (const PreconditionError& e) {
    result.exit_code = kExitPrecondition;
    failures.push_back({"precondition", e.what()});
  } catch (const ValidationError& e) {
    result.exit_code = kExitParse;
    failures.push_back({"input", e.what()});
  } catch (const DomainError& e) {
    result.exit_code = kExitParse;
    failures.push_back({"input", e.what()});
  } catch (const nlohmann::json::exception& e) {
    result.exit_code = kExitParse;
    failures.push_back({"input", e.what()});
  } catch (const ConvergenceError& e) {
    result.exit_code = kExitInequality;
    failures.push_back({"convergence", e.what()});
  } catch (const std::exception& e) {
    result.exit_code = kExitInequality;
    failures.push_back({"error", e.what()});
  }

  Json report;
  report["subcommand"] = std::string(to_string(config.subcommand));
  report["config"] = config_json(config);
  report["status"] = result.exit_code == kExitPass ? "pass" : "fail";
  report["exit_code"] = result.exit_code;
  report["results"] = results.is_null() ? Json::array() : results;
  Json failure_list = Json::array();
  for (const auto& f : failures) failure_list.push_back({{"check", f.check}, {"detail", f.detail}});
  report["failures"] = failure_list;
  result.report = std::move(report);
  result.failures = std::move(failures);
  result.plots = std::move(plots);
  return result;
}

std::string render(const CampaignResult& result, Format format) {
  if (format == Format::kJson) return result.report.dump(2) + "\n";
  return io::rows_to_csv(result.report["results"]);
}

void emit_plot_data(const std::vector<PlotSeries>& plots, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& series : plots) {
    std::ofstream out(std::filesystem::path(dir) / (series.name + ".csv"));
    if (!out) throw ValidationError("cannot write plot data in '" + dir + "'");
    for (std::size_t k = 0; k < series.columns.size(); ++k) out << (k ? "," : "") << series.columns[k];
    out << '\n';
    std::array<char, 32> buf{};
    for (const auto& row : series.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        // Shortest round-trip form.
        const auto end = std::to_chars(buf.data(), buf.data() + buf.size(), row[k]).ptr;
        out << (k ? "," : "") << std::string_view(buf.data(), static_cast<std::size_t>(end - buf.data()));
      }
      out << '\n';
    }
  }
}

}  // namespace freebound::campaign
