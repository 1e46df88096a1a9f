#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "unitdist/dataio.hpp"
#include "unitdist/distribution.hpp"
#include "unitdist/gof.hpp"
#include "unitdist/mle.hpp"
#include "unitdist/sampler.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNoConverge = 3;

int fail(int code, const std::string& msg) {
  std::cerr << "error: " << msg << '\n';
  return code;
}

struct DataFlags {
  std::string builtin;
  std::string file;
  std::string values;
};

void add_data_flags(CLI::App* cmd, DataFlags& flags) {
  cmd->add_option("--builtin", flags.builtin, "builtin dataset name");
  cmd->add_option("--data", flags.file, "data file path, or - for stdin");
  cmd->add_option("--values", flags.values, "inline comma-separated values");
}

// Throws CLI::ValidationError (usage) when not exactly one source is given;
// data problems surface as std::runtime_error for exit code 2.
unitdist::Dataset load_data(const DataFlags& flags) {
  const int given = (!flags.builtin.empty()) + (!flags.file.empty()) + (!flags.values.empty());
  if (given != 1)
    throw CLI::ValidationError("data source",
                               "give exactly one of --builtin, --data, --values");
  if (!flags.builtin.empty())
    return unitdist::load({unitdist::DataSource::Kind::builtin, flags.builtin});
  if (!flags.values.empty())
    return unitdist::load({unitdist::DataSource::Kind::inline_list, flags.values});
  if (flags.file == "-") return unitdist::load_stream(std::cin, "stdin");
  return unitdist::load({unitdist::DataSource::Kind::file, flags.file});
}

std::vector<double> parse_number_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::runtime_error(std::string(what) + ": cannot parse '" + tok + "' as a number");
    }
  }
  if (out.empty()) throw std::runtime_error(std::string(what) + ": empty list");
  return out;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("UNITDIST_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 0;
}

std::string fmt4(double v) {
  char buf[64];
  if (std::fabs(v) >= 1e5 || (v != 0.0 && std::fabs(v) < 1e-4))
    std::snprintf(buf, sizeof(buf), "%.4e", v);
  else
    std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string fmt_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return fail(kExitData, "cannot write to " + path);
  out << content;
  return kExitOk;
}

struct FitFlags {
  std::string init;
  int max_iter = 2000;
  double x_tol = 1e-9;
  double f_tol = 1e-9;
  int multi_start = 4;
  std::uint64_t restart_seed = 0;
};

void add_fit_flags(CLI::App* cmd, FitFlags& flags) {
  cmd->add_option("--init", flags.init, "starting parameters, comma separated");
  cmd->add_option("--max-iter", flags.max_iter, "simplex iteration cap");
  cmd->add_option("--x-tol", flags.x_tol, "simplex spread tolerance");
  cmd->add_option("--f-tol", flags.f_tol, "objective spread tolerance");
  cmd->add_option("--multi-start", flags.multi_start, "extra perturbed restarts");
  cmd->add_option("--restart-seed", flags.restart_seed, "seed for restart perturbations");
}

unitdist::FitConfig make_config(const FitFlags& flags) {
  unitdist::FitConfig config;
  if (!flags.init.empty()) config.init = parse_number_list(flags.init, "--init");
  config.max_iter = flags.max_iter;
  config.x_tol = flags.x_tol;
  config.f_tol = flags.f_tol;
  config.multi_start = flags.multi_start;
  config.restart_seed = flags.restart_seed;
  return config;
}

std::optional<std::size_t> charged_params(unitdist::Family family, bool paper_k) {
  // The published comparison charges fatima2 only two parameters.
  if (paper_k && family == unitdist::Family::fatima2) return std::size_t{2};
  return std::nullopt;
}

int cmd_describe(const DataFlags& data_flags, const std::string& format) {
  unitdist::Dataset data = [&] { return load_data(data_flags); }();
  const auto stats = unitdist::descriptive(data);
  std::string note;
  if (!data_flags.builtin.empty()) note = unitdist::builtin_dataset_note(data_flags.builtin);
  if (format == "json") {
    nlohmann::json root;
    root["schema_version"] = 1;
    auto& d = root["descriptive"];
    d["n"] = stats.n;
    d["min"] = stats.min;
    d["max"] = stats.max;
    d["mean"] = stats.mean;
    d["std_dev"] = stats.std_dev;
    d["skewness"] = stats.skewness;
    d["kurtosis"] = stats.kurtosis;
    d["q25"] = stats.q25;
    d["median"] = stats.median;
    d["q75"] = stats.q75;
    root["note"] = note.empty() ? nlohmann::json() : nlohmann::json(note);
    std::cout << root.dump(2) << '\n';
  } else {
    std::cout << "n         " << stats.n << '\n'
              << "min       " << fmt4(stats.min) << '\n'
              << "max       " << fmt4(stats.max) << '\n'
              << "mean      " << fmt4(stats.mean) << '\n'
              << "std dev   " << fmt4(stats.std_dev) << '\n'
              << "skewness  " << fmt4(stats.skewness) << '\n'
              << "kurtosis  " << fmt4(stats.kurtosis) << '\n'
              << "q25       " << fmt4(stats.q25) << '\n'
              << "median    " << fmt4(stats.median) << '\n'
              << "q75       " << fmt4(stats.q75) << '\n';
    if (!note.empty()) std::cout << "note: " << note << '\n';
  }
  return kExitOk;
}

int cmd_fit(const std::string& dist, const DataFlags& data_flags, const FitFlags& fit_flags,
            bool paper_k, const std::string& format) {
  unitdist::Family family;
  try {
    family = unitdist::family_from_name(dist);
  } catch (const std::invalid_argument& e) {
    return fail(kExitUsage, e.what());
  }
  unitdist::Dataset data = load_data(data_flags);
  unitdist::FitResult fit = [&] {
    try {
      return unitdist::fit(family, data, make_config(fit_flags));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(e.what());  // parameter/data error, exit 2
    }
  }();
  const auto gof = unitdist::gof_report(fit, data, charged_params(family, paper_k));

  if (format == "json") {
    unitdist::ReportEntry entry;
    entry.label = unitdist::family_name(family);
    entry.fit = fit;
    entry.gof = gof;
    std::cout << unitdist::export_report({entry}, unitdist::ReportFormat::json);
  } else {
    const auto names = unitdist::family_param_names(family);
    std::cout << "family          " << unitdist::family_name(family) << '\n'
              << "converged       " << (fit.converged ? "yes" : "no") << '\n'
              << "evaluations     " << fit.n_evals << '\n'
              << "parameters\n";
    for (std::size_t j = 0; j < names.size(); ++j) {
      std::cout << "  " << names[j] << "  " << fmt4(fit.spec.params()[j]);
      if (fit.std_err) std::cout << "  std err " << fmt4((*fit.std_err)[j]);
      std::cout << '\n';
    }
    if (fit.identifiability_flag) {
      std::cout << "warning: parameters not jointly identifiable at this optimum; "
                   "standard errors unavailable\n";
      if (const auto iq = unitdist::identified_quantity(fit))
        std::cout << "identified quantity " << iq->first << " = " << fmt4(iq->second) << '\n';
    }
    std::cout << "log-likelihood  " << fmt4(gof.log_lik) << '\n'
              << "AIC             " << fmt4(gof.aic) << '\n'
              << "CAIC            " << fmt4(gof.caic) << '\n'
              << "BIC             " << fmt4(gof.bic) << '\n'
              << "HQIC            " << fmt4(gof.hqic) << '\n'
              << "KS-test         " << fmt4(gof.ks) << "  p-value " << fmt4(gof.ks_pvalue)
              << '\n'
              << "CVM-test        " << fmt4(gof.cvm) << '\n'
              << "AD-test         " << fmt4(gof.ad) << '\n'
              << "Ho: " << (gof.reject_at_5pct ? "Reject" : "Fail to reject") << '\n';
  }
  return fit.converged ? kExitOk : kExitNoConverge;
}

int cmd_compare(const std::string& dists, const DataFlags& data_flags, const FitFlags& fit_flags,
                bool paper_k, bool sort_aic, const std::string& format) {
  std::vector<unitdist::Family> families;
  std::stringstream ss(dists);
  std::string tok;
  try {
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) families.push_back(unitdist::family_from_name(tok));
  } catch (const std::invalid_argument& e) {
    return fail(kExitUsage, e.what());
  }
  if (families.empty()) return fail(kExitUsage, "--dists: no families given");
  unitdist::Dataset data = load_data(data_flags);

  std::vector<unitdist::ReportEntry> entries;
  bool any_converged = false;
  for (const auto family : families) {
    unitdist::ReportEntry entry;
    entry.label = unitdist::family_name(family);
    try {
      auto fit = unitdist::fit(family, data, make_config(fit_flags));
      entry.gof = unitdist::gof_report(fit, data, charged_params(family, paper_k));
      any_converged = any_converged || fit.converged;
      if (!fit.converged) entry.error = "did not converge within the iteration cap";
      entry.fit = std::move(fit);
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    entries.push_back(std::move(entry));
  }
  if (sort_aic) {
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      const double aa = a.gof ? a.gof->aic : std::numeric_limits<double>::infinity();
      const double bb = b.gof ? b.gof->aic : std::numeric_limits<double>::infinity();
      return aa < bb;
    });
  }
  const auto fmt = format == "json"  ? unitdist::ReportFormat::json
                   : format == "csv" ? unitdist::ReportFormat::csv
                                     : unitdist::ReportFormat::text_table;
  std::cout << unitdist::export_report(entries, fmt);
  return any_converged ? kExitOk : kExitNoConverge;
}

int cmd_sample(const std::string& dist, const std::string& params, std::size_t n,
               std::uint64_t seed, const std::string& out) {
  unitdist::Family family;
  try {
    family = unitdist::family_from_name(dist);
  } catch (const std::invalid_argument& e) {
    return fail(kExitUsage, e.what());
  }
  const auto values = parse_number_list(params, "--params");
  unitdist::DistributionSpec spec = [&] {
    try {
      return unitdist::DistributionSpec(family, values);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(e.what());
    }
  }();
  const auto draws = unitdist::sample({spec, n, seed});
  std::string content;
  content.reserve(draws.size() * 20);
  for (double v : draws) {
    content += fmt_full(v);
    content += '\n';
  }
  return write_output(out, content);
}

int cmd_curve(const std::string& dist, const std::string& params, std::size_t grid,
              const std::string& out) {
  unitdist::Family family;
  try {
    family = unitdist::family_from_name(dist);
  } catch (const std::invalid_argument& e) {
    return fail(kExitUsage, e.what());
  }
  const auto values = parse_number_list(params, "--params");
  unitdist::DistributionSpec spec = [&] {
    try {
      return unitdist::DistributionSpec(family, values);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(e.what());
    }
  }();
  if (grid < 1) return fail(kExitUsage, "--grid: need at least one point");
  std::string content = "y,pdf,cdf,hazard\n";
  for (std::size_t j = 1; j <= grid; ++j) {
    const double y = static_cast<double>(j) / static_cast<double>(grid + 1);
    const double p = unitdist::pdf(spec, y);
    const double c = unitdist::cdf(spec, y);
    double h;
    try {
      h = unitdist::hazard(spec, y);
    } catch (const std::overflow_error&) {
      h = std::numeric_limits<double>::infinity();
    }
    content += fmt_full(y);
    content += ',';
    content += fmt_full(p);
    content += ',';
    content += fmt_full(c);
    content += ',';
    content += fmt_full(h);
    content += '\n';
  }
  return write_output(out, content);
}

int cmd_list_dists(const std::string& format) {
  if (format == "json") {
    nlohmann::json root;
    root["schema_version"] = 1;
    auto& list = root["families"] = nlohmann::json::array();
    for (const auto& name : unitdist::registered_family_names()) {
      const auto family = unitdist::family_from_name(name);
      nlohmann::json item;
      item["name"] = name;
      item["params"] = unitdist::family_param_names(family);
      item["constraints"] = unitdist::family_constraints(family);
      list.push_back(std::move(item));
    }
    std::cout << root.dump(2) << '\n';
  } else {
    for (const auto& name : unitdist::registered_family_names()) {
      const auto family = unitdist::family_from_name(name);
      std::cout << name << " (";
      const auto params = unitdist::family_param_names(family);
      for (std::size_t j = 0; j < params.size(); ++j)
        std::cout << (j ? ", " : "") << params[j];
      std::cout << "): " << unitdist::family_constraints(family) << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"order-statistic unit-interval distributions: fitting, comparison, sampling"};
  app.require_subcommand(1);
  std::string format = "text";

  DataFlags describe_data;
  auto* describe = app.add_subcommand("describe", "descriptive statistics of a dataset");
  add_data_flags(describe, describe_data);
  describe->add_option("--format", format, "text or json");

  std::string fit_dist;
  DataFlags fit_data;
  FitFlags fit_flags;
  bool fit_paper_k = false;
  auto* fit = app.add_subcommand("fit", "maximum-likelihood fit of one family");
  fit->add_option("--dist", fit_dist, "family name")->required();
  add_data_flags(fit, fit_data);
  add_fit_flags(fit, fit_flags);
  fit->add_flag("--paper-k", fit_paper_k, "charge fatima2 two parameters in the criteria");
  fit->add_option("--format", format, "text or json");

  std::string compare_dists;
  DataFlags compare_data;
  FitFlags compare_flags;
  bool compare_paper_k = false;
  bool compare_sort = false;
  auto* compare = app.add_subcommand("compare", "fit several families side by side");
  compare->add_option("--dists", compare_dists, "comma-separated family names")->required();
  add_data_flags(compare, compare_data);
  add_fit_flags(compare, compare_flags);
  compare->add_flag("--paper-k", compare_paper_k, "charge fatima2 two parameters");
  compare->add_flag("--sort-aic", compare_sort, "order columns by AIC, best first");
  compare->add_option("--format", format, "text, json or csv");

  std::string sample_dist, sample_params, sample_out;
  std::size_t sample_n = 1;
  std::uint64_t seed = default_seed();
  auto* sample = app.add_subcommand("sample", "draw deterministic pseudo-random values");
  sample->add_option("--dist", sample_dist, "family name")->required();
  sample->add_option("--params", sample_params, "comma-separated parameters")->required();
  sample->add_option("--n", sample_n, "number of draws");
  sample->add_option("--seed", seed, "random seed (default from UNITDIST_SEED)");
  sample->add_option("--out", sample_out, "output file (default stdout)");

  std::string curve_dist, curve_params, curve_out;
  std::size_t curve_grid = 1000;
  auto* curve = app.add_subcommand("curve", "pdf/cdf/hazard series on an interior grid");
  curve->add_option("--dist", curve_dist, "family name")->required();
  curve->add_option("--params", curve_params, "comma-separated parameters")->required();
  curve->add_option("--grid", curve_grid, "number of interior grid points");
  curve->add_option("--out", curve_out, "output file (default stdout)");

  auto* list = app.add_subcommand("list-dists", "registered families and constraints");
  list->add_option("--format", format, "text or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (describe->parsed()) return cmd_describe(describe_data, format);
    if (fit->parsed()) return cmd_fit(fit_dist, fit_data, fit_flags, fit_paper_k, format);
    if (compare->parsed())
      return cmd_compare(compare_dists, compare_data, compare_flags, compare_paper_k,
                         compare_sort, format);
    if (sample->parsed()) return cmd_sample(sample_dist, sample_params, sample_n, seed, sample_out);
    if (curve->parsed()) return cmd_curve(curve_dist, curve_params, curve_grid, curve_out);
    if (list->parsed()) return cmd_list_dists(format);
  } catch (const CLI::ValidationError& e) {
    return fail(kExitUsage, e.what());
  } catch (const std::exception& e) {
    return fail(kExitData, e.what());
  }
  return fail(kExitUsage, "no command given");
}
