#include "unitdist/dataio.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "unitdist/distribution.hpp"

namespace unitdist {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size();
}

constexpr std::array<double, 41> kOecdWater = {
    0.92, 0.92, 0.79, 0.90, 0.62, 0.82, 0.87, 0.89, 0.93, 0.86, 0.97,
    0.78, 0.91, 0.67, 0.81, 0.97, 0.80, 0.77, 0.77, 0.87, 0.82, 0.83,
    0.83, 0.85, 0.75, 0.91, 0.85, 0.98, 0.82, 0.89, 0.81, 0.93, 0.76,
    0.97, 0.96, 0.62, 0.82, 0.88, 0.70, 0.62, 0.72};

std::string format_fixed(double v) {
  char buf[64];
  if (std::fabs(v) >= 1e5 || (v != 0.0 && std::fabs(v) < 1e-4))
    std::snprintf(buf, sizeof(buf), "%.4e", v);
  else
    std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct ReportGrid {
  std::vector<std::string> row_labels;
  // cells[row][col]; nullopt renders as the format's absence marker
  std::vector<std::vector<std::optional<std::string>>> cells;
  std::vector<std::string> col_labels;
};

ReportGrid build_grid(const std::vector<ReportEntry>& reports, bool full_precision) {
  ReportGrid grid;
  auto fmt = [&](double v) { return full_precision ? format_full(v) : format_fixed(v); };

  std::vector<std::string> param_names;
  std::size_t vcov_dim = 0;
  bool any_error = false;
  for (const auto& entry : reports) {
    if (entry.fit) {
      const auto names = family_param_names(entry.fit->spec.family());
      for (const auto& name : names)
        if (std::find(param_names.begin(), param_names.end(), name) == param_names.end())
          param_names.push_back(name);
      if (entry.fit->vcov) vcov_dim = std::max(vcov_dim, entry.fit->vcov->size());
    }
    if (entry.error) any_error = true;
  }

  grid.row_labels = param_names;
  std::vector<std::pair<std::size_t, std::size_t>> vcov_cells;
  for (std::size_t j = 0; j < vcov_dim; ++j)
    for (std::size_t k = j; k < vcov_dim; ++k) {
      vcov_cells.emplace_back(j, k);
      grid.row_labels.push_back("vcov[" + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                "]");
    }
  const char* tail[] = {"LL",  "AIC",           "CAIC",    "BIC",      "HQIC",
                        "Ho",  "P-value of KS", "KS-test", "CVM-test", "AD-test"};
  for (const char* label : tail) grid.row_labels.push_back(label);
  if (any_error) grid.row_labels.push_back("error");

  for (const auto& entry : reports) {
    grid.col_labels.push_back(entry.label);
    std::vector<std::optional<std::string>> col;
    const auto names =
        entry.fit ? family_param_names(entry.fit->spec.family()) : std::vector<std::string>{};
    for (const auto& name : param_names) {
      std::optional<std::string> cell;
      if (entry.fit) {
        const auto it = std::find(names.begin(), names.end(), name);
        if (it != names.end())
          cell = fmt(entry.fit->spec.params()[static_cast<std::size_t>(it - names.begin())]);
      }
      col.push_back(cell);
    }
    for (const auto& [j, k] : vcov_cells) {
      std::optional<std::string> cell;
      if (entry.fit && entry.fit->vcov && j < entry.fit->vcov->size())
        cell = fmt((*entry.fit->vcov)[j][k]);
      col.push_back(cell);
    }
    const auto& gof = entry.gof;
    auto push_num = [&](std::optional<double> v) {
      col.push_back(v ? std::optional<std::string>(fmt(*v)) : std::nullopt);
    };
    push_num(gof ? std::optional<double>(gof->log_lik) : std::nullopt);
    push_num(gof ? std::optional<double>(gof->aic) : std::nullopt);
    push_num(gof ? std::optional<double>(gof->caic) : std::nullopt);
    push_num(gof ? std::optional<double>(gof->bic) : std::nullopt);
    push_num(gof ? std::optional<double>(gof->hqic) : std::nullopt);
    col.push_back(gof ? std::optional<std::string>(gof->reject_at_5pct ? "Reject"
                                                                       : "Fail to reject")
                      : std::nullopt);
    push_num(gof ? std::optional<double>(gof->ks_pvalue) : std::nullopt);
    push_num(gof ? std::optional<double>(gof->ks) : std::nullopt);
    push_num(gof ? std::optional<double>(gof->cvm) : std::nullopt);
    push_num(gof ? std::optional<double>(gof->ad) : std::nullopt);
    if (any_error) col.push_back(entry.error);
    grid.cells.push_back(std::move(col));
  }
  return grid;
}

std::string render_text(const ReportGrid& grid) {
  const std::size_t n_rows = grid.row_labels.size();
  const std::size_t n_cols = grid.col_labels.size();
  std::vector<std::size_t> widths(n_cols + 1, 0);
  for (const auto& label : grid.row_labels) widths[0] = std::max(widths[0], label.size());
  for (std::size_t c = 0; c < n_cols; ++c) {
    widths[c + 1] = grid.col_labels[c].size();
    for (std::size_t r = 0; r < n_rows; ++r)
      widths[c + 1] = std::max(widths[c + 1], grid.cells[c][r].value_or("n/a").size());
  }
  std::ostringstream out;
  auto pad = [&](const std::string& s, std::size_t w) {
    out << s << std::string(w - s.size() + 2, ' ');
  };
  pad("", widths[0]);
  for (std::size_t c = 0; c < n_cols; ++c) pad(grid.col_labels[c], widths[c + 1]);
  out << '\n';
  for (std::size_t r = 0; r < n_rows; ++r) {
    pad(grid.row_labels[r], widths[0]);
    for (std::size_t c = 0; c < n_cols; ++c) pad(grid.cells[c][r].value_or("n/a"), widths[c + 1]);
    out << '\n';
  }
  return out.str();
}

std::string render_csv(const ReportGrid& grid) {
  std::ostringstream out;
  out << "row";
  for (const auto& label : grid.col_labels) out << ',' << csv_escape(label);
  out << '\n';
  for (std::size_t r = 0; r < grid.row_labels.size(); ++r) {
    out << csv_escape(grid.row_labels[r]);
    for (std::size_t c = 0; c < grid.col_labels.size(); ++c)
      out << ',' << csv_escape(grid.cells[c][r].value_or(""));
    out << '\n';
  }
  return out.str();
}

std::string render_json(const std::vector<ReportEntry>& reports) {
  nlohmann::json root;
  root["schema_version"] = 1;
  auto& list = root["reports"] = nlohmann::json::array();
  for (const auto& entry : reports) {
    nlohmann::json item;
    item["family"] = entry.label;
    if (entry.fit) {
      const auto& fit = *entry.fit;
      const auto names = family_param_names(fit.spec.family());
      nlohmann::json params;
      for (std::size_t j = 0; j < names.size(); ++j) params[names[j]] = fit.spec.params()[j];
      item["params"] = params;
      item["converged"] = fit.converged;
      item["identifiability_flag"] = fit.identifiability_flag;
      item["std_err"] = fit.std_err ? nlohmann::json(*fit.std_err) : nlohmann::json();
      item["vcov"] = fit.vcov ? nlohmann::json(*fit.vcov) : nlohmann::json();
    } else {
      item["params"] = nullptr;
      item["converged"] = nullptr;
      item["identifiability_flag"] = nullptr;
      item["std_err"] = nullptr;
      item["vcov"] = nullptr;
    }
    if (entry.gof) {
      const auto& g = *entry.gof;
      item["log_lik"] = g.log_lik;
      item["k"] = g.k;
      item["aic"] = g.aic;
      item["caic"] = g.caic;
      item["bic"] = g.bic;
      item["hqic"] = g.hqic;
      item["ks"] = g.ks;
      item["ks_pvalue"] = g.ks_pvalue;
      item["cvm"] = g.cvm;
      item["ad"] = g.ad;
      item["ho"] = g.reject_at_5pct ? "Reject" : "Fail to reject";
    } else {
      for (const char* key : {"log_lik", "k", "aic", "caic", "bic", "hqic", "ks", "ks_pvalue",
                              "cvm", "ad", "ho"})
        item[key] = nullptr;
    }
    item["error"] = entry.error ? nlohmann::json(*entry.error) : nlohmann::json();
    list.push_back(std::move(item));
  }
  return root.dump(2) + "\n";
}

}  // namespace

Dataset load_stream(std::istream& in, const std::string& label) {
  std::vector<double> values;
  std::vector<std::string> range_errors;
  std::string line;
  std::size_t lineno = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string tok = trim(line);
    if (tok.empty()) continue;
    double v = 0.0;
    if (!parse_double(tok, v)) {
      if (!seen_content) {
        seen_content = true;  // a leading non-numeric line is a header
        continue;
      }
      throw std::runtime_error(label + ": line " + std::to_string(lineno) +
                               ": cannot parse '" + tok + "' as a number");
    }
    seen_content = true;
    if (!(v > 0.0 && v < 1.0))
      range_errors.push_back("line " + std::to_string(lineno) + ": " + tok);
    values.push_back(v);
  }
  if (!range_errors.empty()) {
    std::string msg = label + ": values outside the open interval (0, 1):";
    for (const auto& e : range_errors) msg += " " + e + ";";
    msg.pop_back();
    throw std::runtime_error(msg);
  }
  if (values.empty()) throw std::runtime_error(label + ": no data values found");
  return Dataset(std::move(values));
}

Dataset load(const DataSource& source) {
  switch (source.kind) {
    case DataSource::Kind::file: {
      std::ifstream in(source.locator);
      if (!in) throw std::runtime_error("cannot open data file: " + source.locator);
      return load_stream(in, source.locator);
    }
    case DataSource::Kind::builtin:
      return builtin_dataset(source.locator);
    case DataSource::Kind::inline_list: {
      std::vector<double> values;
      std::stringstream ss(source.locator);
      std::string tok;
      std::size_t pos = 0;
      while (std::getline(ss, tok, ',')) {
        ++pos;
        tok = trim(tok);
        if (tok.empty()) continue;
        double v = 0.0;
        if (!parse_double(tok, v))
          throw std::runtime_error("inline data: value " + std::to_string(pos) +
                                   ": cannot parse '" + tok + "' as a number");
        if (!(v > 0.0 && v < 1.0))
          throw std::runtime_error("inline data: value " + std::to_string(pos) + " (" + tok +
                                   ") outside the open interval (0, 1)");
        values.push_back(v);
      }
      if (values.empty()) throw std::runtime_error("inline data: no data values found");
      return Dataset(std::move(values));
    }
  }
  throw std::logic_error("load: unhandled source kind");
}

std::vector<std::string> builtin_dataset_names() { return {"oecd-water"}; }

Dataset builtin_dataset(const std::string& name) {
  if (name == "oecd-water")
    return Dataset(std::vector<double>(kOecdWater.begin(), kOecdWater.end()));
  std::string msg = "unknown builtin dataset '" + name + "'; available:";
  for (const auto& n : builtin_dataset_names()) msg += " " + n;
  throw std::invalid_argument(msg);
}

std::string builtin_dataset_note(const std::string& name) {
  builtin_dataset(name);  // validates the name
  return "OECD Better Life Index, water quality indicator "
         "(https://stats.oecd.org/index.aspx?DataSetCode=BLI); 41 national proportions "
         "stored to two decimal places as published. The published summary table prints "
         "a minimum of 0.062, but the listed values bottom out at 0.62; the stored data "
         "keeps 0.62.";
}

std::string export_dataset_csv(const Dataset& data) {
  std::string out;
  for (double v : data.values()) {
    out += format_full(v);
    out += '\n';
  }
  return out;
}

std::string export_report(const std::vector<ReportEntry>& reports, ReportFormat format) {
  if (reports.empty()) throw std::invalid_argument("export_report: empty report list");
  switch (format) {
    case ReportFormat::text_table:
      return render_text(build_grid(reports, false));
    case ReportFormat::csv:
      return render_csv(build_grid(reports, true));
    case ReportFormat::json:
      return render_json(reports);
  }
  throw std::logic_error("export_report: unhandled format");
}

}  // namespace unitdist
