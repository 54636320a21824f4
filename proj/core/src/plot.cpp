//
// Copyright 2026 The shared-rep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "sharedrep/plot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

#include "csv_util.hpp"
#include "sharedrep/error.hpp"
#include "sharedrep/rate.hpp"

namespace sharedrep {

namespace fs = std::filesystem;

FigureRecipe parse_recipe(const std::string& name) {
  if (name == "fig2_style") return FigureRecipe::kFig2;
  if (name == "fig3_style") return FigureRecipe::kFig3;
  if (name == "fig4_style") return FigureRecipe::kFig4;
  if (name == "fig5_style") return FigureRecipe::kFig5;
  throw ConfigError("plot: unknown recipe: " + name);
}

std::string recipe_name(FigureRecipe recipe) {
  switch (recipe) {
    case FigureRecipe::kFig2: return "fig2_style";
    case FigureRecipe::kFig3: return "fig3_style";
    case FigureRecipe::kFig4: return "fig4_style";
    case FigureRecipe::kFig5: return "fig5_style";
  }
  throw ConfigError("plot: bad recipe");
}

namespace {

constexpr const char* kSeriesHeader = "x,median,q25,q75,mean\n";

struct SeriesPoint {
  double x;
  double median;
  double q25;
  double q75;
  double mean;
};

// File names keep only identifier-safe characters of the estimator name.
std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out += c;
    else if (c == '(' || c == ',')
      out += '_';
  }
  return out;
}

std::string svg_chart(const std::map<std::string, std::vector<SeriesPoint>>& series,
                      const std::string& x_label, const std::string& y_label) {
  constexpr double kW = 640, kH = 440, kL = 70, kR = 20, kT = 20, kB = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& [name, pts] : series)
    for (const auto& p : pts) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min({ymin, p.q25, p.median});
      ymax = std::max({ymax, p.q75, p.median});
    }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  auto px = [&](double x) { return kL + (x - xmin) / (xmax - xmin) * (kW - kL - kR); };
  auto py = [&](double y) { return kH - kB - (y - ymin) / (ymax - ymin) * (kH - kT - kB); };

  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
     << "\" height=\"" << kH << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR
     << "\" y2=\"" << kH - kB << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\""
     << kH - kB << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 12
     << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label << "</text>\n";
  os << "<text x=\"18\" y=\"" << (kT + kH - kB) / 2
     << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
     << (kT + kH - kB) / 2 << ")\">" << y_label << "</text>\n";
  os << "<text x=\"" << kL - 6 << "\" y=\"" << kH - kB + 4
     << "\" text-anchor=\"end\" font-size=\"11\">" << csv::format_double(ymin)
     << "</text>\n";
  os << "<text x=\"" << kL - 6 << "\" y=\"" << kT + 4
     << "\" text-anchor=\"end\" font-size=\"11\">" << csv::format_double(ymax)
     << "</text>\n";
  os << "<text x=\"" << kL << "\" y=\"" << kH - kB + 16
     << "\" text-anchor=\"middle\" font-size=\"11\">" << csv::format_double(xmin)
     << "</text>\n";
  os << "<text x=\"" << kW - kR << "\" y=\"" << kH - kB + 16
     << "\" text-anchor=\"middle\" font-size=\"11\">" << csv::format_double(xmax)
     << "</text>\n";

  int color = 0;
  double legend_y = kT + 14;
  for (const auto& [name, pts] : series) {
    const char* stroke = kColors[color % 8];
    os << "<polyline fill=\"none\" stroke=\"" << stroke
       << "\" stroke-width=\"2\" points=\"";
    for (const auto& p : pts) os << px(p.x) << ',' << py(p.median) << ' ';
    os << "\"/>\n";
    for (const auto& p : pts) {
      os << "<line x1=\"" << px(p.x) << "\" y1=\"" << py(p.q25) << "\" x2=\""
         << px(p.x) << "\" y2=\"" << py(p.q75) << "\" stroke=\"" << stroke
         << "\" stroke-width=\"1\"/>\n";
    }
    os << "<text x=\"" << kW - kR - 6 << "\" y=\"" << legend_y
       << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << stroke << "\">"
       << name << "</text>\n";
    legend_y += 16;
    ++color;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::vector<fs::path> emit_plot_data(const SweepResult& result,
                                     const std::vector<ConfigKey>& configs,
                                     FigureRecipe recipe, const fs::path& out_dir,
                                     bool svg) {
  fs::create_directories(out_dir);
  std::map<std::uint64_t, ConfigKey> by_hash;
  for (const auto& key : configs) by_hash[key.hash] = key;

  const bool x_is_k =
      recipe == FigureRecipe::kFig2 || recipe == FigureRecipe::kFig3;
  const bool y_is_transfer = recipe == FigureRecipe::kFig5;
  const std::string prefix = recipe_name(recipe);

  // series -> x -> observations
  std::map<std::string, std::map<double, std::vector<double>>> grouped;
  for (const auto& row : result.rows) {
    const auto key = by_hash.find(row.config_hash);
    if (key == by_hash.end())
      throw ConfigError("plot: row references unknown config hash " +
                        hash_hex(row.config_hash));
    const std::optional<double>& y =
        y_is_transfer ? row.transfer_error : row.sin_theta_error;
    if (!y) continue;  // failed rows and series without this metric
    const double x = static_cast<double>(x_is_k ? key->second.k : key->second.M);
    grouped[row.estimator][x].push_back(*y);
  }

  std::vector<fs::path> written;
  if (grouped.empty()) {
    const fs::path path = out_dir / (prefix + ".csv");
    std::ofstream os(path);
    if (!os) throw ConfigError("plot: cannot open " + path.string());
    os << kSeriesHeader;
    written.push_back(path);
    return written;
  }

  std::map<std::string, std::vector<SeriesPoint>> series;
  for (const auto& [estimator, by_x] : grouped) {
    std::vector<SeriesPoint>& pts = series[estimator];
    for (const auto& [x, values] : by_x) {
      SeriesPoint p;
      p.x = x;
      p.median = quantile(values, 0.5);
      p.q25 = quantile(values, 0.25);
      p.q75 = quantile(values, 0.75);
      p.mean = std::accumulate(values.begin(), values.end(), 0.0) /
               static_cast<double>(values.size());
      pts.push_back(p);
    }
    const fs::path path = out_dir / (prefix + "_" + sanitize(estimator) + ".csv");
    std::ofstream os(path);
    if (!os) throw ConfigError("plot: cannot open " + path.string());
    os << kSeriesHeader;
    for (const auto& p : pts)
      os << csv::format_double(p.x) << ',' << csv::format_double(p.median) << ','
         << csv::format_double(p.q25) << ',' << csv::format_double(p.q75) << ','
         << csv::format_double(p.mean) << '\n';
    written.push_back(path);
  }

  if (svg) {
    const fs::path path = out_dir / (prefix + ".svg");
    std::ofstream os(path);
    if (!os) throw ConfigError("plot: cannot open " + path.string());
    os << svg_chart(series, x_is_k ? "k" : "M",
                    y_is_transfer ? "theta error" : "sin-theta error");
    written.push_back(path);
  }
  return written;
}

}  // namespace sharedrep
