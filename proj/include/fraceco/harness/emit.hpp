#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "fraceco/harness/run.hpp"
#include "fraceco/harness/scenario.hpp"
#include "fraceco/harness/svg.hpp"
#include "fraceco/serialize.hpp"

namespace fraceco {

namespace detail {

inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline const char* component_name(std::size_t c) {
  static const char* names[] = {"x", "y", "z"};
  return c < 3 ? names[c] : "?";
}

}  // namespace detail

/// Writes content to path, creating parent directories.
inline void write_text_file(const std::filesystem::path& path,
                            const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw std::runtime_error("cannot create directory '" +
                               path.parent_path().string() + "': " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

/// Header t,x,y[,z]; one row per grid point; %.17g decimals; LF endings.
inline std::string timeseries_csv(const Trajectory& traj) {
  std::string out = "t";
  for (std::size_t c = 0; c < traj.dim(); ++c) {
    out += ",";
    out += detail::component_name(c);
  }
  out += "\n";
  for (std::size_t i = 0; i < traj.rows(); ++i) {
    out += detail::g17(traj.grid().t(i));
    for (std::size_t c = 0; c < traj.dim(); ++c) {
      out += ",";
      out += detail::g17(traj(i, c));
    }
    out += "\n";
  }
  return out;
}

/// State-space samples without the time column.
inline std::string phase_csv(const Trajectory& traj) {
  std::string out;
  for (std::size_t c = 0; c < traj.dim(); ++c) {
    if (c) out += ",";
    out += detail::component_name(c);
  }
  out += "\n";
  for (std::size_t i = 0; i < traj.rows(); ++i) {
    for (std::size_t c = 0; c < traj.dim(); ++c) {
      if (c) out += ",";
      out += detail::g17(traj(i, c));
    }
    out += "\n";
  }
  return out;
}

inline std::string timeseries_svg(const Trajectory& traj,
                                  const std::string& title) {
  std::vector<double> t(traj.rows());
  for (std::size_t i = 0; i < traj.rows(); ++i) t[i] = traj.grid().t(i);
  std::vector<svg::Series> series;
  for (std::size_t c = 0; c < traj.dim(); ++c) {
    series.push_back({detail::component_name(c), t, traj.component(c), ""});
  }
  return svg::line_chart(series, {.title = title,
                                  .x_label = "t",
                                  .y_label = "density"});
}

inline std::string phase_svg(const Trajectory& traj, std::size_t cx,
                             std::size_t cy, const std::string& title,
                             const std::vector<std::vector<double>>& points) {
  svg::ChartSpec spec{.title = title,
                      .x_label = detail::component_name(cx),
                      .y_label = detail::component_name(cy)};
  for (const auto& p : points) spec.markers.emplace_back(p[cx], p[cy]);
  const std::string label =
      std::string(detail::component_name(cx)) + "-" + detail::component_name(cy);
  return svg::line_chart({{label, traj.component(cx), traj.component(cy), ""}},
                         spec);
}

inline Json reports_json(const std::vector<StabilityReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

inline std::string coords_string(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += detail::g6(v[i]);
  }
  return s + ")";
}

/// Checklist table: one row per condition, grouped by equilibrium.
inline std::string checklist_markdown(const std::vector<StabilityReport>& reports) {
  std::string out =
      "| Equilibrium | Point | Condition | Evaluated | Satisfied |\n"
      "|---|---|---|---|---|\n";
  for (const auto& r : reports) {
    const std::string label = to_string(r.equilibrium.label);
    const std::string point = coords_string(r.equilibrium.coords);
    for (const auto& c : r.conditions) {
      out += "| " + label + " | " + point + " | " + c.name + " | " +
             detail::g6(c.lhs) + " " + c.relation + " " + detail::g6(c.rhs) +
             " | " + (c.pass ? "✓" : "✗") + " |\n";
    }
    std::string verdict = std::string("Matignon verdict at alpha = ") +
                          detail::g6(r.alpha) + ": " + to_string(r.verdict) +
                          " (margin " + detail::g6(r.matignon_margin) + " rad";
    if (r.critical_alpha) verdict += ", critical order " + detail::g6(*r.critical_alpha);
    verdict += ")";
    out += "| " + label + " | " + point + " | " + verdict + " | | " +
           (r.verdict == Verdict::stable ? "✓" : "✗") + " |\n";
  }
  bool any_notes = false;
  for (const auto& r : reports) {
    for (const auto& n : r.notes) {
      if (!any_notes) out += "\nNotes:\n\n";
      any_notes = true;
      out += "- " + std::string(to_string(r.equilibrium.label)) + ": " + n + "\n";
    }
  }
  return out;
}

inline std::string checklist_csv(const std::vector<StabilityReport>& reports) {
  std::string out = "equilibrium,condition,lhs,relation,rhs,pass\n";
  for (const auto& r : reports) {
    for (const auto& c : r.conditions) {
      out += std::string(to_string(r.equilibrium.label)) + ",\"" + c.name +
             "\"," + detail::g17(c.lhs) + "," + c.relation + "," +
             detail::g17(c.rhs) + "," + (c.pass ? "1" : "0") + "\n";
    }
  }
  return out;
}

inline std::string sweep_csv(const std::string& axis,
                             const std::vector<SweepRow>& rows) {
  std::string out = axis + ",settling_time,extinction_flag";
  const std::size_t d = rows.empty() ? 0 : rows.front().metrics.late_amplitude.size();
  for (std::size_t c = 0; c < d; ++c) {
    out += ",late_amplitude_";
    out += detail::component_name(c);
  }
  for (std::size_t c = 0; c < d; ++c) {
    out += ",min_";
    out += detail::component_name(c);
  }
  out += "\n";
  for (const auto& row : rows) {
    out += detail::g17(row.value) + ",";
    out += row.metrics.settling_time ? detail::g17(*row.metrics.settling_time) : "none";
    out += row.metrics.extinction_flag ? ",1" : ",0";
    for (double a : row.metrics.late_amplitude) out += "," + detail::g17(a);
    for (double a : row.metrics.min_value) out += "," + detail::g17(a);
    out += "\n";
  }
  return out;
}

/// Writes the artifacts requested by cfg.outputs into dir and returns the
/// written paths.
inline std::vector<std::filesystem::path> emit(const std::filesystem::path& dir,
                                               const ScenarioConfig& cfg,
                                               const RunResult& result) {
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& name, const std::string& content) {
    const auto path = dir / name;
    write_text_file(path, content);
    written.push_back(path);
  };
  const Trajectory& traj = result.trajectory;
  std::vector<std::vector<double>> feasible;
  for (const auto& e : result.equilibria) {
    if (e.feasible) feasible.push_back(e.coords);
  }
  const std::string title = cfg.name + " (alpha = " + detail::g6(cfg.alpha.value()) + ")";

  if (cfg.outputs.timeseries) {
    put("timeseries.csv", timeseries_csv(traj));
    put("timeseries.svg", timeseries_svg(traj, title));
  }
  if (cfg.outputs.phase_portrait) {
    put("phase.csv", phase_csv(traj));
    if (traj.dim() == 2) {
      put("phase_xy.svg", phase_svg(traj, 0, 1, title, feasible));
    } else {
      put("phase_xy.svg", phase_svg(traj, 0, 1, title, feasible));
      put("phase_xz.svg", phase_svg(traj, 0, 2, title, feasible));
      put("phase_yz.svg", phase_svg(traj, 1, 2, title, feasible));
    }
  }
  if (cfg.outputs.stability_report) {
    put("stability.json", reports_json(result.reports).dump(2) + "\n");
    put("stability.md", checklist_markdown(result.reports));
    put("stability.csv", checklist_csv(result.reports));
  }
  if (cfg.outputs.metrics) {
    Json m = to_json(result.metrics);
    m["scenario"] = to_json(cfg);
    put("metrics.json", m.dump(2) + "\n");
  }
  return written;
}

}  // namespace fraceco
