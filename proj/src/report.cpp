#include "lieab/report.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace lieab {

namespace {

std::string join(const std::vector<int>& xs, char sep) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += sep;
    out += std::to_string(xs[k]);
  }
  return out;
}

std::int64_t elapsed(const ReportRow& row, const EmitOptions& options) {
  return options.timings ? static_cast<std::int64_t>(std::llround(row.elapsed_ms)) : 0;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

ReportFormat parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "md") return ReportFormat::Markdown;
  throw Error(ErrorKind::IoError, "unknown report format " + std::string(name));
}

nlohmann::ordered_json to_json(const VerificationReport& report, const EmitOptions& options) {
  nlohmann::ordered_json j;
  j["version"] = kReportVersion;
  j["source"] = report.source;
  j["target"] = report.target;
  j["node_map"] = report.node_map;
  j["stretched_edge"] = {report.stretched_edge.first, report.stretched_edge.second};
  j["w_word"] = report.w_word;
  j["checks"] = {{"additive_closure", report.checks.additive_closure},
                 {"root_lengths", report.checks.root_lengths},
                 {"biconvex", report.checks.biconvex},
                 {"psi_compat", report.checks.psi_compat},
                 {"brackets", report.checks.brackets}};
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["node"] = r.node;
    row["weyl_dim"] = r.weyl_dim.str();
    row["demazure_dim"] = r.demazure_dim ? nlohmann::ordered_json(r.demazure_dim->str()) : nlohmann::ordered_json();
    row["status"] = std::string(to_string(r.status));
    row["elapsed_ms"] = elapsed(r, options);
    if (!r.error.empty()) row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["diagnostics"] = {{"k_node", report.k_node},
                      {"closed_form_available", report.closed_form.available},
                      {"closed_form_matches", report.closed_form.matches},
                      {"closed_form_inverse_matches", report.closed_form.inverse_matches}};
  return j;
}

std::string render_json(std::span<const VerificationReport> reports, const EmitOptions& options) {
  nlohmann::ordered_json doc;
  doc["version"] = kReportVersion;
  if (options.timings && !options.timestamp.empty()) doc["generated_at"] = options.timestamp;
  auto list = nlohmann::ordered_json::array();
  for (const auto& r : reports) list.push_back(to_json(r, options));
  doc["reports"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::string render_csv(std::span<const VerificationReport> reports, const EmitOptions& options) {
  std::ostringstream os;
  os << "source,target,node_map,stretched_edge,node,weyl_dim,demazure_dim,status,elapsed_ms\n";
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      os << r.source << ',' << r.target << ',' << join(r.node_map, ';') << ',' << r.stretched_edge.first << ';'
         << r.stretched_edge.second << ',' << row.node << ',' << row.weyl_dim.str() << ','
         << (row.demazure_dim ? row.demazure_dim->str() : std::string()) << ',' << to_string(row.status) << ','
         << elapsed(row, options) << '\n';
    }
  }
  return os.str();
}

std::string render_markdown(std::span<const VerificationReport> reports, const EmitOptions& options) {
  std::ostringstream os;
  os << "# Demazure dimension verification\n";
  if (options.timings && !options.timestamp.empty()) os << "\nGenerated " << options.timestamp << "\n";
  for (const auto& r : reports) {
    os << "\n## " << r.source << " -> " << r.target << "\n\n";
    os << "- node map: " << join(r.node_map, ' ') << "\n";
    os << "- stretched edge: " << r.stretched_edge.first << "-" << r.stretched_edge.second << "\n";
    os << "- w word (length " << r.w_word.size() << "): " << join(r.w_word, ' ') << "\n";
    os << "- checks: closure " << yes_no(r.checks.additive_closure) << ", lengths " << yes_no(r.checks.root_lengths)
       << ", biconvex " << yes_no(r.checks.biconvex) << ", Psi " << yes_no(r.checks.psi_compat) << ", brackets "
       << yes_no(r.checks.brackets) << "\n\n";
    os << "| node | weyl_dim | demazure_dim | status | elapsed_ms |\n";
    os << "|---:|---:|---:|:---|---:|\n";
    for (const auto& row : r.rows) {
      os << "| " << row.node << " | " << row.weyl_dim.str() << " | "
         << (row.demazure_dim ? row.demazure_dim->str() : std::string("-")) << " | " << to_string(row.status)
         << (row.error.empty() ? "" : " (" + row.error + ")") << " | " << elapsed(row, options) << " |\n";
    }
  }
  return os.str();
}

std::string render(std::span<const VerificationReport> reports, ReportFormat format, const EmitOptions& options) {
  switch (format) {
    case ReportFormat::Json: return render_json(reports, options);
    case ReportFormat::Csv: return render_csv(reports, options);
    case ReportFormat::Markdown: return render_markdown(reports, options);
  }
  return {};
}

void emit_report(std::span<const VerificationReport> reports, ReportFormat format, const std::filesystem::path& path,
                 const EmitOptions& options) {
  const std::string text = render(reports, format, options);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

}  // namespace lieab
