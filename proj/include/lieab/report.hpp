#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "lieab/verify.hpp"

namespace lieab {

enum class ReportFormat { Json, Csv, Markdown };

ReportFormat parse_format(std::string_view name);

inline constexpr int kReportVersion = 1;

struct EmitOptions {
  /// When false, elapsed_ms is written as 0 and no timestamp is emitted, so
  /// identical runs produce identical bytes.
  bool timings = true;
  std::string timestamp;
};

nlohmann::ordered_json to_json(const VerificationReport& report, const EmitOptions& options = {});

std::string render_json(std::span<const VerificationReport> reports, const EmitOptions& options = {});
std::string render_csv(std::span<const VerificationReport> reports, const EmitOptions& options = {});
std::string render_markdown(std::span<const VerificationReport> reports, const EmitOptions& options = {});
std::string render(std::span<const VerificationReport> reports, ReportFormat format, const EmitOptions& options = {});

/// Writes to `path`, or stdout when empty. Throws IoError.
void emit_report(std::span<const VerificationReport> reports, ReportFormat format, const std::filesystem::path& path,
                 const EmitOptions& options = {});

}  // namespace lieab
