#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

#include "lieab/cache.hpp"
#include "lieab/report.hpp"
#include "lieab/verify.hpp"

using namespace lieab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lieab-tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args, const std::string& env = "") {
  const fs::path out = scratch("cli.out");
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(LIEAB_CLI) + " " + args + " > " +
                          out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

std::vector<VerificationReport> g2_reports(const VerifyOptions& options = {}) {
  const std::vector<std::string> sources{"G2"};
  return run_table(sources, options);
}

std::size_t count_lines(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) ++n;
  return n;
}

}  // namespace

TEST_CASE("G2 rows are equal") {
  const auto reports = g2_reports();
  REQUIRE(reports.size() == 2);
  for (const auto& r : reports) {
    CHECK(r.verdict());
    CHECK_FALSE(r.has_skips());
    REQUIRE(r.rows.size() == 2);
    std::multiset<BigInt> dims;
    for (const auto& row : r.rows) {
      CHECK(row.status == RowStatus::Equal);
      REQUIRE(row.demazure_dim.has_value());
      CHECK(*row.demazure_dim == row.weyl_dim);
      dims.insert(row.weyl_dim);
    }
    CHECK(dims == std::multiset<BigInt>{7, 14});
  }
  CHECK(run_table({}, VerifyOptions{}).empty());
}

TEST_CASE("max_dim zero skips every row but keeps the checks") {
  VerifyOptions options;
  options.max_dim = 0;
  for (const auto& r : g2_reports(options)) {
    CHECK(r.checks.all());
    CHECK(r.has_skips());
    CHECK(r.verdict());
    for (const auto& row : r.rows) {
      CHECK(row.status == RowStatus::Skipped);
      CHECK_FALSE(row.demazure_dim.has_value());
      CHECK(row.weyl_dim > 0);
    }
  }
}

TEST_CASE("row failures and mismatches are isolated") {
  auto spec = enumerate_embeddings("G2").front();
  VerifyOptions options;

  EmbeddingSpec broken = spec;
  broken.w_iota.letters.push_back(broken.w_iota.letters.back());  // no longer reduced
  const auto failed = verify_embedding(broken, options);
  for (const auto& row : failed.rows) {
    CHECK(row.status == RowStatus::Failed);
    CHECK(row.error == "RejectedWord");
  }
  CHECK_FALSE(failed.verdict());

  EmbeddingSpec shorter = spec;
  shorter.w_iota.letters.erase(shorter.w_iota.letters.begin());
  const auto report = verify_embedding(shorter, options);
  CHECK(std::any_of(report.rows.begin(), report.rows.end(),
                    [](const ReportRow& r) { return r.status == RowStatus::Mismatch; }));
  CHECK_FALSE(report.verdict());
}

TEST_CASE("JSON report carries the normative keys") {
  const auto reports = g2_reports();
  EmitOptions opts;
  opts.timestamp = "2026-01-01T00:00:00Z";
  const auto doc = nlohmann::json::parse(render_json(reports, opts));
  CHECK(doc.at("version") == kReportVersion);
  CHECK(doc.at("generated_at") == "2026-01-01T00:00:00Z");
  REQUIRE(doc.at("reports").size() == 2);
  for (const auto& r : doc.at("reports")) {
    for (const char* key : {"version", "source", "target", "node_map", "stretched_edge", "w_word", "checks", "rows"})
      CHECK(r.contains(key));
    CHECK(r.at("node_map").is_array());
    CHECK(r.at("stretched_edge").size() == 2);
    CHECK(r.at("w_word").size() == 6);
    for (const char* key : {"additive_closure", "root_lengths", "biconvex", "psi_compat", "brackets"})
      CHECK(r.at("checks").at(key) == true);
    for (const auto& row : r.at("rows")) {
      CHECK(row.at("node").is_number_integer());
      CHECK(row.at("weyl_dim").is_string());
      CHECK(row.at("demazure_dim").is_string());
      CHECK(row.at("status") == "EQUAL");
      CHECK(row.at("elapsed_ms").is_number_integer());
    }
  }

  VerifyOptions skip;
  skip.max_dim = 0;
  const auto skipped = nlohmann::json::parse(render_json(g2_reports(skip)));
  for (const auto& r : skipped.at("reports"))
    for (const auto& row : r.at("rows")) {
      CHECK(row.at("demazure_dim").is_null());
      CHECK(row.at("status") == "SKIPPED");
    }
}

TEST_CASE("CSV and Markdown shapes") {
  const std::vector<std::string> sources{"G2", "F4"};
  const auto reports = run_table(sources, VerifyOptions{});
  std::size_t rows = 0;
  for (const auto& r : reports) rows += r.rows.size();
  CHECK(rows == 2 * 2 + 4 * 4);

  const std::string csv = render_csv(reports);
  CHECK(count_lines(csv, "") == rows + 1);
  CHECK(count_lines(csv, "source,") == 1);

  const std::string md = render_markdown(reports);
  CHECK(count_lines(md, "## ") == reports.size());
  CHECK(count_lines(md, "| node ") == reports.size());
  std::size_t body = 0;
  for (int i = 1; i <= 4; ++i) body += count_lines(md, "| " + std::to_string(i) + " |");
  CHECK(body == rows);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  const std::vector<std::string> sources{"G2", "F4", "E6"};
  VerifyOptions one;
  VerifyOptions many;
  many.jobs = 4;
  EmitOptions stable;
  stable.timings = false;
  const auto a = run_table(sources, one);
  const auto b = run_table(sources, many);
  for (auto format : {ReportFormat::Json, ReportFormat::Csv, ReportFormat::Markdown})
    CHECK(render(a, format, stable) == render(b, format, stable));
  CHECK(render_json(a, stable).find("generated_at") == std::string::npos);

  // source order and duplicates do not matter
  const std::vector<std::string> shuffled{"E6", "G2", "F4", "G2"};
  CHECK(render_json(run_table(shuffled, many), stable) == render_json(a, stable));
}

TEST_CASE("emit_report writes files and reports I/O errors") {
  const auto reports = g2_reports();
  const fs::path p = scratch("report.md");
  emit_report(reports, ReportFormat::Markdown, p, {});
  CHECK(slurp(p) == render_markdown(reports));
  try {
    emit_report(reports, ReportFormat::Json, "/nonexistent-dir/for/sure/report.json", {});
    FAIL("unwritable path accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IoError);
  }
  CHECK(parse_format("csv") == ReportFormat::Csv);
  CHECK_THROWS_AS((void)parse_format("xml"), Error);
}

TEST_CASE("dimension cache") {
  const fs::path p = scratch("dims.cache");
  const std::vector<int> word{2, 1, 2, 1, 2, 0};
  const std::vector<int> other{0, 2, 1, 2, 1, 2};
  const std::vector<int> weight{0, 1, 0};

  SUBCASE("cold cache misses") {
    DimensionCache cache(p);
    CHECK(cache.size() == 0);
    CHECK_FALSE(cache.lookup("G2~1", word, weight).has_value());
    CHECK(cache.misses() == 1);
    CHECK(cache.warnings().empty());
  }

  SUBCASE("round trip") {
    {
      DimensionCache cache(p);
      cache.store("G2~1", word, weight, {BigInt("6899079264"), 12});
      cache.save();
    }
    DimensionCache reloaded(p);
    CHECK(reloaded.warnings().empty());
    const auto hit = reloaded.lookup("G2~1", word, weight);
    REQUIRE(hit.has_value());
    CHECK(hit->dimension == BigInt("6899079264"));
    CHECK(hit->weight_count == 12);
    CHECK_FALSE(reloaded.lookup("G2~1", other, weight).has_value());
    CHECK_FALSE(reloaded.lookup("D4~3", word, weight).has_value());
    CHECK_FALSE(reloaded.lookup("G2~1", word, std::vector<int>{1, 0, 0}).has_value());
    CHECK(reloaded.hits() == 1);
  }

  SUBCASE("hash collision with a different word is a miss") {
    {
      std::ofstream out(p);
      out << DimensionCache::format_line("G2~1", DimensionCache::word_hash(word), other, weight, {7, 7}) << '\n';
    }
    DimensionCache cache(p);
    CHECK(cache.warnings().empty());
    CHECK(cache.size() == 1);
    CHECK_FALSE(cache.lookup("G2~1", word, weight).has_value());
  }

  SUBCASE("corrupt entries are ignored with a warning") {
    const std::string good = DimensionCache::format_line("G2~1", DimensionCache::word_hash(word), word, weight, {7, 7});
    std::string tampered = good;
    tampered[tampered.find("\t7\t") + 1] = '8';
    {
      std::ofstream out(p);
      out << good << '\n' << tampered << '\n' << "garbage line\n" << good.substr(0, good.size() / 2) << '\n';
    }
    DimensionCache cache(p);
    CHECK(cache.warnings().size() == 3);
    CHECK(cache.size() == 1);
    const auto hit = cache.lookup("G2~1", word, weight);
    REQUIRE(hit.has_value());
    CHECK(hit->dimension == 7);
  }

  SUBCASE("verification reuses cached dimensions") {
    DimensionCache cache(p);
    VerifyOptions options;
    options.cache = &cache;
    const auto first = g2_reports(options);
    CHECK(cache.size() == 4);
    CHECK(cache.hits() == 0);
    const auto second = g2_reports(options);
    CHECK(cache.hits() == 4);
    EmitOptions stable;
    stable.timings = false;
    CHECK(render_json(first, stable) == render_json(second, stable));
    for (const auto& r : second)
      for (const auto& row : r.rows) CHECK(row.from_cache);
  }
}

TEST_CASE("command line exit codes") {
  CHECK(cli("verify --source G2 --no-timings").code == 0);
  CHECK(cli("verify --source G2 --max-dim 10").code == 0);
  CHECK(cli("verify --source G2 --max-dim 10 --strict").code == 1);
  CHECK(cli("verify --source G2 --max-dim 10 --no-allow-skips").code == 1);
  CHECK(cli("verify --source G2", "LIEAB_MAX_DIM=10 LIEAB_STRICT=1").code == 1);
  CHECK(cli("verify --source A3").code == 2);
  CHECK(cli("verify --source G2 --format xml").code == 2);
  CHECK(cli("verify --source G2 --jobs 0").code == 2);
  CHECK(cli("verify --source G2 --max-dim lots").code == 2);
  CHECK(cli("verify --source G2 --max-dim 1e").code == 2);
  CHECK(cli("verify --source G2 --max-dim 1e1 --strict").code == 1);
  CHECK(cli("verify --source G2 --max-dim 1e2 --strict").code == 0);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("roots --type Q7").code == 2);
  CHECK(cli("demazure --type G2 --weight 0,1 --word 1,1").code == 2);
  CHECK(cli("verify --source G2 --out /nonexistent-dir/for/sure/r.json").code != 0);
}

TEST_CASE("command line output") {
  const auto a = cli("verify --source G2,F4 --jobs 3 --no-timings --format json");
  const auto b = cli("verify --source F4,G2 --jobs 1 --no-timings --format json");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc.at("reports").size() == 6);

  const auto csv = cli("verify --source G2 --format csv");
  CHECK(count_lines(csv.out, "G2,") == 4);

  const fs::path out = scratch("cli-report.md");
  CHECK(cli("verify --source G2 --format md --out " + out.string()).code == 0);
  CHECK(count_lines(slurp(out), "| ") == 2 * (1 + 2));

  const auto roots = cli("roots --type G2");
  CHECK(roots.code == 0);
  CHECK(count_lines(roots.out, "") == 4 + 6);
  const auto affine = cli("roots --type G2~1 --max-height 6");
  CHECK(affine.out.find("truncated") != std::string::npos);
  CHECK(affine.out.find("imaginary") != std::string::npos);

  const auto dem = cli("demazure --type G2 --weight 0,1 --word 1,2,1,2,1,2");
  CHECK(dem.code == 0);
  CHECK(dem.out.find("dimension 7\n") != std::string::npos);
  const auto affine_dem = cli("demazure --type G2~1 --weight 0,0,1 --word 1,2,1,2,1,2,0");
  CHECK(affine_dem.out.find("dimension 7\n") != std::string::npos);

  const fs::path cache = scratch("cli.cache");
  CHECK(cli("verify --source G2 --cache " + cache.string()).code == 0);
  CHECK(count_lines(slurp(cache), "lieab-dim-v1\t") == 4);
  CHECK(cli("verify --source G2 --cache " + cache.string()).code == 0);
}
