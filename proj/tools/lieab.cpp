// lieab: verification driver for stretch embeddings of exceptional diagrams.
//
//   lieab verify   [--source G2,F4,E6,E7,E8] [--max-dim N] [--jobs N] [--format json|csv|md]
//                  [--out PATH] [--strict] [--cache PATH] [--height-cutoff H] [--no-timings]
//   lieab roots    --type LABEL --max-height H
//   lieab demazure --type LABEL --weight v0,v1,... --word i1,i2,...
//   lieab embeddings --source LABEL
//
// Every flag can also be set through an LIEAB_* environment variable.
// Exit codes: 0 all rows equal and all checks pass, 1 mismatch or failed check
// (or a skip under --strict), 2 invalid invocation, 3 I/O or internal error.

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "lieab/cache.hpp"
#include "lieab/charcalc.hpp"
#include "lieab/report.hpp"
#include "lieab/stretchmap.hpp"
#include "lieab/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitError = 3;

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("not an integer: " + item);
    out.push_back(v);
  }
  return out;
}

// Integer with an optional decimal exponent, e.g. 10000000 or 1e7.
lieab::BigInt parse_dimension(const std::string& text) {
  const auto e = text.find_first_of("eE");
  lieab::BigInt value(text.substr(0, e));
  if (e == std::string::npos) return value;
  const std::string exp = text.substr(e + 1);
  if (exp.empty() || exp.find_first_not_of("0123456789") != std::string::npos || exp.size() > 3)
    throw std::invalid_argument("bad exponent");
  for (int k = std::stoi(exp); k > 0; --k) value *= 10;
  return value;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

bool is_usage_error(lieab::ErrorKind kind) {
  using lieab::ErrorKind;
  return kind == ErrorKind::UnsupportedType || kind == ErrorKind::InvalidNode || kind == ErrorKind::NotDominant ||
         kind == ErrorKind::RejectedWord;
}

struct VerifyArgs {
  std::vector<std::string> sources{"G2", "F4", "E6", "E7", "E8"};
  std::string max_dim = "10000000";
  int jobs = 1;
  std::string format = "json";
  std::string out;
  bool strict = false;
  bool allow_skips = true;
  std::string cache;
  int height_cutoff = 0;
  bool no_timings = false;
};

int run_verify(const VerifyArgs& args) {
  lieab::VerifyOptions options;
  try {
    options.max_dim = parse_dimension(args.max_dim);
  } catch (const std::exception&) {
    std::cerr << "invalid --max-dim " << args.max_dim << "\n";
    return kExitUsage;
  }
  if (options.max_dim < 0) {
    std::cerr << "--max-dim must be nonnegative\n";
    return kExitUsage;
  }
  const auto format = lieab::parse_format(args.format);
  options.jobs = std::max(1, args.jobs);
  if (args.height_cutoff > 0) options.height_cutoff = args.height_cutoff;
  for (const auto& s : args.sources) {
    if (!lieab::is_exceptional(s)) {
      std::cerr << "unsupported source " << s << " (expected G2, F4, E6, E7 or E8)\n";
      return kExitUsage;
    }
  }

  std::optional<lieab::DimensionCache> cache;
  if (!args.cache.empty()) {
    cache.emplace(args.cache);
    for (const auto& w : cache->warnings()) std::cerr << "warning: " << w << "\n";
    options.cache = &*cache;
  }

  const auto reports = lieab::run_table(args.sources, options);
  lieab::EmitOptions emit;
  emit.timings = !args.no_timings;
  if (emit.timings) emit.timestamp = utc_now();
  lieab::emit_report(reports, format, args.out, emit);
  if (cache) cache->save();

  bool ok = true;
  bool skipped = false;
  for (const auto& r : reports) {
    ok = ok && r.verdict();
    skipped = skipped || r.has_skips();
    for (const auto& row : r.rows) {
      if (row.status == lieab::RowStatus::Mismatch || row.status == lieab::RowStatus::Failed)
        std::cerr << r.source << " -> " << r.target << " node " << row.node << ": " << lieab::to_string(row.status)
                  << (row.error.empty() ? "" : " " + row.error) << "\n";
    }
  }
  if (!ok) return kExitFailed;
  if (skipped && (args.strict || !args.allow_skips)) return kExitFailed;
  return kExitOk;
}

int run_roots(const std::string& type, int max_height) {
  const auto gcm = lieab::catalog(type);
  const lieab::RootSet roots = max_height > 0 ? lieab::RootSet(gcm, max_height) : lieab::RootSet(gcm);
  std::cout << "# " << gcm.label() << " " << (gcm.is_finite() ? "finite" : "affine") << " cutoff "
            << roots.height_cutoff() << (roots.truncated() ? " truncated" : " complete") << "\n";
  std::cout << "# nodes";
  for (int l : gcm.node_labels()) std::cout << ' ' << l;
  std::cout << "\n# symmetrizer";
  for (int d : gcm.symmetrizer()) std::cout << ' ' << d;
  if (gcm.is_affine()) {
    std::cout << "\n# marks";
    for (int a : lieab::null_root_marks(gcm)) std::cout << ' ' << a;
  }
  std::cout << "\nheight\tnorm\tkind\tcoeffs\n";
  for (std::size_t k = 0; k < roots.size(); ++k) {
    std::cout << lieab::height(roots[k]) << '\t' << lieab::norm(gcm, roots[k]) << '\t'
              << (roots.is_real(k) ? "real" : "imaginary") << '\t';
    for (int i = 0; i < gcm.rank(); ++i) std::cout << (i ? " " : "") << roots[k](i);
    std::cout << '\n';
  }
  return kExitOk;
}

int run_demazure(const std::string& type, const std::string& weight_text, const std::string& word_text) {
  const auto gcm = lieab::catalog(type);
  const auto weight = parse_ints(weight_text);
  lieab::Weight coeffs(static_cast<int>(weight.size()));
  for (std::size_t k = 0; k < weight.size(); ++k) coeffs(static_cast<int>(k)) = weight[k];
  const lieab::DominantWeight anchor(gcm, coeffs);
  lieab::WeylWord w;
  for (int label : parse_ints(word_text)) w.letters.push_back(gcm.node_index(label));
  const auto r = lieab::demazure_result(gcm, anchor, w);
  std::cout << "dimension " << r.dimension.str() << "\nweights " << r.weight_count << "\nlength "
            << r.word_length << "\n";
  return kExitOk;
}

int run_embeddings(const std::string& source) {
  const auto result = lieab::search_embeddings(source);
  for (const auto& spec : result.verified) {
    const auto report = lieab::describe_embedding(spec);
    const auto degrees = lieab::degree_diagnostic(spec);
    std::cout << "VERIFIED " << report.source << " -> " << report.target << " map";
    for (int l : report.node_map) std::cout << ' ' << l;
    std::cout << " edge " << report.stretched_edge.first << '-' << report.stretched_edge.second << " k "
              << report.k_node << " |w| " << report.w_word.size() << " killed " << degrees.killed << "/"
              << degrees.kept + degrees.killed << " closed-form "
              << (spec.closed_form.available ? (spec.closed_form.matches           ? "matches"
                                                : spec.closed_form.inverse_matches ? "inverse-matches"
                                                                                   : "differs")
                                             : "n/a")
              << " psi-height-filtration " << (degrees.variant_separates ? "separates" : "mixed") << "\n";
  }
  for (const auto& rej : result.rejected) {
    std::cout << "rejected " << source << " -> " << rej.target << " map";
    for (int t : rej.candidate.node_map) std::cout << ' ' << lieab::catalog(rej.target).node_label(t);
    std::cout << ": " << rej.reason << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stretch embeddings of exceptional Dynkin diagrams and Demazure dimension checks"};
  app.require_subcommand(1);

  VerifyArgs vargs;
  auto* verify = app.add_subcommand("verify", "Enumerate embeddings and compare Demazure and Weyl dimensions");
  verify->add_option("--source", vargs.sources, "Source types")->delimiter(',')->envname("LIEAB_SOURCE");
  verify->add_option("--max-dim", vargs.max_dim, "Skip weights whose Weyl dimension exceeds N")
      ->envname("LIEAB_MAX_DIM");
  verify->add_option("--jobs", vargs.jobs, "Parallel rows")->check(CLI::PositiveNumber)->envname("LIEAB_JOBS");
  verify->add_option("--format", vargs.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "md"}))
      ->envname("LIEAB_FORMAT");
  verify->add_option("--out", vargs.out, "Report path (stdout if omitted)")->envname("LIEAB_OUT");
  verify->add_flag("--strict", vargs.strict, "Treat SKIPPED rows as failures")->envname("LIEAB_STRICT");
  verify->add_flag("--allow-skips,!--no-allow-skips", vargs.allow_skips, "SKIPPED rows do not fail the run")
      ->envname("LIEAB_ALLOW_SKIPS");
  verify->add_option("--cache", vargs.cache, "Dimension cache file")->envname("LIEAB_CACHE");
  verify->add_option("--height-cutoff", vargs.height_cutoff, "Root height cutoff for affine targets")
      ->check(CLI::PositiveNumber)
      ->envname("LIEAB_HEIGHT_CUTOFF");
  verify->add_flag("--no-timings", vargs.no_timings, "Omit timestamp and elapsed times")->envname("LIEAB_NO_TIMINGS");

  std::string roots_type;
  int roots_height = 0;
  auto* roots = app.add_subcommand("roots", "Dump the positive roots of a catalog diagram");
  roots->add_option("--type", roots_type, "Diagram label, e.g. E8~1")->required()->envname("LIEAB_TYPE");
  roots->add_option("--max-height", roots_height, "Height cutoff (default: complete or affine default)")
      ->check(CLI::PositiveNumber)
      ->envname("LIEAB_MAX_HEIGHT");

  std::string dem_type, dem_weight, dem_word;
  auto* demazure = app.add_subcommand("demazure", "Dimension of a single Demazure module");
  demazure->add_option("--type", dem_type, "Diagram label")->required()->envname("LIEAB_TYPE");
  demazure->add_option("--weight", dem_weight, "Dominant weight, comma separated in node order")
      ->required()
      ->envname("LIEAB_WEIGHT");
  demazure->add_option("--word", dem_word, "Reduced word as node labels, leftmost first")
      ->required()
      ->envname("LIEAB_WORD");

  std::string emb_source;
  auto* embeddings = app.add_subcommand("embeddings", "List verified and rejected stretch embeddings");
  embeddings->add_option("--source", emb_source, "Exceptional source type")->required()->envname("LIEAB_SOURCE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) return run_verify(vargs);
    if (*roots) return run_roots(roots_type, roots_height);
    if (*demazure) return run_demazure(dem_type, dem_weight, dem_word);
    if (*embeddings) return run_embeddings(emb_source);
  } catch (const lieab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_usage_error(e.kind()) ? kExitUsage : kExitError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
