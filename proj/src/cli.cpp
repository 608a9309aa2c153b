#include "momenta/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "momenta/campaign.hpp"
#include "momenta/eigenbounds.hpp"
#include "momenta/matrix_io.hpp"
#include "momenta/moments.hpp"

namespace momenta::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string input;
  bool random = false;
  double tolerance = kDefaultPsdTolerance;
  int r_max = 3;
  std::string map = "trace";
  std::uint64_t seed = 0;
  int instances = 200;
  std::string n_range = "2:6";
  std::string out_path;
  int k_min = 0;
  std::optional<int> k_max;
  bool verbose = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::pair<Eigen::Index, Eigen::Index> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--n-range expects lo:hi, got '" + text + "'");
  try {
    const auto lo = std::stol(text.substr(0, colon));
    const auto hi = std::stol(text.substr(colon + 1));
    if (lo < 1 || hi < lo) throw UsageError("--n-range needs 1 <= lo <= hi, got '" + text + "'");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--n-range expects integers lo:hi, got '" + text + "'");
  }
}

// Fixed-point text for stdout; tiny values relative to `scale` print as 0.
std::string fixed(double x, double scale = 1.0, int digits = 10) {
  if (std::abs(x) <= 1e-12 * std::max(1.0, std::abs(scale))) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string general(double x, double scale = 1.0) {
  if (std::isnan(x)) return "n/a";
  if (std::abs(x) <= 1e-12 * std::max(1.0, std::abs(scale))) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string entry_text(const Complex& z, double scale) {
  const double im = std::abs(z.imag()) <= 1e-12 * std::max(1.0, scale) ? 0.0 : z.imag();
  if (im == 0.0) return general(z.real(), scale);
  return "(" + general(z.real(), scale) + "," + general(im, scale) + ")";
}

void print_matrix(std::ostream& out, const ComplexMatrix& m, const std::string& indent) {
  const double scale = m.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << indent;
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << entry_text(m(i, j), scale);
    out << "\n";
  }
}

ordered_json config_json(const std::string& command, const Options& o) {
  ordered_json c;
  c["command"] = command;
  c["input"] = o.random ? ordered_json(nullptr) : ordered_json(o.input);
  c["random"] = o.random;
  c["tolerance"] = o.tolerance;
  c["r_max"] = o.r_max;
  c["map"] = o.map;
  c["seed"] = o.seed;
  if (o.random) {
    c["instances"] = o.instances;
    c["n_range"] = o.n_range;
  }
  c["k_min"] = o.k_min;
  return c;
}

void write_report(const Options& o, const ordered_json& report) {
  if (o.out_path.empty()) return;
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw IoError("cannot write " + o.out_path);
  file << report.dump(2) << "\n";
  if (!file) throw IoError("failed writing " + o.out_path);
}

LoadedMatrix load(const Options& o) {
  if (o.input.empty()) throw UsageError("an input matrix file is required");
  return parse_matrix(o.input);
}

void validate_common(const Options& o) {
  if (!(o.tolerance > 0)) throw UsageError("--tol must be positive");
  if (o.r_max < 0) throw UsageError("--r-max must be non-negative");
  if (o.k_min != 0 && o.k_min != -1) throw UsageError("--k-min must be -1 or 0");
}

int cmd_bounds(const Options& o, std::ostream& out) {
  validate_common(o);
  const auto loaded = load(o);
  if (!loaded.hermitian) throw DomainError("bounds: input matrix is not Hermitian");
  const ComplexMatrix& a = loaded.matrix;
  const auto spec = parse_map_spec(o.map);
  const auto map = make_map(spec, a.rows(), o.seed);
  if (!map.is_functional()) throw UsageError("bounds: --map must be a functional (trace or vector-state)");

  const auto report = spectral_bounds(map, a);
  const auto& cm = report.moments;
  const double scale = std::max({1.0, std::abs(cm.mean), std::sqrt(std::abs(cm.b2))});
  out << "input: " << o.input << " (" << a.rows() << "x" << a.cols() << ")\n";
  out << "functional: " << spec.text << "\n";
  out << "mean phi(A): " << general(cm.mean, scale) << "\n";
  out << "central moments b2..b5: " << general(cm.b2, scale * scale) << " " << general(cm.b3, std::pow(scale, 3))
      << " " << general(cm.b4, std::pow(scale, 4)) << " " << general(cm.b5, std::pow(scale, 5)) << "\n";
  out << "gamma: " << general(report.cubic.gamma, std::pow(scale, 6)) << "\n";

  std::vector<CheckRecord> records;
  if (report.degenerate) {
    out << "degenerate: gamma vanishes (at most two spectral atoms); the cubic gives no bound\n";
  } else {
    const auto& c = report.cubic;
    out << "cubic: x^3 + (" << general(c.c2, scale) << ")x^2 + (" << general(c.c1, scale * scale) << ")x + ("
        << general(c.c0, std::pow(scale, 3)) << ")\n";
    out << "roots:";
    for (double r : report.roots) out << " " << fixed(r, scale);
    out << (report.complex_pair ? " (complex pair omitted)" : "") << "\n";
    out << "lambda_min <= " << fixed(*report.lambda_min_upper, scale) << "\n";
    out << "lambda_max >= " << fixed(*report.lambda_max_lower, scale) << "\n";

    const auto spectrum = hermitian_eig(a);
    const double margin =
        std::min(*report.lambda_min_upper - spectrum.min(), spectrum.max() - *report.lambda_max_lower);
    records.push_back({"eigen_bounds/validity",
                       "lambda_min <= phi(A) + smallest root, lambda_max >= phi(A) + largest root",
                       margin >= -1e-8, margin, o.seed, {}});
  }
  out << "wolkowicz-styan: lambda_min <= " << fixed(report.ws.min_upper, scale)
      << ", lambda_max >= " << fixed(report.ws.max_lower, scale) << "\n";

  ordered_json doc = report_json(config_json("bounds", o), records);
  ordered_json bounds;
  bounds["mean"] = cm.mean;
  bounds["central_moments"] = {cm.b2, cm.b3, cm.b4, cm.b5};
  bounds["gamma"] = report.cubic.gamma;
  bounds["degenerate"] = report.degenerate;
  if (!report.degenerate) {
    bounds["cubic"] = {report.cubic.c2, report.cubic.c1, report.cubic.c0};
    bounds["roots"] = report.roots;
    bounds["lambda_min_upper"] = *report.lambda_min_upper;
    bounds["lambda_max_lower"] = *report.lambda_max_lower;
  }
  bounds["wolkowicz_styan"] = {{"min_upper", report.ws.min_upper}, {"max_lower", report.ws.max_lower}};
  doc["bounds"] = std::move(bounds);
  write_report(o, doc);
  return summarize(records).failed ? 1 : 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  validate_common(o);
  const CampaignOptions campaign{o.tolerance, o.r_max};
  const auto spec = parse_map_spec(o.map);
  std::vector<CheckRecord> records;
  std::size_t instance_count = 0;

  if (o.random) {
    if (!o.input.empty()) throw UsageError("verify: give either a matrix file or --random, not both");
    if (o.instances < 1) throw UsageError("--instances must be at least 1");
    const auto [lo, hi] = parse_range(o.n_range);
    InstanceSpec ispec;
    ispec.n_lo = lo;
    ispec.n_hi = hi;
    ispec.map_kind = spec.kind;
    ispec.codomain = spec.codomain;
    for (int i = 0; i < o.instances; ++i) {
      const auto inst = random_instance(o.seed + static_cast<std::uint64_t>(i), ispec);
      auto recs = verify_instance(inst.map, inst.a, inst.seed, campaign);
      records.insert(records.end(), recs.begin(), recs.end());
    }
    instance_count = static_cast<std::size_t>(o.instances);
  } else {
    const auto loaded = load(o);
    if (!spec.kind) throw UsageError("verify: --map all is only meaningful with --random");
    const auto map = make_map(spec, loaded.matrix.rows(), o.seed);
    records = verify_instance(map, loaded.matrix, o.seed, campaign);
    instance_count = 1;
  }
  sort_records(records);

  for (const auto& r : records) {
    if (r.failed()) {
      out << "FAIL " << r.check << " seed=" << r.seed << " margin=" << general(r.margin) << "  [" << r.citation
          << "]\n";
    } else if (r.skipped() && (o.verbose || !o.random)) {
      out << "skip " << r.check << " seed=" << r.seed << ": " << r.reason << "\n";
    } else if (o.verbose) {
      out << "pass " << r.check << " seed=" << r.seed << " margin=" << general(r.margin) << "\n";
    }
  }
  const auto s = summarize(records);
  char worst[64];
  std::snprintf(worst, sizeof worst, "%.3g", s.worst_margin);
  out << instance_count << " instance(s)\n";
  out << s.total << " checks, " << s.passed << " passed, worst margin " << (std::isnan(s.worst_margin) ? "n/a" : worst)
      << "\n";
  out << s.skipped << " skipped, " << s.failed << " failed\n";
  write_report(o, report_json(config_json("verify", o), records));
  return s.failed ? 1 : 0;
}

int cmd_moments(const Options& o, std::ostream& out) {
  validate_common(o);
  const auto loaded = load(o);
  if (!loaded.hermitian) throw DomainError("moments: input matrix is not Hermitian");
  const ComplexMatrix& a = loaded.matrix;
  const auto spec = parse_map_spec(o.map);
  if (!spec.kind) throw UsageError("moments: --map all is not supported");
  const auto map = make_map(spec, a.rows(), o.seed);
  const int k_max = o.k_max.value_or(2 * o.r_max);
  if (k_max < 2 * o.r_max) throw UsageError("--k-max must be at least 2*r_max");
  const auto table = moment_table(map, a, o.k_min, k_max);

  out << "input: " << o.input << " (" << a.rows() << "x" << a.cols() << "), map: " << spec.text << "\n";
  out << "spectrum interval: [" << general(table.m) << ", " << general(table.M) << "]\n";
  const double scale = std::pow(std::max({1.0, std::abs(table.m), std::abs(table.M)}), k_max);
  if (map.is_functional()) {
    out << "moments k=" << table.k_min << ".." << table.k_max << ":";
    for (int k = table.k_min; k <= table.k_max; ++k) out << " " << general(table.scalar(k), scale * 1e-4);
    out << "\n";
  } else {
    for (int k = table.k_min; k <= table.k_max; ++k) {
      out << "Phi(A^" << k << "):\n";
      print_matrix(out, table.power(k), "  ");
    }
  }

  std::vector<CheckRecord> records;
  for (int r = 0; r <= o.r_max; ++r) {
    const auto verdict = is_psd(build_block(BlockKind::Hankel, table, r).assembled, o.tolerance);
    out << "hankel r=" << r << ": " << (verdict.passed ? "psd" : "NOT psd") << " (min eigenvalue "
        << general(verdict.min_eigenvalue, verdict.scale * 1e-3) << ")\n";
    records.push_back({"hankel/r=" + std::to_string(r), "[Phi(A^{i+j-2})] >= 0", verdict.passed,
                       verdict.min_eigenvalue, o.seed, {}});
  }

  ordered_json doc = report_json(config_json("moments", o), records);
  ordered_json blocks = ordered_json::array();
  for (int k = table.k_min; k <= table.k_max; ++k) {
    ordered_json entry;
    entry["k"] = k;
    entry["block"] = ordered_json::parse(write_matrix_json(table.power(k)));
    blocks.push_back(std::move(entry));
  }
  doc["moments"] = std::move(blocks);
  write_report(o, doc);
  return summarize(records).failed ? 1 : 0;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol", o.tolerance, "PSD tolerance (relative to max(1, ||M||_F))");
  cmd->add_option("--r-max", o.r_max, "largest block order r");
  cmd->add_option("--map", o.map, "trace | vector-state | compression:k | mixture:k | pinching | identity | all");
  cmd->add_option("--seed", o.seed, "seed for random maps and instances (default: $MOMENTA_SEED or 0)");
  cmd->add_option("--out", o.out_path, "write the JSON report here");
  cmd->add_option("--k-min", o.k_min, "lowest moment power, -1 or 0");
}

}  // namespace

MapSpec parse_map_spec(const std::string& text) {
  MapSpec spec;
  spec.text = text;
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      const auto k = std::stol(text.substr(colon + 1), &used);
      if (used != text.size() - colon - 1 || k < 1) throw std::invalid_argument("k");
      spec.codomain = k;
    } catch (const std::logic_error&) {
      throw UsageError("--map " + text + ": codomain size must be a positive integer");
    }
    if (name != "compression" && name != "mixture") throw UsageError("--map " + name + " takes no ':k' suffix");
  }
  if (name == "trace") spec.kind = MapKind::NormalizedTrace;
  else if (name == "vector-state") spec.kind = MapKind::VectorState;
  else if (name == "compression") spec.kind = MapKind::Compression;
  else if (name == "mixture") spec.kind = MapKind::Mixture;
  else if (name == "pinching") spec.kind = MapKind::Pinching;
  else if (name == "identity") spec.kind = MapKind::Identity;
  else if (name == "all") spec.kind = std::nullopt;
  else throw UsageError("unknown --map '" + text + "'");
  return spec;
}

PositiveUnitalMap make_map(const MapSpec& spec, Eigen::Index n, std::uint64_t seed) {
  if (!spec.kind) throw UsageError("--map all does not name a single map");
  const Eigen::Index k = spec.codomain.value_or(std::max<Eigen::Index>(1, n / 2));
  if ((*spec.kind == MapKind::Compression || *spec.kind == MapKind::Mixture) && k > n) {
    throw UsageError("--map " + spec.text + ": k exceeds the matrix dimension " + std::to_string(n));
  }
  return random_map(*spec.kind, n, k, seed);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MOMENTA_SEED")) {
    char* end = nullptr;
    const auto value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return value;
  }
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"momenta: moment matrices, PSD block checks and eigenvalue bounds under positive unital maps"};
  app.require_subcommand(1);
  Options o;
  o.seed = default_seed();

  auto* bounds = app.add_subcommand("bounds", "eigenvalue bounds from the central-moment cubic");
  bounds->add_option("matrix", o.input, "matrix file (.json or .csv)")->required();
  add_common(bounds, o);

  auto* verify = app.add_subcommand("verify", "run every block and inequality check");
  verify->add_option("matrix", o.input, "matrix file (.json or .csv)");
  verify->add_flag("--random", o.random, "generate seeded random instances instead of reading a file");
  verify->add_option("--instances", o.instances, "number of random instances");
  verify->add_option("--n-range", o.n_range, "dimension range lo:hi for random instances");
  verify->add_flag("--verbose", o.verbose, "print every record");
  add_common(verify, o);

  auto* moments = app.add_subcommand("moments", "print the moment table and Hankel verdicts");
  moments->add_option("matrix", o.input, "matrix file (.json or .csv)")->required();
  moments->add_option("--k-max", o.k_max, "highest moment power (default 2*r_max)");
  add_common(moments, o);

  std::vector<char*> argv;
  std::vector<std::string> storage(args);
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*bounds) return cmd_bounds(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*moments) return cmd_moments(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace momenta::cli
