#include "perronkit/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "perronkit/fixtures.hpp"
#include "perronkit/generator.hpp"
#include "perronkit/graph.hpp"
#include "perronkit/partition.hpp"
#include "perronkit/perron.hpp"
#include "perronkit/spectral.hpp"
#include "perronkit/tensor_io.hpp"
#include "perronkit/verification.hpp"

namespace perronkit::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "json";
  std::string input;
  double tol = 1e-6;
  int max_iter = 100000;
  double gamma = 1e-3;
  double rho_tol = 1e-6;
  std::string trace_path;
  // gen
  std::vector<int> blocks;
  double rt = 2.0;
  double den = 0.1;
  std::uint64_t seed = 0;
  std::string output;
  bool not_strong = false;
  std::string mode = "auto";
  // verify
  int instances = 200;
};

int thread_budget() {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("PERRONKIT_THREADS")) {
    const std::string_view text(env);
    int cap = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec != std::errc() || ptr != text.data() + text.size() || cap < 1) {
      throw UsageError("PERRONKIT_THREADS must be a positive integer");
    }
    threads = std::min(threads, cap);
  }
  return threads;
}

Json one_based(const std::vector<int>& indices) {
  Json out = Json::array();
  for (int i : indices) out.push_back(i + 1);
  return out;
}

Json blocks_json(const CanonicalPartition& p) {
  Json blocks = Json::array();
  for (const auto& b : p.blocks) blocks.push_back(one_based(b));
  return blocks;
}

Json radii_json(const std::vector<BlockSpectrum>& spectra) {
  Json radii = Json::array();
  for (const auto& s : spectra) radii.push_back(s.rho);
  return radii;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// Plain rendering: one "key: value" line per field, arrays space-separated,
// nested arrays and arrays of objects one element per line.
std::string plain_scalar(const Json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string plain_row(const Json& v) {
  std::string line;
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!line.empty()) line += ' ';
      line += it.key() + '=' + plain_row(it.value());
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (!line.empty()) line += ' ';
      line += plain_scalar(x);
    }
  } else {
    line = plain_scalar(v);
  }
  return line;
}

void render_plain(std::ostream& out, const Json& doc) {
  if (!doc.is_object()) {
    if (doc.is_array()) {
      for (const auto& row : doc) out << plain_row(row) << '\n';
    } else {
      out << plain_scalar(doc) << '\n';
    }
    return;
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const Json& v = it.value();
    const bool nested = v.is_array() && !v.empty() && (v.front().is_array() || v.front().is_object());
    if (nested) {
      out << it.key() << ":\n";
      for (const auto& row : v) out << "  " << plain_row(row) << '\n';
    } else {
      out << it.key() << ": " << plain_row(v) << '\n';
    }
  }
}

void emit(std::ostream& out, const Options& opt, const Json& doc) {
  if (opt.format == "plain") {
    render_plain(out, doc);
  } else {
    out << doc.dump() << '\n';
  }
}

FixedPointConfig fixed_point_config(const Options& opt) {
  FixedPointConfig config;
  config.gamma = opt.gamma;
  config.tolerance = opt.tol;
  config.max_iterations = opt.max_iter;
  config.rho_equality_tol = opt.rho_tol;
  config.power.tolerance = opt.tol;
  config.power.max_iterations = opt.max_iter;
  config.threads = thread_budget();
  config.record_trace = !opt.trace_path.empty();
  return config;
}

Json classification_json(const Classification& c) {
  Json doc;
  doc["status"] = std::string(c.status());
  doc["lambda"] = c.lambda();
  doc["blocks"] = blocks_json(c.partition);
  doc["genuine"] = c.partition.genuine;
  doc["s"] = c.partition.s;
  doc["block_radii"] = radii_json(c.block_spectra);
  if (const auto* too_large = std::get_if<NonGenuineTooLarge>(&c.outcome)) {
    doc["offending_block"] = too_large->block + 1;
  } else if (const auto* mismatch = std::get_if<GenuineRadiiDiffer>(&c.outcome)) {
    doc["genuine_radius_range"] = Json::array({mismatch->min, mismatch->max});
  }
  return doc;
}

int cmd_partition(const Options& opt, std::ostream& out) {
  const auto p = canonical_partition(read_tensor_file(opt.input));
  Json doc;
  doc["blocks"] = blocks_json(p);
  doc["genuine"] = p.genuine;
  doc["s"] = p.s;
  emit(out, opt, doc);
  return kExitOk;
}

int cmd_majorization(const Options& opt, std::ostream& out) {
  const auto m = majorization(read_tensor_file(opt.input));
  Json doc = Json::array();
  for (int i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    doc.push_back(std::move(row));
  }
  emit(out, opt, doc);
  return kExitOk;
}

int cmd_radius(const Options& opt, std::ostream& out) {
  PowerMethodConfig config;
  config.tolerance = opt.tol;
  config.max_iterations = opt.max_iter;
  const auto analysis = analyze_blocks(read_tensor_file(opt.input), config, thread_budget());
  Json doc;
  doc["rho"] = analysis.radius();
  doc["blocks"] = blocks_json(analysis.partition);
  doc["block_radii"] = radii_json(analysis.spectra);
  Json iterations = Json::array();
  for (const auto& s : analysis.spectra) iterations.push_back(s.iterations);
  doc["iterations"] = std::move(iterations);
  emit(out, opt, doc);
  return kExitOk;
}

int cmd_classify(const Options& opt, std::ostream& out) {
  const auto c = classify(read_tensor_file(opt.input), fixed_point_config(opt));
  emit(out, opt, classification_json(c));
  return c.strongly_nonnegative() ? kExitOk : kExitNotStrong;
}

void write_trace(const std::string& path, const std::vector<TraceRow>& trace) {
  std::ofstream csv(path);
  if (!csv) throw Error("cannot write " + path);
  csv << "iteration,residual,step\n";
  for (const auto& row : trace) {
    csv << row.iteration << ',' << format_double(row.residual) << ',' << format_double(row.step) << '\n';
  }
  if (!csv) throw Error("write failed for " + path);
}

int cmd_perron(const Options& opt, std::ostream& out) {
  const auto tensor = read_tensor_file(opt.input);
  const auto config = fixed_point_config(opt);
  const auto c = classify(tensor, config);
  Json doc;
  doc["status"] = std::string(c.status());
  doc["lambda"] = c.lambda();
  if (!c.strongly_nonnegative()) {
    doc["vector"] = nullptr;
    doc["residual"] = nullptr;
    doc["iterations"] = nullptr;
    emit(out, opt, doc);
    return kExitNotStrong;
  }
  const auto result = positive_perron_vector(tensor, c, config);
  if (!opt.trace_path.empty()) write_trace(opt.trace_path, result.trace);
  doc["vector"] = result.z;
  doc["residual"] = number_or_null(result.residual);
  doc["iterations"] = result.iterations;
  doc["gamma"] = result.gamma;
  doc["restarts"] = result.restarts;
  emit(out, opt, doc);
  return kExitOk;
}

int cmd_gen(const Options& opt, std::ostream& out) {
  GeneratorSpec spec{opt.blocks, opt.rt, opt.den, opt.seed};
  PowerMethodConfig power;
  power.tolerance = 1e-10;
  auto build = [&] {
    if (!opt.not_strong) return generate_instance(spec, power);
    NotStrongMode mode = NotStrongMode::Automatic;
    if (opt.mode == "inflate") mode = NotStrongMode::InflateNonGenuine;
    if (opt.mode == "second-genuine") mode = NotStrongMode::SecondGenuine;
    return generate_not_strong_instance(spec, mode, power);
  };
  const GeneratedTensor g = build();
  if (opt.output.empty()) {
    write_tensor(out, g.tensor);
    return kExitOk;
  }
  write_tensor_file(opt.output, g.tensor);
  Json doc;
  doc["output"] = opt.output;
  doc["order"] = g.tensor.order();
  doc["dim"] = g.tensor.dim();
  doc["nnz"] = g.tensor.nnz();
  Json blocks = Json::array();
  for (const auto& b : g.blocks) blocks.push_back(one_based(b));
  doc["blocks"] = std::move(blocks);
  doc["base_radius"] = g.base_radius;
  doc["lambda"] = g.lambda;
  doc["seed"] = opt.seed;
  emit(out, opt, doc);
  return kExitOk;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const auto report = verification::run_self_check(opt.seed, opt.instances);
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json row;
    row["name"] = c.name;
    row["instances"] = c.instances;
    row["failures"] = c.failures;
    if (c.failures > 0) row["first_failure"] = c.first_failure;
    checks.push_back(std::move(row));
  }
  Json doc;
  doc["passed"] = report.passed();
  doc["checks"] = std::move(checks);
  emit(out, opt, doc);
  return report.passed() ? kExitOk : kExitFailure;
}

Json comparison(const std::string& quantity, double computed, double reference) {
  Json row;
  row["quantity"] = quantity;
  row["computed"] = computed;
  row["reference"] = reference;
  row["abs_diff"] = std::abs(computed - reference);
  return row;
}

void render_table(std::ostream& out, const Json& rows) {
  out << std::left << std::setw(12) << "quantity" << std::setw(14) << "computed" << std::setw(14)
      << "reference" << "abs_diff\n";
  std::ostringstream line;
  for (const auto& r : rows) {
    line.str("");
    line << std::left << std::setw(12) << r["quantity"].get<std::string>() << std::setw(14)
         << std::setprecision(6) << r["computed"].get<double>() << std::setw(14)
         << r["reference"].get<double>() << std::setprecision(3) << r["abs_diff"].get<double>();
    out << line.str() << '\n';
  }
}

int cmd_repro(const Options& opt, std::ostream& out) {
  const fixtures::FourBlockReference ref;
  PowerMethodConfig power;
  power.tolerance = ref.tolerance;
  Json rows = Json::array();
  for (int k = 0; k < 4; ++k) {
    const double rho = power_method(fixtures::four_block_chain_block(k), power).rho;
    rows.push_back(comparison("rho(A" + std::to_string(k + 1) + ")", rho,
                              ref.block_radii[static_cast<std::size_t>(k)]));
  }

  FixedPointConfig config;
  config.gamma = ref.gamma;
  config.tolerance = ref.tolerance;
  config.power = power;
  const auto result = positive_perron_vector(fixtures::four_block_chain(), config);
  rows.push_back(comparison("lambda", result.lambda, ref.radius));
  for (std::size_t i = 0; i < result.z.size(); ++i) {
    rows.push_back(comparison("z" + std::to_string(i + 1), result.z[i], ref.perron_vector[i]));
  }
  rows.push_back(comparison("iterations", result.iterations, ref.iterations));
  rows.push_back(comparison("residual", result.residual, ref.residual));

  if (opt.format == "plain") {
    render_table(out, rows);
  } else {
    Json doc;
    doc["rows"] = std::move(rows);
    emit(out, opt, doc);
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Positive Perron vectors of nonnegative tensors", "perronkit"};
  app.require_subcommand(1);
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "plain"}))
      ->capture_default_str();

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", opt.input, "Tensor file in sparse text format")->required();
    sub->fallthrough();
  };
  auto add_power = [&](CLI::App* sub) {
    sub->add_option("--tol", opt.tol, "Convergence tolerance")->capture_default_str();
    sub->add_option("--max-iter", opt.max_iter, "Iteration budget")->capture_default_str();
  };

  auto* partition = app.add_subcommand("partition", "Canonical nonnegative partition");
  add_input(partition);

  auto* major = app.add_subcommand("majorization", "Dense majorization matrix");
  add_input(major);

  auto* radius = app.add_subcommand("radius", "Spectral radius and block radii");
  add_input(radius);
  add_power(radius);

  auto* classify_cmd = app.add_subcommand("classify", "Decide strong nonnegativity");
  add_input(classify_cmd);
  add_power(classify_cmd);
  classify_cmd->add_option("--rho-tol", opt.rho_tol, "Relative tolerance for equal radii")
      ->capture_default_str();

  auto* perron = app.add_subcommand("perron", "Positive Perron vector");
  add_input(perron);
  add_power(perron);
  perron->add_option("--gamma", opt.gamma, "Initial scaling of non-genuine blocks")
      ->capture_default_str();
  perron->add_option("--rho-tol", opt.rho_tol, "Relative tolerance for equal radii")
      ->capture_default_str();
  perron->add_option("--trace", opt.trace_path, "Write per-iteration residuals as CSV");

  auto* gen = app.add_subcommand("gen", "Random third-order instance with a block chain");
  gen->fallthrough();
  gen->add_option("--blocks", opt.blocks, "Block sizes, comma separated")
      ->delimiter(',')
      ->required();
  gen->add_option("--rt", opt.rt, "Final radius over largest raw block radius")->capture_default_str();
  gen->add_option("--den", opt.den, "Coupling density")->capture_default_str();
  gen->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  gen->add_option("-o,--output", opt.output, "Output file (stdout when omitted)");
  gen->add_flag("--not-strong", opt.not_strong, "Break strong nonnegativity on purpose");
  gen->add_option("--mode", opt.mode, "How --not-strong breaks the instance")
      ->check(CLI::IsMember({"auto", "inflate", "second-genuine"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Compare fast kernels against brute-force oracles");
  verify->fallthrough();
  verify->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  verify->add_option("--instances", opt.instances, "Random instances per check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* repro = app.add_subcommand("repro-example", "Rerun the built-in four-block example");
  repro->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (partition->parsed()) return cmd_partition(opt, out);
    if (major->parsed()) return cmd_majorization(opt, out);
    if (radius->parsed()) return cmd_radius(opt, out);
    if (classify_cmd->parsed()) return cmd_classify(opt, out);
    if (perron->parsed()) return cmd_perron(opt, out);
    if (gen->parsed()) return cmd_gen(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out);
    if (repro->parsed()) return cmd_repro(opt, out);
  } catch (const UsageError& e) {
    err << "perronkit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "perronkit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotConverged& e) {
    err << "perronkit: " << e.what() << " (last gap " << format_double(e.last_gap()) << ")\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "perronkit: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace perronkit::cli
