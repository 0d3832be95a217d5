// Command-line front end: preimage lattices, codings, series reconstruction,
// conjugacy tables, and the verification suite, with CSV/JSON emission.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "unimap/conjugacy.hpp"
#include "unimap/preimage_lattice.hpp"
#include "unimap/serialization.hpp"
#include "unimap/verification.hpp"

namespace {

using nlohmann::json;
using namespace unimap;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

UnimodalMap resolve_map(const std::string& arg, std::optional<double> v) {
  if (arg.empty()) throw std::invalid_argument("map specification is empty");
  MapSpec spec;
  if (arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw std::invalid_argument("cannot read map spec file: " + arg.substr(1));
    spec = json::parse(in).get<MapSpec>();
  } else if (arg.front() == '{') {
    spec = json::parse(arg).get<MapSpec>();
  } else {
    spec.kind = arg;
    spec.v = v;
  }
  return make_map(spec);
}

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot open output path: " + path);
    stream = &file;
  }
  std::ostream& out() { return *stream; }
};

void emit_envelope(Output& output, const std::string& command, json config, json result) {
  json envelope{{"command", command}, {"config", std::move(config)}, {"result", std::move(result)}};
  output.out() << envelope.dump(2) << "\n";
}

struct Options {
  std::string map = "tent";
  std::string source, target;
  std::optional<double> v;
  int n = 3;
  int depth = kDefaultDepth;
  double tol = kDefaultTol;
  int samples = 257;
  std::string format = "csv";
  std::string out_path;
  std::uint64_t seed = 1729;
  std::string only;
  double x = 0.0;
  std::string digits;
  bool verbose = false;
};

json config_json(const Options& opt, std::initializer_list<const char*> keys) {
  json c;
  for (const char* key : keys) {
    const std::string k = key;
    if (k == "map") c["map"] = opt.map;
    if (k == "source") c["source"] = opt.source;
    if (k == "target") c["target"] = opt.target;
    if (k == "n") c["n"] = opt.n;
    if (k == "depth") c["depth"] = opt.depth;
    if (k == "tol") c["tol"] = opt.tol;
    if (k == "samples") c["samples"] = opt.samples;
    if (k == "seed") c["seed"] = opt.seed;
    if (k == "x") c["x"] = opt.x;
    if (k == "digits") c["digits"] = opt.digits;
    if (k == "only" && !opt.only.empty()) c["only"] = opt.only;
  }
  c["format"] = opt.format;
  return c;
}

int run_preimages(const Options& opt) {
  const UnimodalMap map = resolve_map(opt.map, opt.v);
  const PreimageLevel level = preimage_level(map, opt.n);
  Output output(opt.out_path);
  if (opt.format == "json") {
    emit_envelope(output, "preimages", config_json(opt, {"map", "n"}), level);
  } else {
    output.out() << "k,mu\n";
    for (std::size_t k = 0; k < level.points.size(); ++k)
      output.out() << k << "," << fmt(level.points[k]) << "\n";
  }
  return 0;
}

int run_encode(const Options& opt) {
  const UnimodalMap map = resolve_map(opt.map, opt.v);
  if (!(opt.x >= 0.0 && opt.x <= 1.0))
    throw std::invalid_argument("--x must lie in [0,1]");
  const LocalizationPath path = localize(map, opt.x, opt.depth);
  const GDecomposition d = g_decomposition(map, opt.x, path.depth);
  const DigitSequence rho = digit_sequence(map, opt.x, path.depth);
  const InvariantCoordinates theta = invariant_coordinates(map, opt.x, path.depth);

  Output output(opt.out_path);
  if (opt.format == "json") {
    json result{{"decomposition", d}, {"digits", rho}, {"coordinates", theta}, {"path", path}};
    emit_envelope(output, "encode", config_json(opt, {"map", "x", "depth"}), std::move(result));
  } else {
    output.out() << "# decomposition " << to_bit_string(d) << "\n";
    output.out() << "# digits " << to_bit_string(rho) << "\n";
    output.out() << "# coordinates " << to_sign_string(theta) << "\n";
    output.out() << "n,k,x_n,x_plus,x_mid,length,delta,d_next\n";
    for (const auto& row : path.levels)
      output.out() << row.depth << "," << row.index << "," << fmt(row.left) << ","
                   << fmt(row.right) << "," << fmt(row.midpoint) << "," << fmt(row.length)
                   << "," << fmt(row.delta) << "," << row.next_bit << "\n";
  }
  if (!path.diagnostic.empty()) std::cerr << "warning: " << path.diagnostic << "\n";
  return 0;
}

int run_decode(const Options& opt) {
  const UnimodalMap map = resolve_map(opt.map, opt.v);
  const DigitSequence digits = parse_digit_string(opt.digits);
  const ConvergenceReport report = decode(map, digits, opt.tol, opt.depth);

  Output output(opt.out_path);
  if (opt.format == "json") {
    json r = report;
    if (!opt.verbose) r.erase("partial_sums");
    emit_envelope(output, "decode", config_json(opt, {"map", "digits", "tol", "depth"}),
                  std::move(r));
  } else {
    output.out() << "field,value\n";
    output.out() << "value," << fmt(report.value) << "\n";
    output.out() << "final_length," << fmt(report.final_length) << "\n";
    output.out() << "converged," << (report.converged ? 1 : 0) << "\n";
    output.out() << "depth," << report.depth << "\n";
    if (opt.verbose)
      for (std::size_t i = 0; i < report.partial_sums.size(); ++i)
        output.out() << "a_" << i << "," << fmt(report.partial_sums[i]) << "\n";
  }
  if (!report.converged)
    std::cerr << "warning: reconstruction stalled at interval length "
              << fmt(report.final_length) << " > tol " << fmt(opt.tol) << "\n";
  return 0;
}

int run_conjugate(const Options& opt) {
  const UnimodalMap source = resolve_map(opt.source, opt.v);
  const UnimodalMap target = resolve_map(opt.target, std::nullopt);
  const auto table = conjugate_grid(source, target, opt.samples, opt.tol, opt.depth);

  Output output(opt.out_path);
  if (opt.format == "json") {
    json rows = json::array();
    for (const auto& [x, h] : table) rows.push_back({{"x", x}, {"h_x", h}});
    emit_envelope(output, "conjugate",
                  config_json(opt, {"source", "target", "samples", "tol", "depth"}),
                  std::move(rows));
  } else {
    output.out() << "x,h_x\n";
    for (const auto& [x, h] : table) output.out() << fmt(x) << "," << fmt(h) << "\n";
  }
  return 0;
}

int run_verify(const Options& opt, bool custom_map) {
  SuiteConfig config;
  config.depth = opt.depth;
  config.samples = opt.samples;
  config.seed = opt.seed;
  config.only = opt.only;
  auto reports = run_verification_suite(config);

  if (custom_map) {
    // Fold a user-provided map into the per-map checks.
    const UnimodalMap map = resolve_map(opt.map, opt.v);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> xs(std::max(config.samples, 2));
    for (auto& x : xs) x = unit(rng);
    CheckReport rec, rei, ser;
    for (double x : xs) {
      auto merge = [](CheckReport& into, CheckReport part) {
        if (into.name.empty()) {
          into = std::move(part);
          return;
        }
        into.samples += part.samples;
        into.max_residual = std::max(into.max_residual, part.max_residual);
        into.pass = into.pass && part.pass;
      };
      merge(rec, check_recurrences(map, x, config.depth));
      merge(rei, check_reconstruction_identity(map, x, config.depth));
      merge(ser, check_endpoint_series(map, x, std::min(config.depth, 16)));
    }
    for (const auto& r : {rec, rei, ser})
      if (opt.only.empty() || r.name.find(opt.only) != std::string::npos)
        reports.push_back(r);
    auto mono = check_coordinate_monotonicity(map, xs, std::min(config.depth, 32));
    if (opt.only.empty() || mono.name.find(opt.only) != std::string::npos)
      reports.push_back(mono);
  }

  bool all_pass = true;
  Output output(opt.out_path);
  if (opt.format == "json") {
    emit_envelope(output, "verify", config_json(opt, {"depth", "samples", "seed", "only"}),
                  reports);
    for (const auto& r : reports) all_pass = all_pass && r.pass;
  } else {
    output.out() << "check,subject,samples,max_residual,tolerance,seed,pass\n";
    for (const auto& r : reports) {
      output.out() << r.name << "," << r.subject << "," << r.samples << ","
                   << fmt(r.max_residual) << "," << fmt(r.tolerance) << "," << r.seed << ","
                   << (r.pass ? 1 : 0) << "\n";
      all_pass = all_pass && r.pass;
    }
  }
  std::cerr << (all_pass ? "verification suite: all checks passed"
                         : "verification suite: FAILURES present")
            << " (" << reports.size() << " reports)\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic codings and explicit conjugacies of unimodal interval maps"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("--depth", opt.depth, "localization depth")->check(CLI::Range(1, 64));
    sub->add_option("--tol", opt.tol, "convergence tolerance")
        ->check(CLI::Range(1e-15, 0.999999));
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", opt.out_path, "output path (default stdout)");
    sub->add_option("--seed", opt.seed, "sampling seed");
  };

  auto* pre = app.add_subcommand("preimages", "print the n-th preimage level of 0");
  pre->add_option("--map", opt.map, "map kind, inline JSON, or @file.json");
  pre->add_option("--v", opt.v, "critical point for skew_tent");
  pre->add_option("--n", opt.n, "preimage level")->check(CLI::Range(1, 64));
  add_common(pre);

  auto* enc = app.add_subcommand("encode", "all three codings of x plus the localization table");
  enc->add_option("--map", opt.map, "map kind, inline JSON, or @file.json");
  enc->add_option("--v", opt.v, "critical point for skew_tent");
  enc->add_option("--x", opt.x, "point to encode")->required();
  add_common(enc);

  auto* dec = app.add_subcommand("decode", "reconstruct the point with a given digit string");
  dec->add_option("--map", opt.map, "map kind, inline JSON, or @file.json");
  dec->add_option("--v", opt.v, "critical point for skew_tent");
  dec->add_option("--digits", opt.digits, "plain 0/1 digit string, most significant first")
      ->required();
  dec->add_flag("--verbose", opt.verbose, "include all partial sums");
  add_common(dec);

  auto* con = app.add_subcommand("conjugate", "emit the conjugacy table source -> target");
  con->add_option("--source", opt.source, "source map")->required();
  con->add_option("--target", opt.target, "target map")->required();
  con->add_option("--v", opt.v, "critical point for a skew_tent source");
  con->add_option("--samples", opt.samples, "grid size")->check(CLI::Range(2, 1000000));
  add_common(con);

  auto* ver = app.add_subcommand("verify", "run the executable checks");
  ver->add_option("--map", opt.map, "extra map folded into the per-map checks");
  ver->add_option("--v", opt.v, "critical point for skew_tent");
  ver->add_option("--only", opt.only, "substring filter on check names");
  ver->add_option("--samples", opt.samples, "random samples per check")
      ->check(CLI::Range(2, 100000));
  add_common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (pre->parsed()) return run_preimages(opt);
    if (enc->parsed()) return run_encode(opt);
    if (dec->parsed()) return run_decode(opt);
    if (con->parsed()) return run_conjugate(opt);
    if (ver->parsed()) {
      if (ver->count("--samples") == 0) opt.samples = 40;
      return run_verify(opt, ver->count("--map") > 0);
    }
  } catch (const nlohmann::json::exception& err) {
    std::cerr << "error: invalid JSON: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::domain_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::out_of_range& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "computation failed: " << err.what() << "\n";
    return 1;
  }
  return 2;
}
