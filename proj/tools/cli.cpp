#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "bexp/beach.hpp"
#include "bexp/dynamics.hpp"
#include "bexp/error.hpp"
#include "bexp/formats.hpp"
#include "bexp/stats.hpp"

namespace bexp::cli {
namespace {

// Raised for bad arguments discovered after parsing; maps to kExitUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string real_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void echo_config(std::ostream& err, const BeachConfig& c) {
  err << "# beach seed=" << format_hex_real(c.seed) << " (" << real_text(c.seed) << ")"
      << " r=" << c.r << " blimit=" << real_text(c.blimit) << " eps=" << real_text(c.zero_trap_eps)
      << " bits_per_block=" << c.bits_per_block << '\n';
}

// Writes to `path`, or to `out` when path is "-".
void write_output(const std::string& path, const std::string& data, std::ostream& out) {
  if (path == "-") {
    out << data;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw UsageError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

struct BeachOptions {
  std::string seed;
  double r = 20;
  double blimit = 10000.0;
  double eps = 1e-10;
  unsigned bits_per_block = 32;

  void add_to(CLI::App& cmd, bool seed_required) {
    auto* s = cmd.add_option("--seed", seed, "seed in (0,1); decimal or hex-float literal");
    if (seed_required) s->required();
    cmd.add_option("--r", r, "inner map iterations per block")->capture_default_str();
    cmd.add_option("--blimit", blimit, "upper limit of the map parameter B")->capture_default_str();
    cmd.add_option("--eps", eps, "zero-trap threshold")->capture_default_str();
    cmd.add_option("--bits-per-block", bits_per_block, "low bits emitted per block (1..52)")
        ->capture_default_str();
  }

  BeachConfig config() const {
    BeachConfig c;
    c.seed = parse_real(seed);
    if (!(r >= 1.0) || r != std::floor(r) || r > 1e9) throw DomainError("--r must be a positive integer");
    c.r = static_cast<unsigned>(r);
    c.blimit = blimit;
    c.zero_trap_eps = eps;
    c.bits_per_block = bits_per_block;
    c.validate();
    return c;
  }
};

std::vector<std::uint8_t> generate_bits(const BeachConfig& config, std::size_t n_bits) {
  Beach gen(config);
  return gen.fill_bits(n_bits);
}

// ---------------------------------------------------------------- generate

struct GenerateCmd {
  BeachOptions beach;
  std::size_t bits = 0;
  std::string format = "raw";
  std::string out_path;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("generate", "write a BEACH bitstream");
    beach.add_to(*cmd, true);
    cmd->add_option("--bits", bits, "number of bits to write")->required();
    cmd->add_option("--format", format, "raw | ascii01 | u32")->capture_default_str();
    cmd->add_option("--out", out_path, "output path, '-' for standard output")->required();
  }

  int run(std::ostream& out, std::ostream& err) const {
    const BeachConfig config = beach.config();
    if (bits == 0) throw UsageError("--bits must be at least 1");
    const OutputFormat fmt = parse_format(format);
    if (fmt == OutputFormat::U32 && bits % 32 != 0) {
      throw UsageError("--format u32 needs --bits divisible by 32");
    }
    echo_config(err, config);
    err << "# bits=" << bits << " format=" << to_string(fmt) << " out=" << out_path << '\n';
    write_output(out_path, encode_bits(generate_bits(config, bits), fmt), out);
    return kExitOk;
  }
};

// ----------------------------------------------------------------- analyze

struct AnalyzeCmd {
  std::string kind;
  std::string map = "gl";
  std::vector<double> b_values;
  std::optional<double> b_start, b_end;
  std::size_t b_steps = 100;
  bool log_grid = false;
  double x0 = 0.3;
  std::size_t iterations = kDefaultLyapunovIterations;
  std::size_t transient = kDefaultTransient;
  std::size_t keep = kDefaultKeep;
  std::size_t k = 1;
  std::size_t count = 1000;
  std::size_t length = 1000;
  std::size_t x_steps = 101;
  double critical_band = 0.02;
  std::string out_path = "-";

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("analyze", "dynamics of the B-Exponential map as CSV");
    cmd->add_option("kind", kind, "lyapunov | bifurcation | schwarzian | return-map | orbit")
        ->required()
        ->check(CLI::IsMember({"lyapunov", "bifurcation", "schwarzian", "return-map", "orbit"}));
    cmd->add_option("--map", map, "gl | numerator | gt (orbit and bifurcation)")->capture_default_str();
    cmd->add_option("--b", b_values, "explicit B values");
    cmd->add_option("--b-start", b_start, "first B of a grid");
    cmd->add_option("--b-end", b_end, "last B of a grid");
    cmd->add_option("--b-steps", b_steps, "grid points")->capture_default_str();
    cmd->add_flag("--log-grid", log_grid, "space the B grid logarithmically");
    cmd->add_option("--x0", x0, "initial condition in (0,1)")->capture_default_str();
    cmd->add_option("--iterations", iterations, "Lyapunov terms")->capture_default_str();
    cmd->add_option("--transient", transient, "discarded iterates")->capture_default_str();
    cmd->add_option("--keep", keep, "bifurcation samples per B")->capture_default_str();
    cmd->add_option("--k", k, "return-map order")->capture_default_str();
    cmd->add_option("--count", count, "return-map pairs per B")->capture_default_str();
    cmd->add_option("--length", length, "orbit length")->capture_default_str();
    cmd->add_option("--x-steps", x_steps, "Schwarzian x grid points")->capture_default_str();
    cmd->add_option("--critical-band", critical_band, "Schwarzian: width excluded around x=0.5")
        ->capture_default_str();
    cmd->add_option("--out", out_path, "CSV path, '-' for standard output")->capture_default_str();
  }

  std::vector<double> grid() const {
    if (!b_values.empty()) return b_values;
    if (!b_start || !b_end) throw UsageError("give --b values or --b-start/--b-end");
    if (!(*b_start > 0.0 && *b_end > *b_start)) throw UsageError("need 0 < --b-start < --b-end");
    if (b_steps < 2) throw UsageError("--b-steps must be >= 2");
    std::vector<double> g(b_steps);
    for (std::size_t i = 0; i < b_steps; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(b_steps - 1);
      g[i] = log_grid ? std::exp(std::log(*b_start) + t * (std::log(*b_end) - std::log(*b_start)))
                      : *b_start + t * (*b_end - *b_start);
    }
    g.back() = *b_end;
    return g;
  }

  int run(std::ostream& out, std::ostream& err) const {
    std::ostringstream csv;
    csv.precision(17);
    const MapKind mk = parse_map_kind(map);

    if (kind == "lyapunov") {
      csv << "b,lambda,iterations,transient,skipped\n";
      for (double b : grid()) {
        const auto e = lyapunov(b, x0, iterations, transient);
        csv << e.b << ',' << e.lambda << ',' << e.iterations << ',' << e.transient << ','
            << e.skipped << '\n';
      }
    } else if (kind == "bifurcation") {
      csv << "b,x\n";
      std::vector<BifurcationPoint> points;
      if (b_values.empty()) {
        if (log_grid) throw UsageError("bifurcation uses a uniform grid; drop --log-grid");
        if (!b_start || !b_end) throw UsageError("bifurcation needs --b-start and --b-end");
        points = bifurcation_scan(*b_start, *b_end, b_steps, {mk, transient, keep, x0});
      } else {
        for (double b : b_values) {
          auto p = bifurcation_scan(b, std::nextafter(b, INFINITY), 2, {mk, transient, keep, x0});
          points.push_back(std::move(p.front()));
        }
      }
      std::size_t escaped = 0;
      for (const auto& p : points) {
        escaped += p.escaped;
        for (double x : p.attractor_samples) csv << p.b << ',' << x << '\n';
      }
      err << "# " << escaped << " of " << points.size() << " grid points escaped [0,1]\n";
    } else if (kind == "schwarzian") {
      if (x_steps < 2) throw UsageError("--x-steps must be >= 2");
      csv << "b,x,schwarzian\n";
      for (double b : grid()) {
        for (std::size_t i = 0; i < x_steps; ++i) {
          const double x = static_cast<double>(i) / static_cast<double>(x_steps - 1);
          if (std::abs(x - 0.5) < 0.5 * critical_band) continue;
          csv << b << ',' << x << ',' << schwarzian(b, x) << '\n';
        }
      }
    } else if (kind == "return-map") {
      csv << "x,x_after_k\n";
      for (double b : grid()) {
        for (const auto& pr : return_map(b, x0, k, count, transient)) {
          csv << pr.x << ',' << pr.x_after_k << '\n';
        }
      }
    } else {  // orbit
      csv << "b,n,x\n";
      for (double b : grid()) {
        const auto o = orbit(mk, b, x0, length, transient);
        for (std::size_t n = 0; n < o.values.size(); ++n) {
          csv << b << ',' << (transient + n + 1) << ',' << o.values[n] << '\n';
        }
      }
    }
    write_output(out_path, csv.str(), out);
    return kExitOk;
  }
};

// -------------------------------------------------------------------- test

struct TestCmd {
  std::string in_path;
  std::string format = "raw";
  bool generate = false;
  BeachOptions beach;
  std::size_t bits = 10'000'000;
  bool machine = false;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("test", "run the ENT-style battery on a bitstream");
    cmd->add_option("input", in_path, "bitstream file");
    cmd->add_option("--format", format, "input format: raw | ascii01 | u32")->capture_default_str();
    cmd->add_flag("--generate", generate, "test a freshly generated BEACH stream instead");
    beach.add_to(*cmd, false);
    cmd->add_option("--bits", bits, "bits to generate with --generate")->capture_default_str();
    cmd->add_flag("--machine", machine, "print metric=value lines instead of the text layout");
  }

  int run(std::ostream& out, std::ostream& err) const {
    std::vector<std::uint8_t> bytes;
    if (generate) {
      if (!in_path.empty()) throw UsageError("give either an input file or --generate, not both");
      if (beach.seed.empty()) throw UsageError("--generate needs --seed");
      if (bits == 0) throw UsageError("--bits must be at least 1");
      const BeachConfig config = beach.config();
      echo_config(err, config);
      err << "# bits=" << bits << '\n';
      Beach gen(config);
      bytes = gen.fill_bytes(bits);
    } else {
      if (in_path.empty()) throw UsageError("give an input file or --generate");
      const std::string text = read_file(in_path);
      const OutputFormat fmt = parse_format(format);
      bytes = fmt == OutputFormat::Raw ? std::vector<std::uint8_t>(text.begin(), text.end())
                                       : pack_bits(decode_bits(text, fmt));
    }
    if (bytes.size() < kMinBatteryBytes) {
      throw UsageError("input has " + std::to_string(bytes.size()) + " bytes; the battery needs " +
                       std::to_string(kMinBatteryBytes));
    }

    const BatteryResult result = run_battery(bytes);
    if (machine) {
      out << format_report_machine(result.bits) << format_report_machine(result.bytes);
    } else {
      out << format_report_text(result.bits) << '\n' << format_report_text(result.bytes) << '\n';
    }
    bool all = true;
    for (const auto& c : check_desk_thresholds(result.bits)) {
      all = all && c.passed;
      if (machine) {
        out << "check." << c.name << '=' << (c.passed ? "pass" : "fail") << '\n';
      } else {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
      }
    }
    out << (machine ? "verdict=" : "verdict: ") << (all ? "pass" : "fail") << '\n';
    return all ? kExitOk : kExitThresholdFailure;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"B-Exponential map toolkit: BEACH generator, dynamics and randomness battery"};
  app.name("bexp");
  app.require_subcommand(1);
  GenerateCmd gen;
  AnalyzeCmd analyze;
  TestCmd test;
  gen.attach(app);
  analyze.attach(app);
  test.attach(app);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("generate")) return gen.run(out, err);
    if (app.got_subcommand("analyze")) return analyze.run(out, err);
    return test.run(out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace bexp::cli
