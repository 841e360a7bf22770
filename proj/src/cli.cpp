/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/cli.hpp"

#include "orbitcap/error.hpp"
#include "orbitcap/log_io.hpp"
#include "orbitcap/report_json.hpp"
#include "orbitcap/server.hpp"
#include "orbitcap/session.hpp"
#include "orbitcap/synth.hpp"

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <pthread.h>

#include <CLI11.hpp>

namespace orbitcap::cli
{

namespace fs = std::filesystem;

namespace
{

struct InputError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct EnvironmentError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// Output name -> bytes. Nothing is written until every file is rendered.
using OutputSet = std::map<std::string, std::string>;

void write_outputs(const fs::path& dir, const OutputSet& files)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw EnvironmentError("cannot create output directory " + dir.string() + ": " + ec.message());

  for (const auto& [name, bytes] : files)
  {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    out << bytes;
    if (!out)
      throw EnvironmentError("cannot write " + (dir / name).string());
  }
}

std::string read_file(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void add_coverage_maps(OutputSet& files, const CoverageMatrix& raw)
{
  const CoverageMatrix refined = refine_display(raw);
  std::ostringstream pgm;
  write_pgm(pgm, raw);
  files["coverage.pgm"] = pgm.str();

  std::ostringstream refined_pgm;
  write_pgm(refined_pgm, raw, &refined);
  files["coverage_refined.pgm"] = refined_pgm.str();

  std::ostringstream text;
  write_matrix_text(text, raw);
  files["coverage.txt"] = text.str();
}

std::string band_csv(const BandReport& bands)
{
  std::ostringstream csv;
  write_band_csv(csv, bands);
  return csv.str();
}

int cmd_replay(const fs::path& log_path, const SessionConfig& cfg, const fs::path& out_dir)
{
  const std::string text = read_file(log_path);
  std::vector<ImuSample> samples;
  try
  {
    samples = parse_log_text(text);
  }
  catch (const Error& e)
  {
    throw InputError(log_path.string() + ": " + e.what());
  }

  SessionReport report;
  try
  {
    report = replay_samples(samples, cfg);
  }
  catch (const Error& e)
  {
    throw InputError(log_path.string() + ": " + e.what());
  }

  OutputSet files;
  files["report.json"] = dump_report(report);
  files["bands.csv"] = band_csv(report.bands);
  add_coverage_maps(files, report.coverage);
  write_outputs(out_dir, files);

  std::cout << "samples=" << report.sample_count << " captures=" << report.captures.size()
            << " coverage_pct=" << report.coverage_pct << '\n';
  return kExitOk;
}

int cmd_report(const fs::path& csv_path, const GridSpec& grid, bool first_is_baseline, const fs::path& out_dir)
{
  const std::string text = read_file(csv_path);
  OrientationList list;
  try
  {
    list = import_orientations_text(text);
  }
  catch (const Error& e)
  {
    throw InputError(csv_path.string() + ": " + e.what());
  }

  std::vector<Quaternion> orientations;
  orientations.reserve(list.size());
  for (const OrientationEntry& entry : list)
    orientations.push_back(entry.q);
  const OrientationCoverage result = orientation_coverage(orientations, grid, first_is_baseline);

  OutputSet files;
  files["bands.csv"] = band_csv(result.bands);
  add_coverage_maps(files, result.coverage);
  write_outputs(out_dir, files);

  std::cout << "images=" << list.size() << " coverage_pct=" << result.coverage_pct << '\n';
  return kExitOk;
}

int cmd_synth(const SynthParams& params, const fs::path& out_dir, std::string name)
{
  const SynthResult result = synthesize(params);
  if (name.empty())
    name = std::string(to_string(params.pattern)) + ".jsonl";

  write_outputs(out_dir, {{name, write_log_text(result.samples)}});
  std::cout << (out_dir / name).string() << " samples=" << result.samples.size() << '\n';
  return kExitOk;
}

int cmd_serve(const std::string& bind, const SessionConfig& cfg, const fs::path& out_dir, int threads)
{
  ServerOptions options;
  options.defaults = cfg;
  options.report_dir = out_dir;
  options.threads = threads;

  const auto colon = bind.rfind(':');
  if (colon == std::string::npos)
    throw Error(ErrorCode::InvalidConfig, "--bind must be host:port");
  options.address = bind.substr(0, colon);
  try
  {
    const int port = std::stoi(bind.substr(colon + 1));
    if (port < 0 || port > 65535)
      throw std::out_of_range("port");
    options.port = static_cast<std::uint16_t>(port);
  }
  catch (const std::logic_error&)
  {
    throw Error(ErrorCode::InvalidConfig, "invalid port in --bind '" + bind + "'");
  }

  // Workers inherit the blocked mask, so SIGINT/SIGTERM reach sigwait only.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  Server server(options);
  try
  {
    server.start();
  }
  catch (const BindError& e)
  {
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    throw EnvironmentError(e.what());
  }

  std::cout << "listening on " << options.address << ':' << server.port() << std::endl;

  int received = 0;
  sigwait(&signals, &received);
  server.stop();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);

  std::cout << "stopped after signal " << received << "; reports written: " << server.reports().written().size()
            << std::endl;
  return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args)
{
  CLI::App app{"orbitcap - spherical capture coverage engine for IMU pose streams"};
  app.set_config("--config", "", "TOML/INI file whose keys mirror the long flag names");
  app.require_subcommand(1);

  SessionConfig cfg;
  std::string recapture = "once";
  fs::path out_dir = "out";

  app.add_option("--grid-theta", cfg.grid.n_theta, "Longitude bins")->capture_default_str();
  app.add_option("--grid-phi", cfg.grid.n_phi, "Latitude bins")->capture_default_str();
  app.add_option("--pole-zone", cfg.grid.pole_zone_deg, "Polar dilation zone (degrees from pole)")->capture_default_str();
  app.add_option("--alpha", cfg.gate.alpha, "EMA weight on the previous average")->capture_default_str();
  app.add_option("--a-th", cfg.gate.a_th, "Acceleration threshold (m/s^2)")->capture_default_str();
  app.add_option("--omega-th", cfg.gate.omega_th, "Angular velocity threshold (rad/s)")->capture_default_str();
  app.add_option("--hold-ms", cfg.gate.hold_ms, "Calm time required before a pose is stable (ms)")->capture_default_str();
  app.add_option("--recapture", recapture, "Capture policy: once | always")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();

  fs::path log_path;
  CLI::App* replay = app.add_subcommand("replay", "Run a session over an IMU log");
  replay->add_option("log", log_path, "JSONL IMU log")->required();
  replay->fallthrough();

  fs::path csv_path;
  bool first_is_baseline = false;
  CLI::App* report = app.add_subcommand("report", "Band and coverage report for an orientation CSV");
  report->add_option("orientations", csv_path, "CSV with image_id,qx,qy,qz,qw")->required();
  report->add_flag("--first-baseline", first_is_baseline, "Express orientations relative to the first image");
  report->fallthrough();

  SynthParams synth_params;
  std::string pattern;
  std::string log_name;
  double burst_scale = 10.0;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic IMU log");
  synth->add_option("pattern", pattern, "orbit | spiral | random-walk")->required();
  synth->add_option("--rate-hz", synth_params.rate_hz, "Sample rate")->capture_default_str();
  synth->add_option("--yaw-rate", synth_params.yaw_rate_deg, "Sweep rate or random-walk bound (deg/s)")->capture_default_str();
  synth->add_option("--settle-ms", synth_params.settle_ms, "Calm lead-in before motion")->capture_default_str();
  synth->add_option("--phi", synth_params.phi_deg, "Orbit latitude (degrees)")->capture_default_str();
  synth->add_option("--sweep", synth_params.sweep_deg, "Orbit yaw travel (degrees)")->capture_default_str();
  synth->add_option("--turns", synth_params.turns, "Spiral revolutions")->capture_default_str();
  synth->add_option("--duration-s", synth_params.duration_s, "Random-walk duration")->capture_default_str();
  synth->add_option("--noise-a", synth_params.noise_a, "Accel noise std dev (m/s^2)")->capture_default_str();
  synth->add_option("--noise-w", synth_params.noise_w, "Gyro noise std dev (rad/s)")->capture_default_str();
  synth->add_option("--bursts", synth_params.bursts, "Number of instability bursts")->capture_default_str();
  synth->add_option("--burst-ms", synth_params.burst_ms, "Burst length")->capture_default_str();
  synth->add_option("--burst-scale", burst_scale, "Burst acceleration as a multiple of --a-th")->capture_default_str();
  synth->add_option("--seed", synth_params.seed, "RNG seed")->capture_default_str();
  synth->add_option("--name", log_name, "Output file name inside --out (default <pattern>.jsonl)");
  synth->fallthrough();

  std::string bind = "127.0.0.1:8765";
  int threads = 2;
  CLI::App* serve = app.add_subcommand("serve", "Run the live WebSocket session service");
  serve->add_option("--bind", bind, "host:port")->capture_default_str();
  serve->add_option("--threads", threads, "I/O worker threads")->capture_default_str();
  serve->fallthrough();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("orbitcap");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_storage)
    argv.push_back(a.data());

  try
  {
    app.parse(static_cast<int>(argv.size()), argv.data());
  }
  catch (const CLI::Success& e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError& e)
  {
    app.exit(e);
    return kExitConfig;
  }

  try
  {
    cfg.recapture = parse_recapture_policy(recapture);
    cfg.validate();

    if (*replay)
      return cmd_replay(log_path, cfg, out_dir);
    if (*report)
      return cmd_report(csv_path, cfg.grid, first_is_baseline, out_dir);
    if (*synth)
    {
      synth_params.pattern = parse_synth_pattern(pattern);
      synth_params.burst_accel = burst_scale * cfg.gate.a_th;
      synth_params.validate();
      return cmd_synth(synth_params, out_dir, log_name);
    }
    if (*serve)
      return cmd_serve(bind, cfg, out_dir, threads);
  }
  catch (const InputError& e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  catch (const EnvironmentError& e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEnvironment;
  }
  catch (const Error& e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidConfig ? kExitConfig : kExitInput;
  }
  return kExitConfig;
}

} // namespace orbitcap::cli
