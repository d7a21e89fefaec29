#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maim/config.hpp"
#include "maim/errors.hpp"
#include "maim/io.hpp"

namespace fs = std::filesystem;

namespace {

using namespace maim;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::string seed;  // empty = keep the configured seed
  std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "experiment configuration file")
      ->required();
  sub->add_option("--out", args.out_dir, "output directory (created if missing)");
  sub->add_option("--seed", args.seed, "master seed override");
  sub->add_option("--override", args.overrides, "KEY=VALUE configuration override (repeatable)");
}

RunSpec load_spec(const CommonArgs& args) {
  KeyValues kv = parse_config_file(args.config_path);
  for (const std::string& o : args.overrides) apply_override(kv, o);
  if (!args.seed.empty()) kv["seed"] = args.seed;
  return make_run_spec(kv);
}

fs::path ensure_out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw IoError("cannot create output directory: " + dir);
  return p;
}

std::string scheme_token(Scheme s) { return std::to_string(static_cast<int>(s)); }

Detector natural_detector(Scheme s) {
  return s == Scheme::Random ? Detector::MLFull : Detector::MLAnchor;
}

bool compatible(Scheme s, Detector d) {
  if (s == Scheme::Random) return d != Detector::MLAnchor;
  if (s == Scheme::GlobalMaxMin || s == Scheme::JointMaxMin) return d == Detector::MLAnchor;
  return true;
}

void append_rows(std::vector<BerCsvRow>& rows, const SimConfig& cfg, const std::string& scheme,
                 const std::string& detector, const BerCurve& curve, const AbepCurve* bound) {
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const BerPoint& p = curve.points[i];
    BerCsvRow r;
    r.scheme = scheme;
    r.detector = detector;
    r.L = cfg.L;
    r.N = cfg.N;
    r.M = cfg.M;
    r.rho_tar = cfg.rho_tar;
    r.snr_db = p.snr_db;
    r.bits_sent = p.bits_sent;
    r.bit_errors = p.bit_errors;
    r.ber = p.ber();
    if (bound) r.ber_bound = bound->bound[i];
    r.seed = cfg.seed;
    rows.push_back(std::move(r));
  }
}

void append_bound_rows(std::vector<BerCsvRow>& rows, const SimConfig& cfg,
                       const std::string& scheme, const AbepCurve& bound) {
  for (std::size_t i = 0; i < bound.snr_db.size(); ++i) {
    BerCsvRow r;
    r.scheme = scheme;
    r.detector = "ml_anchor";
    r.L = cfg.L;
    r.N = cfg.N;
    r.M = cfg.M;
    r.rho_tar = cfg.rho_tar;
    r.snr_db = bound.snr_db[i];
    r.ber_bound = bound.bound[i];
    r.seed = cfg.seed;
    rows.push_back(std::move(r));
  }
}

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void write_outputs(const fs::path& dir, const std::string& stem,
                   const std::vector<BerCsvRow>& rows) {
  const std::string csv = (dir / (stem + ".csv")).string();
  const std::string svg = (dir / (stem + ".svg")).string();
  write_ber_csv(csv, rows);
  write_ber_svg(svg, read_ber_csv(csv));  // plot from the file it just wrote
  std::cerr << "wrote " << csv << " and " << svg << '\n';
}

int do_grid(const CommonArgs& args) {
  const RunSpec spec = load_spec(args);
  const fs::path dir = ensure_out_dir(args.out_dir);
  const SamplingGrid grid =
      build_grid(spec.sim.half_extent_G, spec.sim.wavelength, spec.sim.rho_tar);
  const CellPartition part = partition_cells(grid, spec.sim.N);
  const std::string csv = (dir / "grid.csv").string();
  const std::string svg = (dir / "grid.svg").string();
  write_grid_csv(csv, grid, part);
  write_grid_svg(svg, grid, part, nullptr);
  std::cerr << grid.Q() << " sampling points (" << grid.nx << " per axis), " << part.N
            << " cells (" << part.N1 << "x" << part.N2 << ")\n";
  std::cerr << "wrote " << csv << " and " << svg << '\n';
  return 0;
}

int do_anchors(const CommonArgs& args) {
  const RunSpec spec = load_spec(args);
  const fs::path dir = ensure_out_dir(args.out_dir);
  const SimConfig& cfg = spec.sim;
  const SamplingGrid grid = build_grid(cfg.half_extent_G, cfg.wavelength, cfg.rho_tar);
  const CellPartition part = partition_cells(grid, cfg.N);
  const PathProfile profile = realization_profile(cfg, 0);
  const ChannelSet channels = build_channel_set(profile, grid);
  const Constellation cons = build_qam(cfg.M);
  const AnchorSet anchors =
      select_anchors(cfg.scheme, {grid, part, channels, cons, cfg.I_max});
  const std::string csv = (dir / "anchors.csv").string();
  const std::string svg = (dir / "anchors.svg").string();
  write_anchor_csv(csv, anchors, grid, part);
  write_grid_svg(svg, grid, part, &anchors);
  std::cerr << scheme_name(cfg.scheme) << ": " << anchors.N() << " anchors\n";
  std::cerr << "wrote " << csv << " and " << svg << '\n';
  return 0;
}

int do_ber(const CommonArgs& args) {
  const RunSpec spec = load_spec(args);
  const fs::path dir = ensure_out_dir(args.out_dir);
  const SimConfig& cfg = spec.sim;
  std::vector<BerCsvRow> rows;

  Stopwatch watch;
  std::cerr << "scheme " << scheme_token(cfg.scheme) << " (" << detector_name(cfg.detector)
            << "): " << cfg.snr_db.size() << " SNR points, " << cfg.realizations
            << " realizations...\n";
  const BerCurve curve = run_ber(cfg);
  AbepCurve bound;
  if (spec.include_bound) bound = run_bound(cfg);
  append_rows(rows, cfg, scheme_token(cfg.scheme), detector_name(cfg.detector), curve,
              spec.include_bound ? &bound : nullptr);
  if (spec.include_baseline) {
    const BaselineResult base = qam_baseline(cfg);
    SimConfig base_cfg = cfg;
    base_cfg.N = 1;
    base_cfg.M = base.effective_M;
    append_rows(rows, base_cfg, "baseline", "ml_anchor", base.curve, nullptr);
  }
  std::cerr << "finished in " << watch.seconds() << " s\n";
  write_outputs(dir, "ber", rows);
  return 0;
}

int do_abep(const CommonArgs& args) {
  const RunSpec spec = load_spec(args);
  const fs::path dir = ensure_out_dir(args.out_dir);
  const AbepCurve bound = run_bound(spec.sim);
  std::vector<BerCsvRow> rows;
  append_bound_rows(rows, spec.sim, scheme_token(spec.sim.scheme), bound);
  write_outputs(dir, "abep", rows);
  return 0;
}

int do_sweep(const CommonArgs& args) {
  const RunSpec spec = load_spec(args);
  const fs::path dir = ensure_out_dir(args.out_dir);
  std::vector<BerCsvRow> rows;

  for (Scheme sch : spec.scheme_list) {
    SimConfig cfg = spec.sim;
    cfg.scheme = sch;
    if (!compatible(sch, cfg.detector)) cfg.detector = natural_detector(sch);
    Stopwatch watch;
    std::cerr << "scheme " << scheme_token(sch) << " (" << detector_name(cfg.detector) << ")...";
    const BerCurve curve = run_ber(cfg);
    AbepCurve bound;
    const bool with_bound = spec.include_bound && sch != Scheme::Random;
    if (with_bound) bound = run_bound(cfg);
    append_rows(rows, cfg, scheme_token(sch), detector_name(cfg.detector), curve,
                with_bound ? &bound : nullptr);
    std::cerr << " " << watch.seconds() << " s\n";
  }
  if (spec.include_baseline) {
    Stopwatch watch;
    std::cerr << "baseline...";
    const BaselineResult base = qam_baseline(spec.sim);
    SimConfig base_cfg = spec.sim;
    base_cfg.N = 1;
    base_cfg.M = base.effective_M;
    append_rows(rows, base_cfg, "baseline", "ml_anchor", base.curve, nullptr);
    std::cerr << " " << watch.seconds() << " s\n";
  }
  write_outputs(dir, "sweep", rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"movable-antenna index modulation link simulator"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* grid_cmd = app.add_subcommand("grid", "emit the sampling grid and cell layout");
  CLI::App* anchors_cmd = app.add_subcommand("anchors", "select and emit anchor ports");
  CLI::App* ber_cmd = app.add_subcommand("ber", "Monte Carlo BER run for one scheme");
  CLI::App* abep_cmd = app.add_subcommand("abep", "analytical union bound curve");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "BER runs over a scheme list");
  for (CLI::App* sub : {grid_cmd, anchors_cmd, ber_cmd, abep_cmd, sweep_cmd})
    add_common(sub, args);

  try {
    app.parse(argc, argv);
    if (grid_cmd->parsed()) return do_grid(args);
    if (anchors_cmd->parsed()) return do_anchors(args);
    if (ber_cmd->parsed()) return do_ber(args);
    if (abep_cmd->parsed()) return do_abep(args);
    if (sweep_cmd->parsed()) return do_sweep(args);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const maim::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
