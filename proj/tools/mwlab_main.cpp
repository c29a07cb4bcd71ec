// mwlab command-line laboratory. Every experiment goes through the shared
// library's C API; this binary only parses configs, orchestrates calls, and
// serializes results.
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "iniconfig.hpp"
#include "mwlab.h"

namespace fs = std::filesystem;
using nlohmann::json;
using mwcli::ConfigError;
using mwcli::IniConfig;

namespace {

struct ApiError : std::runtime_error {
  mw_status status;
  ApiError(mw_status s, const std::string& what)
      : std::runtime_error(what), status(s) {}
};

void call(mw_status s, const std::string& context) {
  if (s == MW_OK) return;
  throw ApiError(s, context + ": " + mw_status_name(s) + " (" +
                        mw_last_error() + ")");
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  operator T*() const { return ptr; }
};

using GridH = Handle<mw_grid, mw_grid_free>;
using CFieldH = Handle<mw_cfield, mw_cfield_free>;
using RFieldH = Handle<mw_rfield, mw_rfield_free>;
using VFieldH = Handle<mw_vfield, mw_vfield_free>;
using LoopH = Handle<mw_loop, mw_loop_free>;
using FringeH = Handle<mw_fringe, mw_fringe_free>;
using ReportH = Handle<mw_verify_report, mw_verify_report_free>;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 12345;
  bool dry_run = false;
  int threads = 1;
};

std::string fmt(double v) {
  char buf[32];
  call(mw_format_double(v, buf, sizeof(buf)), "format");
  return buf;
}

void ensure_out_dir(const CommonOpts& opts) {
  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  if (ec || !fs::is_directory(opts.out_dir))
    throw ConfigError("output directory is not writable: " + opts.out_dir);
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out.is_open())
    throw ConfigError("cannot write output file: " + path.string());
  out << j.dump(2) << "\n";
}

// ---- config block readers -------------------------------------------

GridH read_grid(const IniConfig& cfg) {
  cfg.require_section("grid", "this");
  cfg.check_known_keys("grid", {"nx", "ny", "lx", "ly"});
  GridH grid;
  call(mw_grid_create(static_cast<int>(cfg.get_int("grid", "nx")),
                      static_cast<int>(cfg.get_int("grid", "ny")),
                      cfg.get_double("grid", "lx"), cfg.get_double("grid", "ly"),
                      grid.out()),
       "grid");
  return grid;
}

json grid_json(const mw_grid* grid) {
  int nx, ny;
  double lx, ly, hx, hy;
  call(mw_grid_shape(grid, &nx, &ny, &lx, &ly, &hx, &hy), "grid shape");
  return {{"nx", nx}, {"ny", ny}, {"lx", lx}, {"ly", ly}, {"hx", hx}, {"hy", hy}};
}

mw_scheme read_scheme(const IniConfig& cfg, const std::string& section) {
  const std::string s = cfg.get_string(section, "scheme", "spectral");
  if (s == "spectral") return MW_SCHEME_SPECTRAL;
  if (s == "central2") return MW_SCHEME_CENTRAL2;
  throw ConfigError(cfg.path() + ": [" + section +
                    "] scheme must be spectral or central2, got '" + s + "'");
}

// [field] block: synthetic sources or a snapshot file. Returns the field
// and, when synthesized, requires [grid].
CFieldH read_field(const IniConfig& cfg, const CommonOpts& opts, json& echo) {
  cfg.require_section("field", "this");
  const std::string kind = cfg.get_string("field", "kind");
  CFieldH field;
  echo["kind"] = kind;
  if (kind == "snapshot") {
    cfg.check_known_keys("field", {"kind", "path"});
    const std::string path = cfg.get_string("field", "path");
    call(mw_cfield_load(path.c_str(), field.out()), "load snapshot");
    echo["path"] = path;
    return field;
  }
  GridH grid = read_grid(cfg);
  if (kind == "gaussian") {
    cfg.check_known_keys("field",
                         {"kind", "center_x", "center_y", "width", "kx", "ky"});
    const double cx = cfg.get_double("field", "center_x", 0.0);
    const double cy = cfg.get_double("field", "center_y", 0.0);
    const double width = cfg.get_double("field", "width");
    const double kx = cfg.get_double("field", "kx", 0.0);
    const double ky = cfg.get_double("field", "ky", 0.0);
    call(mw_gaussian_packet(grid, cx, cy, width, kx, ky, field.out()),
         "gaussian packet");
    echo.update({{"center_x", cx}, {"center_y", cy}, {"width", width},
                 {"kx", kx}, {"ky", ky}});
  } else if (kind == "plane") {
    cfg.check_known_keys("field", {"kind", "kx", "ky", "amplitude"});
    const double kx = cfg.get_double("field", "kx", 0.0);
    const double ky = cfg.get_double("field", "ky", 0.0);
    const double amp = cfg.get_double("field", "amplitude", 1.0);
    call(mw_plane_wave(grid, kx, ky, amp, field.out()), "plane wave");
    echo.update({{"kx", kx}, {"ky", ky}, {"amplitude", amp}});
  } else if (kind == "vortex") {
    cfg.check_known_keys("field", {"kind", "vortices", "envelope_width"});
    const auto tuples = cfg.get_tuples("field", "vortices", 3);
    if (tuples.empty())
      throw ConfigError(cfg.path() + ": [field] vortices must not be empty");
    std::vector<double> centers;
    std::vector<int> charges;
    json vlist = json::array();
    for (const auto& t : tuples) {
      centers.push_back(t[0]);
      centers.push_back(t[1]);
      charges.push_back(static_cast<int>(t[2]));
      vlist.push_back({{"x", t[0]}, {"y", t[1]}, {"charge", t[2]}});
    }
    const double env = cfg.get_double("field", "envelope_width", 0.0);
    call(mw_vortex_field(grid, centers.data(), charges.data(),
                         static_cast<int>(charges.size()), env, field.out()),
         "vortex field");
    echo["vortices"] = vlist;
    echo["envelope_width"] = env;
  } else if (kind == "random") {
    cfg.check_known_keys("field", {"kind", "max_mode"});
    const int max_mode = static_cast<int>(cfg.get_int("field", "max_mode", 6));
    call(mw_random_field(grid, opts.seed, max_mode, field.out()),
         "random field");
    echo["max_mode"] = max_mode;
    echo["seed"] = opts.seed;
  } else {
    throw ConfigError(cfg.path() +
                      ": [field] kind must be gaussian|plane|vortex|random|"
                      "snapshot, got '" +
                      kind + "'");
  }
  return field;
}

// ---- simulate -------------------------------------------------------

int cmd_simulate(const CommonOpts& opts) {
  IniConfig cfg = IniConfig::parse_file(opts.config_path);
  cfg.check_known_sections({"grid", "packet", "slits", "evolution"});
  GridH grid = read_grid(cfg);

  cfg.require_section("packet", "simulate");
  cfg.check_known_keys("packet",
                       {"x0", "y0", "width_x", "width_y", "kx", "ky"});
  mw_packet_params packet{};
  packet.x0 = cfg.get_double("packet", "x0");
  packet.y0 = cfg.get_double("packet", "y0", 0.0);
  packet.width_x = cfg.get_double("packet", "width_x");
  packet.width_y = cfg.get_double("packet", "width_y");
  packet.kx = cfg.get_double("packet", "kx");
  packet.ky = cfg.get_double("packet", "ky", 0.0);

  cfg.require_section("slits", "simulate");
  cfg.check_known_keys("slits",
                       {"barrier_x", "thickness", "width", "separation", "v0"});
  cfg.require_section("evolution", "simulate");
  cfg.check_known_keys("evolution",
                       {"dt", "steps", "mass", "absorber_cells",
                        "absorber_strength", "screen_x", "snapshot_every"});

  mw_evolution_config evo{};
  evo.dt = cfg.get_double("evolution", "dt");
  evo.n_steps = static_cast<int>(cfg.get_int("evolution", "steps"));
  evo.mass = cfg.get_double("evolution", "mass", 1.0);
  evo.absorber_cells =
      static_cast<int>(cfg.get_int("evolution", "absorber_cells", 24));
  evo.absorber_strength = cfg.get_double("evolution", "absorber_strength", 8.0);
  evo.screen_x = cfg.get_double("evolution", "screen_x");
  evo.snapshot_every =
      static_cast<int>(cfg.get_int("evolution", "snapshot_every", 0));

  mw_slit_geometry slits{};
  slits.barrier_x = cfg.get_double("slits", "barrier_x");
  slits.thickness = cfg.get_double("slits", "thickness");
  slits.width = cfg.get_double("slits", "width");
  slits.separation = cfg.get_double("slits", "separation", 0.0);
  const std::string v0_text = cfg.get_string("slits", "v0", "auto");
  const double kinetic =
      0.5 * (packet.kx * packet.kx + packet.ky * packet.ky) / evo.mass;
  slits.v0 = v0_text == "auto" ? 100.0 * kinetic : cfg.get_double("slits", "v0");

  const double lambda = 2.0 * M_PI / packet.kx;
  const double screen_distance = evo.screen_x - slits.barrier_x;
  const bool double_slit = slits.separation > 0.0;
  const double predicted =
      double_slit ? lambda * screen_distance / slits.separation : 0.0;

  json summary;
  summary["experiment"] = "simulate";
  summary["grid"] = grid_json(grid);
  summary["packet"] = {{"x0", packet.x0}, {"y0", packet.y0},
                       {"width_x", packet.width_x}, {"width_y", packet.width_y},
                       {"kx", packet.kx}, {"ky", packet.ky}};
  summary["slits"] = {{"barrier_x", slits.barrier_x},
                      {"thickness", slits.thickness},
                      {"width", slits.width},
                      {"separation", slits.separation},
                      {"v0", slits.v0}};
  summary["evolution"] = {{"dt", evo.dt},
                          {"steps", evo.n_steps},
                          {"mass", evo.mass},
                          {"absorber_cells", evo.absorber_cells},
                          {"absorber_strength", evo.absorber_strength},
                          {"screen_x", evo.screen_x},
                          {"snapshot_every", evo.snapshot_every}};
  summary["seed"] = opts.seed;
  summary["version"] = mw_version();

  if (opts.dry_run) {
    std::cout << summary.dump(2) << "\n";
    return 0;
  }
  ensure_out_dir(opts);
  std::string snapshot_dir;
  if (evo.snapshot_every > 0) {
    snapshot_dir = (fs::path(opts.out_dir) / "snapshots").string();
    std::error_code ec;
    fs::create_directories(snapshot_dir, ec);
    evo.snapshot_dir = snapshot_dir.c_str();
  }

  FringeH fringe;
  call(mw_run_double_slit(grid, &slits, &evo, &packet, fringe.out()),
       "double slit run");

  const fs::path screen_csv = fs::path(opts.out_dir) / "screen.csv";
  call(mw_fringe_write_csv(fringe, screen_csv.string().c_str()), "screen csv");

  mw_fringe_fit fit{};
  call(mw_fringe_result(fringe, &fit), "fringe fit");
  summary["screen_csv"] = screen_csv.string();
  summary["fit"] = {{"spacing_peaks", fit.spacing_peaks},
                    {"spacing_fft", fit.spacing_fft},
                    {"visibility", fit.visibility},
                    {"n_peaks", fit.n_peaks},
                    {"spacing_reliable", fit.spacing_reliable != 0}};
  if (double_slit) {
    const double deviation =
        100.0 * std::abs(fit.spacing_peaks - predicted) / predicted;
    summary["prediction"] = {{"fraunhofer_spacing", predicted},
                             {"wavelength", lambda},
                             {"screen_distance", screen_distance},
                             {"spacing_deviation_pct", deviation}};
  }

  write_json(fs::path(opts.out_dir) / "summary.json", summary);
  std::cout << "simulate: spacing_peaks=" << fmt(fit.spacing_peaks)
            << " spacing_fft=" << fmt(fit.spacing_fft)
            << " visibility=" << fmt(fit.visibility);
  if (double_slit) std::cout << " predicted=" << fmt(predicted);
  std::cout << "\n";

  if (double_slit && !fit.spacing_reliable) {
    std::cerr << "simulate: fringe fit unreliable\n";
    return 1;
  }
  return 0;
}

// ---- currents -------------------------------------------------------

int cmd_currents(const CommonOpts& opts) {
  IniConfig cfg = IniConfig::parse_file(opts.config_path);
  cfg.check_known_sections({"grid", "field", "currents"});
  json field_echo;
  CFieldH field = read_field(cfg, opts, field_echo);
  cfg.check_known_keys("currents", {"mass", "eps0", "scheme"});
  const double mass = cfg.get_double("currents", "mass", 1.0);
  const double eps0 = cfg.get_double("currents", "eps0", -1.0);
  const mw_scheme scheme = cfg.has_section("currents")
                               ? read_scheme(cfg, "currents")
                               : MW_SCHEME_SPECTRAL;

  json summary;
  summary["experiment"] = "currents";
  summary["field"] = field_echo;
  summary["mass"] = mass;
  summary["seed"] = opts.seed;
  if (opts.dry_run) {
    std::cout << summary.dump(2) << "\n";
    return 0;
  }
  ensure_out_dir(opts);

  double n = 0.0;
  call(mw_norm(field, &n), "norm");
  summary["norm"] = n;

  RFieldH rho;
  call(mw_density(field, rho.out()), "density");
  VFieldH current;
  call(mw_schrodinger_current(field, mass, scheme, current.out()),
       "schrodinger current");
  VFieldH normalized;
  call(mw_normalized_current(field, eps0, scheme, normalized.out()),
       "normalized current");
  VFieldH nfield;
  call(mw_n_field(field, eps0, nfield.out()), "n field");

  int nx = 0, ny = 0;
  call(mw_cfield_grid(field, &nx, &ny, nullptr, nullptr), "field grid");
  std::vector<uint8_t> mask(static_cast<std::size_t>(nx) * ny);
  call(mw_vfield_mask(normalized, mask.data(), mask.size()), "mask");
  std::size_t undefined = 0;
  for (uint8_t m : mask)
    if (!m) ++undefined;
  summary["undefined_points"] = undefined;

  const fs::path base(opts.out_dir);
  call(mw_rfield_write_csv(rho, (base / "density.csv").string().c_str()),
       "density csv");
  call(mw_vfield_write_csv(current, (base / "current.csv").string().c_str()),
       "current csv");
  call(mw_vfield_write_csv(normalized,
                           (base / "normalized_current.csv").string().c_str()),
       "normalized current csv");
  call(mw_vfield_write_csv(nfield, (base / "n_field.csv").string().c_str()),
       "n field csv");
  summary["outputs"] = {"density.csv", "current.csv", "normalized_current.csv",
                        "n_field.csv"};
  write_json(base / "summary.json", summary);
  std::cout << "currents: norm=" << fmt(n) << " undefined=" << undefined
            << "\n";
  return 0;
}

// ---- winding --------------------------------------------------------

int cmd_winding(const CommonOpts& opts) {
  IniConfig cfg = IniConfig::parse_file(opts.config_path);
  cfg.check_known_sections({"grid", "field", "loop", "winding"});
  json field_echo;
  CFieldH field = read_field(cfg, opts, field_echo);

  cfg.require_section("loop", "winding");
  cfg.check_known_keys("loop", {"center_x", "center_y", "radius", "points"});
  const double cx = cfg.get_double("loop", "center_x", 0.0);
  const double cy = cfg.get_double("loop", "center_y", 0.0);
  const double radius = cfg.get_double("loop", "radius");
  const int points = static_cast<int>(cfg.get_int("loop", "points", 512));

  cfg.check_known_keys("winding", {"eps0", "scheme", "scan"});
  const double eps0 = cfg.get_double("winding", "eps0", -1.0);
  const mw_scheme scheme = cfg.has_section("winding")
                               ? read_scheme(cfg, "winding")
                               : MW_SCHEME_SPECTRAL;
  const bool scan = cfg.get_bool("winding", "scan", true);

  json summary;
  summary["experiment"] = "winding";
  summary["field"] = field_echo;
  summary["loop"] = {{"center_x", cx}, {"center_y", cy}, {"radius", radius},
                     {"points", points}};
  summary["seed"] = opts.seed;
  if (opts.dry_run) {
    std::cout << summary.dump(2) << "\n";
    return 0;
  }
  ensure_out_dir(opts);

  int nx = 0, ny = 0;
  double lx = 0, ly = 0;
  call(mw_cfield_grid(field, &nx, &ny, &lx, &ly), "field grid");
  GridH grid;
  call(mw_grid_create(nx, ny, lx, ly, grid.out()), "grid");

  LoopH loop;
  call(mw_circle_loop(grid, cx, cy, radius, points, loop.out()), "loop");
  mw_winding_result w{};
  call(mw_winding_number(field, loop, eps0, scheme, &w), "winding number");

  summary["winding"] = {{"integral", w.integral},
                        {"k", w.k},
                        {"residual", w.residual},
                        {"unwrapped", w.unwrapped},
                        {"estimators_agree", w.estimators_agree != 0}};

  if (scan) {
    std::size_t count = 0;
    call(mw_vortex_scan(field, eps0, nullptr, 0, &count), "vortex count");
    std::vector<mw_vortex> vortices(count);
    if (count > 0)
      call(mw_vortex_scan(field, eps0, vortices.data(), count, &count),
           "vortex scan");
    json scan_json = json::array();
    long total = 0;
    for (const mw_vortex& v : vortices) {
      scan_json.push_back({{"ix", v.ix},
                           {"iy", v.iy},
                           {"charge", v.charge},
                           {"low_density", v.low_density != 0},
                           {"under_resolved", v.under_resolved != 0}});
      total += v.charge;
    }
    summary["vortex_scan"] = scan_json;
    summary["vortex_total_charge"] = total;
  }

  write_json(fs::path(opts.out_dir) / "winding.json", summary);
  std::cout << "winding: k=" << w.k << " residual=" << fmt(w.residual)
            << " agree=" << (w.estimators_agree ? "yes" : "no") << "\n";
  return w.estimators_agree ? 0 : 1;
}

// ---- predict --------------------------------------------------------

int cmd_predict(const CommonOpts& opts) {
  IniConfig cfg = IniConfig::parse_file(opts.config_path);
  cfg.check_known_sections({"conventional", "selfaction", "screen", "spin"});
  cfg.require_section("conventional", "predict");
  cfg.check_known_keys("conventional",
                       {"wavelength", "separation", "distance"});
  mw_conventional_setup setup{};
  setup.wavelength = cfg.get_double("conventional", "wavelength");
  setup.slit_separation = cfg.get_double("conventional", "separation");
  setup.screen_distance = cfg.get_double("conventional", "distance");

  cfg.check_known_keys("selfaction", {"q", "q_prime"});
  const double q = cfg.get_double("selfaction", "q", 1.0);
  const double q_prime = cfg.get_double("selfaction", "q_prime", 1.0);

  const double spacing =
      setup.wavelength * setup.screen_distance / setup.slit_separation;
  cfg.check_known_keys("screen", {"half_width", "samples"});
  const double half_width =
      cfg.get_double("screen", "half_width", 3.0 * spacing);
  const long samples = cfg.get_int("screen", "samples", 2001);
  if (samples < 16)
    throw ConfigError(cfg.path() + ": [screen] samples must be at least 16");

  json summary;
  summary["experiment"] = "predict";
  summary["conventional"] = {{"wavelength", setup.wavelength},
                             {"separation", setup.slit_separation},
                             {"distance", setup.screen_distance}};
  summary["selfaction"] = {{"q", q}, {"q_prime", q_prime}};
  summary["screen"] = {{"half_width", half_width}, {"samples", samples}};
  if (opts.dry_run) {
    std::cout << summary.dump(2) << "\n";
    return 0;
  }
  ensure_out_dir(opts);

  const double momentum = 2.0 * M_PI / setup.wavelength;
  std::vector<double> ys(samples), self(samples), conventional(samples);
  for (long i = 0; i < samples; ++i) {
    const double y = -half_width + 2.0 * half_width * i / (samples - 1);
    ys[i] = y;
    double exact = 0.0, paraxial = 0.0;
    call(mw_path_difference(&setup, y, &exact, &paraxial), "path difference");
    const double s = q * q_prime * momentum * paraxial;
    double intensity = 0.0;
    call(mw_fringe_intensity(s, 1.0, &intensity), "fringe intensity");
    self[i] = 0.25 * intensity;  // normalized to peak 1
    call(mw_conventional_intensity(&setup, y, MW_PHASE_HALF_ANGLE,
                                   &conventional[i]),
         "conventional intensity");
  }

  const fs::path pattern_csv = fs::path(opts.out_dir) / "pattern.csv";
  {
    std::ofstream out(pattern_csv);
    if (!out.is_open())
      throw ConfigError("cannot write output file: " + pattern_csv.string());
    out << "y,I_self,I_conventional\n";
    for (long i = 0; i < samples; ++i)
      out << fmt(ys[i]) << ',' << fmt(self[i]) << ',' << fmt(conventional[i])
          << "\n";
  }

  double residual = 0.0;
  call(mw_equivalence_residual(&setup, momentum, 1, &residual),
       "equivalence residual");
  double qprime_first = 0.0;
  int in_range = 0;
  call(mw_extract_qprime(setup.wavelength, setup.wavelength, 1, &qprime_first,
                         &in_range),
       "extract qprime");

  summary["pattern_csv"] = pattern_csv.string();
  summary["fraunhofer_spacing"] = spacing;
  summary["equivalence_residual_full_coupling"] = residual;
  summary["qprime_at_first_maximum"] = qprime_first;
  summary["qprime_in_unit_interval"] = in_range != 0;

  if (cfg.has_section("spin")) {
    cfg.check_known_keys("spin", {"epsilon"});
    const double epsilon = cfg.get_double("spin", "epsilon", 1e-3);
    FringeH base;
    call(mw_fringe_from_samples(ys.data(), conventional.data(), ys.size(), 0.0,
                                base.out()),
         "pattern handle");
    FringeH shifted;
    mw_spin_shift_result shift{};
    call(mw_spin_shift(base, epsilon, shifted.out(), &shift), "spin shift");
    const fs::path shifted_csv = fs::path(opts.out_dir) / "pattern_shifted.csv";
    call(mw_fringe_write_csv(shifted, shifted_csv.string().c_str()),
         "shifted csv");
    summary["spin_shift"] = {{"epsilon", epsilon},
                             {"first_peak_y", shift.first_peak_y},
                             {"shifted_peak_y", shift.shifted_peak_y},
                             {"peak_shift", shift.peak_shift},
                             {"relative_shift", shift.relative_shift},
                             {"shift_bound", shift.shift_bound},
                             {"csv", shifted_csv.string()}};
  }

  write_json(fs::path(opts.out_dir) / "summary.json", summary);
  std::cout << "predict: spacing=" << fmt(spacing)
            << " equivalence_residual=" << fmt(residual) << "\n";
  return 0;
}

// ---- visibility sweep -----------------------------------------------

int cmd_visibility_sweep(const CommonOpts& opts) {
  IniConfig cfg = IniConfig::parse_file(opts.config_path);
  cfg.check_known_sections({"sweep"});
  cfg.require_section("sweep", "visibility-sweep");
  cfg.check_known_keys("sweep", {"qq_min", "qq_max", "steps", "values",
                                 "k_min", "k_max", "weights"});

  std::vector<double> qq;
  if (cfg.has("sweep", "values")) {
    qq = cfg.get_list("sweep", "values");
  } else {
    const double lo = cfg.get_double("sweep", "qq_min");
    const double hi = cfg.get_double("sweep", "qq_max");
    const long steps = cfg.get_int("sweep", "steps", 101);
    if (steps < 2)
      throw ConfigError(cfg.path() + ": [sweep] steps must be at least 2");
    for (long i = 0; i < steps; ++i)
      qq.push_back(lo + (hi - lo) * i / (steps - 1));
  }
  const int k_min = static_cast<int>(cfg.get_int("sweep", "k_min", 0));
  const int k_max = static_cast<int>(cfg.get_int("sweep", "k_max", 200));
  std::vector<double> weights;
  if (cfg.has("sweep", "weights")) {
    weights = cfg.get_list("sweep", "weights");
    if (weights.size() != static_cast<std::size_t>(k_max - k_min + 1))
      throw ConfigError(cfg.path() +
                        ": [sweep] weights must have one entry per winding "
                        "class in [k_min, k_max]");
  }

  json summary;
  summary["experiment"] = "visibility-sweep";
  summary["k_min"] = k_min;
  summary["k_max"] = k_max;
  summary["points"] = qq.size();
  summary["weighted"] = !weights.empty();
  if (opts.dry_run) {
    std::cout << summary.dump(2) << "\n";
    return 0;
  }
  ensure_out_dir(opts);

  std::vector<double> vis(qq.size(), 0.0);
  const double* w = weights.empty() ? nullptr : weights.data();
  const int n_threads = std::max(1, opts.threads);
  if (n_threads == 1 || qq.size() < 2) {
    call(mw_visibility_sweep(qq.data(), qq.size(), k_min, k_max, w, vis.data()),
         "visibility sweep");
  } else {
    // Sweep points are independent; chunked threads write disjoint slices.
    std::vector<std::thread> workers;
    std::vector<mw_status> status(n_threads, MW_OK);
    const std::size_t chunk = (qq.size() + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(qq.size(), begin + chunk);
      if (begin >= end) break;
      workers.emplace_back([&, begin, end, t] {
        status[t] = mw_visibility_sweep(qq.data() + begin, end - begin, k_min,
                                        k_max, w, vis.data() + begin);
      });
    }
    for (auto& th : workers) th.join();
    for (mw_status s : status) call(s, "visibility sweep");
  }

  const fs::path sweep_csv = fs::path(opts.out_dir) / "sweep.csv";
  {
    std::ofstream out(sweep_csv);
    if (!out.is_open())
      throw ConfigError("cannot write output file: " + sweep_csv.string());
    out << "qq_prime,visibility\n";
    for (std::size_t i = 0; i < qq.size(); ++i)
      out << fmt(qq[i]) << ',' << fmt(vis[i]) << "\n";
  }
  summary["sweep_csv"] = sweep_csv.string();
  write_json(fs::path(opts.out_dir) / "summary.json", summary);
  std::cout << "visibility-sweep: " << qq.size() << " points -> "
            << sweep_csv.string() << "\n";
  return 0;
}

// ---- estimate-coupling ----------------------------------------------

int cmd_estimate(const CommonOpts& opts) {
  IniConfig cfg = IniConfig::parse_file(opts.config_path);
  cfg.check_known_sections({"coupling", "demo"});
  cfg.require_section("coupling", "estimate-coupling");
  cfg.check_known_keys("coupling", {"e0", "v_t"});
  const double e0 = cfg.get_quantity("coupling", "e0", {{"eV", 1.0}});
  const double v_t =
      cfg.get_quantity("coupling", "v_t", {{"V", 1.0}, {"kV", 1000.0}});
  double demo_volts = 50000.0;
  if (cfg.has_section("demo")) {
    cfg.check_known_keys("demo", {"voltage"});
    demo_volts =
        cfg.get_quantity("demo", "voltage", {{"V", 1.0}, {"kV", 1000.0}});
  }

  json summary;
  summary["experiment"] = "estimate-coupling";
  summary["inputs"] = {{"e0_ev", e0}, {"v_t_volt", v_t},
                       {"demo_volts", demo_volts}};
  if (opts.dry_run) {
    std::cout << summary.dump(2) << "\n";
    return 0;
  }
  ensure_out_dir(opts);

  mw_coupling_estimate est{};
  call(mw_virial_estimate(e0, v_t, &est), "virial estimate");
  mw_demo_numbers demo{};
  call(mw_demo_experiment_numbers(demo_volts, &demo), "demo numbers");

  summary["virial"] = {
      {"t_ev", est.t_ev},
      {"v_ev", est.v_ev},
      {"lambda_t_angstrom", est.lambda_t_angstrom},
      {"v_over_c", est.v_over_c},
      {"v_t_volt", est.v_t_volt},
      {"q_prime_ratio", est.q_prime_ratio},
      {"q_prime_quoted", est.q_prime_quoted},
      {"notes",
       "q_prime_ratio = |<V>|/V_T; the quoted q' ~ 1.8 with V_T ~ 20 V is an "
       "order-of-magnitude statement; both reported"}};
  summary["demo"] = {
      {"accelerating_volts", demo.accelerating_volts},
      {"lambda_angstrom", demo.lambda_angstrom},
      {"lambda_quoted_angstrom", demo.lambda_quoted_angstrom},
      {"transverse_lambda_quoted_angstrom",
       demo.transverse_lambda_quoted_angstrom},
      {"transverse_volt_quoted", demo.transverse_volt_quoted},
      {"lambda_13p6_angstrom", demo.lambda_13p6_angstrom}};

  write_json(fs::path(opts.out_dir) / "estimate.json", summary);
  std::cout << "estimate-coupling: T=" << fmt(est.t_ev)
            << " eV, V=" << fmt(est.v_ev)
            << " eV, lambda_T=" << fmt(est.lambda_t_angstrom)
            << " A, q'=" << fmt(est.q_prime_ratio) << "\n";
  return 0;
}

// ---- verify ---------------------------------------------------------

int cmd_verify(const CommonOpts& opts, bool perturb_gamma) {
  json summary;
  summary["experiment"] = "verify";
  summary["seed"] = opts.seed;
  summary["perturb_gamma"] = perturb_gamma;
  if (opts.dry_run) {
    std::cout << summary.dump(2) << "\n";
    return 0;
  }
  ensure_out_dir(opts);

  ReportH report;
  call(mw_verify_run(opts.seed, perturb_gamma ? 1 : 0, report.out()), "verify");
  std::size_t n = 0;
  call(mw_verify_report_size(report, &n), "verify size");

  json checks = json::array();
  std::size_t failures = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const char* suite = nullptr;
    const char* name = nullptr;
    double measured = 0.0, tolerance = 0.0;
    int passed = 0;
    call(mw_verify_report_entry(report, i, &suite, &name, &measured, &tolerance,
                                &passed),
         "verify entry");
    checks.push_back({{"suite", suite},
                      {"name", name},
                      {"measured", measured},
                      {"tolerance", tolerance},
                      {"passed", passed != 0}});
    if (!passed) ++failures;
    std::cout << (passed ? "PASS" : "FAIL") << " " << suite << "." << name
              << " measured=" << fmt(measured) << " tolerance=" << fmt(tolerance)
              << "\n";
  }
  summary["checks"] = checks;
  summary["failures"] = failures;
  write_json(fs::path(opts.out_dir) / "verify.json", summary);
  std::cout << "verify: " << (n - failures) << "/" << n << " checks passed\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mwlab: matter-wave interference laboratory"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool perturb_gamma = false;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config)
      sub->add_option("--config", opts.config_path, "experiment config file")
          ->required();
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--seed", opts.seed, "seed for random-field generators");
    sub->add_flag("--dry-run", opts.dry_run,
                  "validate and echo the resolved config, write nothing");
    sub->add_option("--threads", opts.threads,
                    "worker threads for sweep experiments");
    return sub;
  };

  auto* simulate = add_common(
      app.add_subcommand("simulate", "double-slit propagation experiment"),
      true);
  auto* currents = add_common(
      app.add_subcommand("currents", "probability currents of a field"), true);
  auto* winding = add_common(
      app.add_subcommand("winding", "loop winding numbers and vortex scan"),
      true);
  auto* predict = add_common(
      app.add_subcommand("predict",
                         "self-action vs path-difference fringe predictors"),
      true);
  auto* sweep = add_common(
      app.add_subcommand("visibility-sweep",
                         "fringe visibility over coupling strengths"),
      true);
  auto* estimate = add_common(
      app.add_subcommand("estimate-coupling",
                         "virial coupling estimate and reference numbers"),
      true);
  auto* verify = add_common(
      app.add_subcommand("verify", "run the numerical invariant suites"),
      false);
  verify->add_flag("--perturb-gamma", perturb_gamma,
                   "inject a spin-algebra fault (the algebra suite must fail)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(opts);
    if (currents->parsed()) return cmd_currents(opts);
    if (winding->parsed()) return cmd_winding(opts);
    if (predict->parsed()) return cmd_predict(opts);
    if (sweep->parsed()) return cmd_visibility_sweep(opts);
    if (estimate->parsed()) return cmd_estimate(opts);
    if (verify->parsed()) return cmd_verify(opts, perturb_gamma);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.status == MW_ERR_NUMERICAL ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
