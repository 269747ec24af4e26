#include "decaycert_cli/commands.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <decaycert/constants.hpp>
#include <decaycert/hilbert_scale.hpp>
#include <decaycert/matrix_market.hpp>
#include <decaycert/models.hpp>
#include <decaycert/random.hpp>
#include <decaycert/rate_bounds.hpp>
#include <decaycert/semigroup.hpp>
#include <decaycert/spectrum.hpp>

#include "decaycert_cli/report.hpp"

namespace decaycert::cli {
namespace {

struct Options {
  std::string matrix_a;
  std::string matrix_d;
  std::string model;
  std::vector<double> thetas;
  std::vector<double> bs;
  double t_max = 0.0;  // 0 selects 10/omega
  int t_points = 64;
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  std::string output;
  std::string regions_output;
  std::string format;
  std::string u0_path;
  std::string u1_path;
  bool no_timestamp = false;
  std::optional<double> nu;
  int sweep_points = 129;
  double tol_eig = 1e-8;
  double tol_form = 1e-9;
  double tol_inclusion = 1e-8;
  double tol_envelope = 1e-8;
  double tol_audit = 1e-9;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Output {
 public:
  Output(const Options& opts, std::ostream& fallback) : path_(opts.output), fallback_(fallback) {}

  void write(const std::string& text) const { write_to(path_, text); }

  void write_to(const std::string& path, const std::string& text) const {
    if (path.empty()) {
      fallback_ << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::FileNotFound, "cannot write output file '" + path + "'");
    file << text;
  }

 private:
  std::string path_;
  std::ostream& fallback_;
};

struct LoadedSystem {
  SystemPair sys;
  Json provenance;
};

LoadedSystem load_system(const Options& opts) {
  const bool have_files = !opts.matrix_a.empty() || !opts.matrix_d.empty();
  if (have_files && !opts.model.empty()) {
    throw Error(ErrorKind::InvalidArgument, "use either --model or --matrix-a/--matrix-d, not both");
  }
  if (!opts.model.empty()) {
    const ModelSpec spec = parse_model_spec(opts.model);
    Json prov{{"model", spec.to_string()}};
    if (spec.kind == ModelKind::RandomSectorial) prov["generator"] = Rng::kName;
    return {build_model(spec), prov};
  }
  if (opts.matrix_a.empty() || opts.matrix_d.empty()) {
    throw Error(ErrorKind::InvalidArgument, "both --matrix-a and --matrix-d are required (or --model)");
  }
  const Matrix a = read_matrix_market_file(opts.matrix_a);
  const Matrix d = read_matrix_market_file(opts.matrix_d);
  return {validate_system(a, d), Json{{"matrix_a", opts.matrix_a}, {"matrix_d", opts.matrix_d}}};
}

Vector load_vector(const std::string& path, Index n) {
  if (path.empty()) return Vector::Zero(n);
  const Matrix m = read_matrix_market_file(path);
  if (m.cols() != 1 || m.rows() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "initial vector '" + path + "' must be " + std::to_string(n) + "x1");
  }
  return m.col(0);
}

ConstantSet constants_with_override(const SystemPair& sys, const Options& opts) {
  ConstantSet c = compute_constants(sys);
  if (opts.nu) {
    c.nu = *opts.nu;
    c.sector_defined = std::isfinite(*opts.nu);
  }
  return c;
}

Json base_report(const std::string& command, const Options& opts, const Json& provenance) {
  Json j{{"schema", kSchema}, {"tool_version", kVersion}, {"command", command}, {"status", "pass"}};
  j["input"] = provenance;
  j["rng"] = Rng::kName;
  j["seed"] = opts.seed;
  j["samples"] = opts.samples;
  return j;
}

void finish_report(Json& j, const Options& opts, std::chrono::steady_clock::time_point start) {
  if (opts.no_timestamp) return;
  j["timestamp"] = utc_timestamp();
  j["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<double> thetas_for(const Options& opts, const RateCertificate& cert) {
  if (!opts.thetas.empty()) {
    for (double t : opts.thetas) {
      if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "--theta values must be positive");
    }
    return opts.thetas;
  }
  return {cert.theta_star};
}

std::string eigenvalue_csv(const SpectrumReport& report) {
  std::string csv = "re,im\n";
  for (const auto& e : report.eigenvalues) {
    csv += format_double(e.lambda.real()) + "," + format_double(e.lambda.imag()) + "\n";
  }
  return csv;
}

// Boundary polylines of each sector region: the vertical edge Re = -omega
// and the two slanted rays out to Re = -extent, 256 points per edge.
std::string region_boundary_csv(const SpectrumReport& report) {
  constexpr int kPoints = 256;
  double extent = 0.0;
  for (const auto& e : report.eigenvalues) extent = std::max(extent, std::abs(e.lambda.real()));
  std::string csv = "region,edge,re,im\n";
  for (const RegionReport& r : report.regions) {
    if (r.region.kind != RegionKind::Proposition && r.region.kind != RegionKind::Theorem) continue;
    const SectorRegion& s = r.region.region;
    const double reach = std::max({1.5 * extent, 2.0 * s.omega, 1.0});
    const double top = s.M * s.omega + s.b;
    auto emit = [&](const char* edge, double re, double im) {
      csv += "\"" + r.region.label + "\"," + edge + "," + format_double(re) + "," + format_double(im) + "\n";
    };
    for (int k = 0; k < kPoints; ++k) {
      const double f = static_cast<double>(k) / (kPoints - 1);
      emit("vertical", -s.omega, -top + 2.0 * top * f);
    }
    for (const char* edge : {"upper", "lower"}) {
      const double sign = std::string(edge) == "upper" ? 1.0 : -1.0;
      for (int k = 0; k < kPoints; ++k) {
        const double re = -s.omega - (reach - s.omega) * static_cast<double>(k) / (kPoints - 1);
        emit(edge, re, sign * (s.M * std::abs(re) + s.b));
      }
    }
  }
  return csv;
}

std::string decay_csv(const DecayCurve& curve) {
  std::string csv = "t,theta_norm,energy_norm,envelope,kappa_envelope\n";
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    csv += format_double(curve.times[i]) + "," + format_double(curve.theta_norm[i]) + "," +
           format_double(curve.energy_norm[i]) + "," + format_double(curve.envelope[i]) + "," +
           format_double(curve.kappa_envelope[i]) + "\n";
  }
  return csv;
}

std::string trajectory_csv(const Trajectory& traj) {
  const std::size_t n = traj.u.empty() ? 0 : static_cast<std::size_t>(traj.u.front().size());
  std::string csv = "t";
  for (const char* name : {"u", "du"}) {
    for (std::size_t k = 0; k < n; ++k) {
      csv += std::string(",") + name + std::to_string(k) + "_re," + name + std::to_string(k) + "_im";
    }
  }
  csv += "\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    csv += format_double(traj.times[i]);
    for (const Vector* v : {&traj.u[i], &traj.du[i]}) {
      for (Index k = 0; k < v->size(); ++k) {
        csv += "," + format_double((*v)(k).real()) + "," + format_double((*v)(k).imag());
      }
    }
    csv += "\n";
  }
  return csv;
}

const char* kRefusal = "certificate refused: delta <= 0";

// certify and spectrum share the pipeline up to the inclusion checks.
int cmd_certify(const Options& opts, const std::string& command, const Output& output,
                std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const bool full = command == "certify";
  const std::string format = opts.format.empty() ? (full ? "json" : "csv") : opts.format;

  LoadedSystem loaded = load_system(opts);
  const SystemPair& sys = loaded.sys;
  Json report = base_report(command, opts, loaded.provenance);

  const ConstantSet consts = constants_with_override(sys, opts);
  report["constants"] = to_json(consts);
  report["nu_source"] = opts.nu ? "override" : "computed";

  bool ok = true;
  Json checks = Json::array();
  auto record = [&](const std::string& name, bool passed) {
    checks.push_back({{"name", name}, {"passed", passed}});
    ok = ok && passed;
  };

  if (full) {
    const ConstantAudit audit = sample_check_constants(sys, consts, opts.samples, opts.seed);
    report["constants_audit"] = to_json(audit, consts);
    record("constants_audit", opts.nu ? audit.passed(compute_constants(sys), opts.tol_audit)
                                      : audit.passed(consts, opts.tol_audit));
  }

  const std::vector<Complex> eigs = eigenvalues(build_linearization(sys));

  if (!(consts.delta > 0.0)) {
    const SpectrumReport spec = verify_inclusion(sys, eigs, {}, consts, {opts.tol_inclusion, opts.tol_eig});
    report["status"] = "refused";
    report["refusal"] = kRefusal;
    report["certificate"] = nullptr;
    report["spectrum"] = to_json(spec);
    err << kRefusal << "\n";
    if (format == "csv") {
      output.write(eigenvalue_csv(spec));
    } else {
      finish_report(report, opts, start);
      output.write(dump_json(report));
    }
    return kRefused;
  }

  const RateCertificate cert = certify(consts, opts.bs);
  report["certificate"] = to_json(cert);

  const std::vector<double> thetas = thetas_for(opts, cert);
  const SpectrumReport spec = verify_inclusion(sys, eigs, standard_regions(cert, thetas), consts,
                                               {opts.tol_inclusion, opts.tol_eig});
  report["spectrum"] = to_json(spec);
  record("pencil_residuals", spec.residual_failures == 0);
  record("spectral_inclusion", spec.certified_inside());
  // Earlier literature enclosures are reported for comparison only.
  report["remark_regions_inside"] = spec.all_inside();

  if (full) {
    Json forms = Json::array();
    bool forms_ok = true;
    for (double theta : thetas) {
      const double root = std::sqrt(theta);
      for (const FormCheck& fc :
           form_inequalities_check(sys, consts, theta, {0.0, root / 2.0, root}, opts.samples, opts.seed)) {
        forms.push_back(to_json(fc, opts.tol_form));
        forms_ok = forms_ok && fc.passed(opts.tol_form);
      }
    }
    report["form_inequalities"] = forms;
    record("form_inequalities", forms_ok);

    const double t_max = opts.t_max > 0.0 ? opts.t_max : 10.0 / cert.omega;
    const DecayCurve curve = decay_curve(sys, consts, cert.theta_star, default_time_grid(t_max, opts.t_points),
                                         EnvelopePolicy::Record, opts.tol_envelope);
    report["decay"] = decay_summary(curve);
    record("theta_envelope", !curve.violation_time.has_value());
    record("energy_envelope", !curve.energy_violation_time.has_value());
  }

  report["checks"] = checks;
  if (!ok) report["status"] = "violation";

  if (format == "csv") {
    output.write(eigenvalue_csv(spec));
    std::string regions_path = opts.regions_output;
    if (regions_path.empty() && !opts.output.empty()) regions_path = opts.output + ".regions.csv";
    if (!regions_path.empty()) output.write_to(regions_path, region_boundary_csv(spec));
  } else {
    finish_report(report, opts, start);
    output.write(dump_json(report));
  }
  if (!ok) err << command << ": one or more checks failed\n";
  return ok ? kPass : kViolation;
}

int cmd_decay(const Options& opts, const Output& output, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const std::string format = opts.format.empty() ? "csv" : opts.format;
  LoadedSystem loaded = load_system(opts);
  const SystemPair& sys = loaded.sys;
  const ConstantSet consts = constants_with_override(sys, opts);
  Json report = base_report("decay", opts, loaded.provenance);
  report["constants"] = to_json(consts);

  if (!(consts.delta > 0.0)) {
    report["status"] = "refused";
    report["refusal"] = kRefusal;
    err << kRefusal << "\n";
    if (format == "json") {
      finish_report(report, opts, start);
      output.write(dump_json(report));
    }
    return kRefused;
  }
  const RateCertificate cert = certify(consts, opts.bs);
  const double t_max = opts.t_max > 0.0 ? opts.t_max : 10.0 / cert.omega;
  const std::vector<double> times = default_time_grid(t_max, opts.t_points);
  report["certificate"] = {{"theta_star", cert.theta_star}, {"omega", cert.omega}};

  if (!opts.u0_path.empty() || !opts.u1_path.empty()) {
    const Vector u0 = load_vector(opts.u0_path, sys.dimension());
    const Vector u1 = load_vector(opts.u1_path, sys.dimension());
    const Trajectory traj = solve_cauchy(sys, u0, u1, times, &cert, EnvelopePolicy::Record, opts.tol_envelope);
    const bool ok = !traj.violation_time.has_value();
    if (format == "json") {
      Json rows = Json::array();
      for (std::size_t i = 0; i < traj.times.size(); ++i) {
        rows.push_back({{"t", traj.times[i]}, {"energy", traj.energy[i]}, {"bound", traj.bound[i]}});
      }
      report["trajectory"] = rows;
      report["violation_time"] = traj.violation_time ? Json(*traj.violation_time) : Json(nullptr);
      if (!ok) report["status"] = "violation";
      finish_report(report, opts, start);
      output.write(dump_json(report));
    } else {
      output.write(trajectory_csv(traj));
    }
    if (!ok) err << "decay: trajectory energy left the certified envelope\n";
    return ok ? kPass : kViolation;
  }

  const double theta = opts.thetas.empty() ? cert.theta_star : opts.thetas.front();
  const DecayCurve curve = decay_curve(sys, consts, theta, times, EnvelopePolicy::Record, opts.tol_envelope);
  const bool ok = !curve.violation_time && !curve.energy_violation_time;
  if (format == "json") {
    report["decay"] = to_json(curve);
    if (!ok) report["status"] = "violation";
    finish_report(report, opts, start);
    output.write(dump_json(report));
  } else {
    output.write(decay_csv(curve));
  }
  if (!ok) err << "decay: semigroup norm left the certified envelope\n";
  return ok ? kPass : kViolation;
}

int cmd_model(const Options& opts, const Output& output) {
  if (opts.model.empty()) throw Error(ErrorKind::InvalidArgument, "model requires --model");
  if (opts.output.empty()) throw Error(ErrorKind::InvalidArgument, "model requires --output <prefix>");
  const ModelSpec spec = parse_model_spec(opts.model);
  const SystemPair sys = build_model(spec);
  const std::string a_path = opts.output + ".A.mtx";
  const std::string d_path = opts.output + ".D.mtx";
  write_matrix_market_file(a_path, sys.a());
  write_matrix_market_file(d_path, sys.d());
  Json j{{"schema", kSchema}, {"tool_version", kVersion}, {"command", "model"}, {"status", "pass"},
         {"model", spec.to_string()}, {"matrix_a", a_path}, {"matrix_d", d_path}};
  if (spec.kind == ModelKind::RandomSectorial) j["generator"] = Rng::kName;
  output.write_to("", dump_json(j));
  return kPass;
}

int cmd_sweep(const Options& opts, const Output& output, std::ostream& err) {
  LoadedSystem loaded = load_system(opts);
  const ConstantSet consts = constants_with_override(loaded.sys, opts);
  if (!(consts.delta > 0.0)) {
    err << kRefusal << "\n";
    return kRefused;
  }
  const double theta_star = optimal_theta(consts);
  const int points = std::max(opts.sweep_points, 2);
  std::vector<std::array<double, 3>> rows;
  for (int k = 0; k < points; ++k) {
    const double theta = theta_star * std::pow(10.0, 3.0 * (2.0 * k / (points - 1) - 1.0));
    rows.push_back({theta, omega_theta(theta, consts), M_theta_b(theta, 0.0, consts)});
  }
  if (opts.format == "json") {
    Json j{{"schema", kSchema}, {"tool_version", kVersion}, {"command", "sweep"}, {"status", "pass"},
           {"input", loaded.provenance}, {"theta_star", theta_star}};
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back({{"theta", r[0]}, {"omega_theta", r[1]}, {"M_theta0", r[2]}});
    j["sweep"] = arr;
    output.write(dump_json(j));
  } else {
    std::string csv = "theta,omega_theta,M_theta0\n";
    for (const auto& r : rows) {
      csv += format_double(r[0]) + "," + format_double(r[1]) + "," + format_double(r[2]) + "\n";
    }
    output.write(csv);
  }
  return kPass;
}

void add_input_options(CLI::App* sub, Options& o) {
  sub->add_option("--matrix-a", o.matrix_a, "Matrix Market file for the stiffness A");
  sub->add_option("--matrix-d", o.matrix_d, "Matrix Market file for the damping D");
  sub->add_option("--model", o.model, "Built-in model, e.g. scalar:4,4,0 or wave1d:8,0,1,0");
  sub->add_option("--nu", o.nu, "Override the computed sector constant");
  sub->add_option("--output,-o", o.output, "Output file (default: stdout)");
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--no-timestamp", o.no_timestamp, "Omit timestamp and wall-clock fields");
}

void add_analysis_options(CLI::App* sub, Options& o) {
  sub->add_option("--theta", o.thetas, "theta values for the per-theta regions (repeatable)");
  sub->add_option("--b", o.bs, "Intercepts b for the M_b table (repeatable; default 0, omega/2, omega)");
  sub->add_option("--samples", o.samples, "Random samples for the audits")->capture_default_str();
  sub->add_option("--seed", o.seed, "Seed for random sampling")->capture_default_str();
  sub->add_option("--tol-eig", o.tol_eig, "Relative pencil-residual tolerance")->capture_default_str();
  sub->add_option("--tol-form", o.tol_form, "Form-inequality margin tolerance")->capture_default_str();
  sub->add_option("--tol-inclusion", o.tol_inclusion, "Region inclusion tolerance")->capture_default_str();
  sub->add_option("--tol-envelope", o.tol_envelope, "Relative envelope tolerance")->capture_default_str();
  sub->add_option("--tol-audit", o.tol_audit, "Constant audit tolerance")->capture_default_str();
  sub->add_option("--t-max", o.t_max, "Final time (default 10/omega)");
  sub->add_option("--t-points", o.t_points, "Time samples")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Decay-rate certificates for damped second-order systems u'' + Du' + Au = 0"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto* certify_cmd = app.add_subcommand("certify", "Full certificate: constants, rate, spectrum, forms, decay");
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Spectrum and inclusion checks; eigenvalue/region CSV");
  auto* decay_cmd = app.add_subcommand("decay", "Semigroup decay curve or Cauchy trajectory");
  auto* model_cmd = app.add_subcommand("model", "Write a built-in model as Matrix Market files");
  auto* sweep_cmd = app.add_subcommand("sweep", "theta scan of omega_theta and M_{theta,0}");

  for (auto* sub : {certify_cmd, spectrum_cmd, decay_cmd, sweep_cmd}) {
    add_input_options(sub, opts);
    add_analysis_options(sub, opts);
  }
  spectrum_cmd->add_option("--regions-output", opts.regions_output, "Region boundary CSV path");
  decay_cmd->add_option("--u0", opts.u0_path, "Matrix Market n x 1 initial position");
  decay_cmd->add_option("--u1", opts.u1_path, "Matrix Market n x 1 initial velocity");
  sweep_cmd->add_option("--points", opts.sweep_points, "Number of theta samples")->capture_default_str();
  model_cmd->add_option("--model", opts.model, "Model spec")->required();
  model_cmd->add_option("--output,-o", opts.output, "Output prefix; writes <prefix>.A.mtx and <prefix>.D.mtx")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kViolation;
  }

  std::string command = "decaycert";
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();
  const Output output(opts, out);
  try {
    if (command == "certify" || command == "spectrum") return cmd_certify(opts, command, output, err);
    if (command == "decay") return cmd_decay(opts, output, err);
    if (command == "model") return cmd_model(opts, output);
    if (command == "sweep") return cmd_sweep(opts, output, err);
  } catch (const Error& e) {
    err << command << ": " << e.what() << "\n";
    try {
      output.write(dump_json(failure_json(command, to_string(e.kind()), e.what())));
    } catch (const Error&) {
      out << dump_json(failure_json(command, to_string(e.kind()), e.what()));
    }
    return kViolation;
  } catch (const std::exception& e) {
    err << command << ": internal error: " << e.what() << "\n";
    out << dump_json(failure_json(command, "internal", e.what()));
    return kViolation;
  }
  return kViolation;
}

}  // namespace decaycert::cli
