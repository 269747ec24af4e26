#include "decaycert_cli/report.hpp"

#include <decaycert/types.hpp>

namespace decaycert::cli {

Json complex_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const ConstantSet& c) {
  return Json{{"a0", c.a0},       {"alpha", c.alpha}, {"beta", c.beta},
              {"delta", c.delta}, {"nu", c.nu},       {"normD", c.normD},
              {"sector_defined", c.sector_defined}};
}

Json to_json(const ConstantAudit& audit, const ConstantSet& claimed) {
  return Json{{"samples", audit.samples},
              {"seed", audit.seed},
              {"margins",
               {{"a0", audit.a0},
                {"alpha", audit.alpha},
                {"beta", audit.beta},
                {"delta", audit.delta},
                {"nu", audit.nu},
                {"normD", audit.normD}}},
              {"passed", audit.passed(claimed)}};
}

Json to_json(const RateCertificate& cert) {
  Json mb = Json::array();
  for (const MbEntry& e : cert.Mb_table) {
    mb.push_back({{"b", e.b}, {"M", e.M}, {"theta_argmin", e.theta_argmin}});
  }
  Json grid = Json::array();
  for (const auto& [theta, w] : cert.omega_theta_curve) {
    grid.push_back({{"theta", theta}, {"omega_theta", w}});
  }
  return Json{{"constants", to_json(cert.consts)},
              {"theta_star", cert.theta_star},
              {"omega", cert.omega},
              {"omega_paper_delta2", cert.omega_paper_delta2},
              {"omega_paper_delta4", cert.omega_paper_delta4},
              {"printed_formula_match", to_string(cert.printed_match)},
              {"Mb", mb},
              {"grid", grid}};
}

Json to_json(const SpectrumReport& report) {
  Json eigs = Json::array();
  for (const EigenvalueReport& e : report.eigenvalues) {
    eigs.push_back({{"re", e.lambda.real()},
                    {"im", e.lambda.imag()},
                    {"pencil_residual", e.residual},
                    {"residual_bound", e.residual_bound}});
  }
  Json regions = Json::array();
  for (const RegionReport& r : report.regions) {
    Json entry{{"label", r.region.label}, {"kind", to_string(r.region.kind)}};
    if (r.region.kind == RegionKind::Proposition || r.region.kind == RegionKind::Theorem) {
      if (r.region.kind == RegionKind::Proposition) entry["theta"] = r.region.theta;
      entry["omega"] = r.region.region.omega;
      entry["M"] = r.region.region.M;
      entry["b"] = r.region.region.b;
    }
    entry["worst_margin_re"] = r.worst_margin_re;
    if (r.region.kind != RegionKind::RemarkQuotient) entry["worst_margin_im"] = r.worst_margin_im;
    entry["violations"] = r.violations;
    entry["violating"] = r.violating;
    regions.push_back(std::move(entry));
  }
  Json j{{"eigenvalues", eigs},
         {"spectral_abscissa", report.spectral_abscissa},
         {"residual_failures", report.residual_failures},
         {"inclusion_checked", report.inclusion_checked},
         {"regions", regions}};
  if (report.note) j["note"] = *report.note;
  return j;
}

Json to_json(const FormCheck& check, double tol) {
  return Json{{"theta", check.theta},         {"b", check.b},
              {"omega_theta", check.omega_theta}, {"M", check.M},
              {"margin_re", check.margin_re}, {"margin_im", check.margin_im},
              {"samples", check.samples},     {"seed", check.seed},
              {"passed", check.passed(tol)}};
}

Json decay_summary(const DecayCurve& curve) {
  Json j{{"theta", curve.theta},
         {"omega_theta", curve.omega_theta},
         {"kappa", curve.kappa},
         {"points", curve.times.size()},
         {"t_max", curve.times.empty() ? 0.0 : curve.times.back()},
         {"empirical_rate", curve.empirical_rate}};
  j["violation_time"] = curve.violation_time ? Json(*curve.violation_time) : Json(nullptr);
  j["energy_violation_time"] =
      curve.energy_violation_time ? Json(*curve.energy_violation_time) : Json(nullptr);
  return j;
}

Json to_json(const DecayCurve& curve) {
  Json j = decay_summary(curve);
  Json rows = Json::array();
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    rows.push_back({{"t", curve.times[i]},
                    {"theta_norm", curve.theta_norm[i]},
                    {"energy_norm", curve.energy_norm[i]},
                    {"envelope", curve.envelope[i]},
                    {"kappa_envelope", curve.kappa_envelope[i]}});
  }
  j["curve"] = rows;
  return j;
}

Json failure_json(const std::string& command, const std::string& kind, const std::string& message) {
  return Json{{"schema", kSchema},
              {"tool_version", kVersion},
              {"command", command},
              {"status", "error"},
              {"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace decaycert::cli
