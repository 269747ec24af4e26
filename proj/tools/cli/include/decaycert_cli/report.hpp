#pragma once

#include <complex>
#include <string>

#include <decaycert/constants.hpp>
#include <decaycert/rate_bounds.hpp>
#include <decaycert/semigroup.hpp>
#include <decaycert/spectrum.hpp>

#include "decaycert_cli/json_writer.hpp"

namespace decaycert::cli {

inline constexpr const char* kSchema = "decay-cert/1";

Json to_json(const ConstantSet& c);
Json to_json(const ConstantAudit& audit, const ConstantSet& claimed);
Json to_json(const RateCertificate& cert);
Json to_json(const SpectrumReport& report);
Json to_json(const FormCheck& check, double tol);
Json decay_summary(const DecayCurve& curve);
Json to_json(const DecayCurve& curve);
Json complex_json(std::complex<double> z);

/// Machine-readable failure object emitted on nonzero exits.
Json failure_json(const std::string& command, const std::string& kind, const std::string& message);

}  // namespace decaycert::cli
