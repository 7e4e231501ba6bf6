#pragma once

// JSON forms of every report. Floats are rounded to 12 significant digits.

#include <string>

#include "anosov/boundary.hpp"
#include "anosov/certificates.hpp"
#include "anosov/io.hpp"
#include "anosov/proper.hpp"

namespace anosov::reports {

using io::Json;

Json theta_json(const projections::Theta& theta);
Json root_json(projections::RootIndex r);

Json to_json(const certificates::GapCertificate& c);
/// The x sequence is included only on request; it has N+1 entries.
Json to_json(const certificates::CliReport& r, bool include_x = false);
Json to_json(const certificates::CliAggregate& a);
Json to_json(const certificates::GapSummation& s);
Json to_json(const certificates::ProximalReport& r);
Json to_json(const certificates::DominationReport& r);
Json to_json(const boundary::LimitPoint& p);
Json to_json(const boundary::TransversalityReport& r);
Json to_json(const boundary::DynamicsReport& r);
Json to_json(const proper::PropernessReport& r);

/// Wraps a report body with schema version, norm convention, tolerances and a
/// hash of the configuration that produced it.
Json envelope(const std::string& kind, const Json& config, const Json& body);

}  // namespace anosov::reports
