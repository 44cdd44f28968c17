#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "swmoment/certifier.hpp"
#include "swmoment/covering.hpp"
#include "swmoment/frequency_lab.hpp"
#include "swmoment/identity_suite.hpp"

namespace swm {

using json = nlohmann::ordered_json;

json to_json(const Eigen::VectorXd& v);
json describe_rep(const QuatRep& rep, const std::string& id);
json to_json(const IdentityCheck& c);
json to_json(const CertReport& r);
json to_json(const FrequencyProfile& p);
json to_json(const MonotonicityReport& r);
json to_json(const CoveringVerdict& v);
json to_json(const CoveringReadings& r);
json to_json(const SwResidual& r);
json to_json(const FlatGcResidual& r);

/// Adds "timestamp" (UTC, ISO 8601); the only field that differs between identical runs.
void stamp(json& j);
std::string utc_timestamp();

/// Columns radius,m,D,N; N is empty where undefined.
void write_profile_csv(std::ostream& out, const FrequencyProfile& p);

}  // namespace swm
