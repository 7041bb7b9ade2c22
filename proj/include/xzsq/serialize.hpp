#ifndef XZSQ_SERIALIZE_HPP
#define XZSQ_SERIALIZE_HPP

#include "json.hpp"

#include "xzsq/config.hpp"
#include "xzsq/increment.hpp"
#include "xzsq/msys.hpp"
#include "xzsq/subset.hpp"

namespace xzsq {

using nlohmann::json;

json subset_to_json(const Subset& s);
Subset subset_from_json(const Group& g, const json& j);

json system_to_json(const MultiplicativeSystem& sys);
MultiplicativeSystem system_from_json(const Group& g, const json& j);

json report_to_json(const VerificationReport& rep);

json outcome_to_json(const IncrementOutcome& out);
IncrementOutcome outcome_from_json(const Group& g, const json& j);

json config_to_json(const RunConfig& cfg);

/// Group identity block: name, descriptor, order, hash, and the table when there is no descriptor.
json group_to_json(const GroupTable& g);
/// Rebuilds the group and checks its hash (CertificateInvalid on mismatch).
Group group_from_json(const json& j);

} // namespace xzsq

#endif // XZSQ_SERIALIZE_HPP
