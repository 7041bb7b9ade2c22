#ifndef XZSQ_CERTIFICATE_HPP
#define XZSQ_CERTIFICATE_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "xzsq/pipeline.hpp"

namespace xzsq {

/// Self-contained document; no timings, so identical runs give identical bytes.
nlohmann::json certificate_to_json(const Certificate& c);
/// Canonical text form (2-space indentation, trailing newline).
std::string certificate_text(const Certificate& c);

struct CertCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct CertCheckReport {
  bool ok = true;
  std::vector<CertCheck> checks;

  const CertCheck* first_failure() const;
  nlohmann::json to_json() const;
};

struct CertCheckOptions {
  /// Re-run the pipeline from the embedded group, set and config and compare bytes.
  bool replay = true;
};

/// Independent replay of a certificate document.
CertCheckReport check_certificate(const nlohmann::json& doc, const CertCheckOptions& opt = {});
CertCheckReport check_certificate_text(const std::string& text, const CertCheckOptions& opt = {});

} // namespace xzsq

#endif // XZSQ_CERTIFICATE_HPP
