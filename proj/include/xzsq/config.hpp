#ifndef XZSQ_CONFIG_HPP
#define XZSQ_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace xzsq {

enum class SamplerMode { Exhaustive, MonteCarlo };

const char* to_string(SamplerMode m) noexcept;
SamplerMode parse_sampler_mode(std::string_view s);

/// Parameters of a single almost-period computation.
struct SamplerConfig {
  double eta = 0.25;
  double p = 2.0;
  /// Tuple length of the sampled approximants.
  std::size_t k = 8;
  /// Number of tuples drawn in Monte-Carlo mode.
  std::size_t samples = 64;
  std::uint64_t seed = 1;
  SamplerMode mode = SamplerMode::Exhaustive;
  /// Defect bound; defaults to eta * ||f||.
  std::optional<double> validation_threshold;
};

/// The constants block shared by the constructions and the pipeline.
struct RunConfig {
  /// eta of the increment step.
  double c = 1.0 / 8.0;
  /// epsilon = c_prime * alpha^2.
  double c_prime = 1.0 / 1024.0;
  /// Multiplier of epsilon in the increment lower bounds.
  double c_slack = 4.0;
  /// Required relative density gain per accepted increment.
  double c_inc = 1.0 / 32.0;
  /// Fraction of the product of densities required in the counting case.
  double c_count = 0.5;
  /// p = c_p log(2/delta) + 2 in the neighbourhood construction.
  double c_p = 1.0;
  /// eta = c_eta / k in the neighbourhood construction.
  double c_eta = 0.25;
  /// Relative period slack factor is 1 + c_rel * epsilon.
  double c_rel = 1.0;
  std::size_t retry_cap = 8;
  std::size_t iteration_guard = 4;
  std::size_t tuple_length = 8;
  std::size_t samples = 64;
  SamplerMode mode = SamplerMode::Exhaustive;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  std::size_t group_cap = 5040;

  /// Throws InvalidArgument unless all constants are positive.
  void validate() const;
  /// Sampler settings derived from this block for the given eta, p and seed offset.
  SamplerConfig sampler(double eta, double p, std::uint64_t salt) const;
};

/// key=value lines; '#' starts a comment. Unknown keys are errors.
RunConfig parse_config(std::string_view text, RunConfig base = {});
void apply_config_entry(RunConfig& cfg, std::string_view key, std::string_view value);
RunConfig read_config_file(const std::string& path, RunConfig base = {});
/// Round-trippable key=value form.
std::string format_config(const RunConfig& cfg);

} // namespace xzsq

#endif // XZSQ_CONFIG_HPP
