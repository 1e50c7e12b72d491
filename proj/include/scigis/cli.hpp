#ifndef SCIGIS_CLI_HPP
#define SCIGIS_CLI_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace scigis::cli {

enum ExitCode : int { kSuccess = 0, kDataError = 1, kConfigError = 2 };

/// Everything a run needs. Mirrors the keys accepted in a --config file.
struct RunConfig {
  std::optional<std::string> wordnet_dir;
  std::optional<std::string> ic_file;     // WordNet-IC counts
  std::optional<std::string> ic_counts;   // lemma counts, propagated at load
  double ic_smoothing = 0.0;
  std::optional<std::string> vectors_file;
  std::optional<std::string> lexicon_file;
  std::optional<std::string> connectives_file;
  std::optional<std::string> sidecar_file;
  std::optional<std::string> zstats_file;  // external normalization table

  std::string formula = "scigispy";
  std::optional<std::string> baseline;

  std::size_t buffer_size = 1;
  double percentile = 95.0;
  bool normalized_chunks = false;
  std::vector<std::string> enable;
  std::vector<std::string> disable;
  std::string pcref_mode = "adjacent";           // adjacent | all
  std::string wrdhyp_norm_mode = "root_scale";   // root_scale | literal_l1
  std::string z_population = "combined";        // combined | per-side
  std::string ttest = "student";                 // student | welch

  std::string format = "tsv";  // tsv | json
  std::size_t jobs = 1;
};

/// Overlays keys present in `j` onto `cfg`. Unknown keys are a ConfigError.
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);

/// Entry point behind the `scigis` binary. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scigis::cli

#endif  // SCIGIS_CLI_HPP
