#pragma once

#include <wino/harness/rng.hpp>
#include <wino/pipeline.hpp>
#include <wino/quantization.hpp>

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wino::harness {

/// A quantization setting with the name it is reported under. No config means
/// the unquantized double-precision pipeline ("float").
struct NamedQuantConfig
{
	std::string name;
	std::optional<QuantConfig> config;
};

/// "float", "<b>b" (all stages at b bits) or "<b>b+<h>b" (Hadamard at h bits,
/// everything else at b). Throws std::invalid_argument otherwise.
NamedQuantConfig preset_quant_config(const std::string &name);

/// Pipelines compared in an experiment: the two Winograd bases, plus "direct"
/// (quantized direct correlation, or the float oracle itself for "float").
enum class PipelineKind
{
	canonical,
	legendre,
	direct
};

std::string_view to_string(PipelineKind kind) noexcept;
PipelineKind parse_pipeline_kind(std::string_view text);

struct ExperimentConfig
{
	std::size_t o = 4;
	std::size_t k = 3;
	std::string points = "default";
	std::vector<PipelineKind> modes { PipelineKind::canonical, PipelineKind::legendre, PipelineKind::direct };
	std::vector<NamedQuantConfig> qconfigs { preset_quant_config("float"), preset_quant_config("8b"), preset_quant_config("8b+9b") };
	std::size_t trials = 1000;
	std::uint64_t seed = 0;
	Distribution input_distribution = Distribution::standard_normal;
	std::size_t in_channels = 3;
	std::size_t out_channels = 4;
	std::size_t height = 10;
	std::size_t width = 10;
	std::size_t threads = 1; // 0 = hardware concurrency

	/// Throws std::invalid_argument on inconsistent values.
	void validate() const;
};

/// Reads the fields above from a JSON object; absent keys keep their defaults
/// and unknown keys are rejected. "qconfigs" entries are preset names or
/// objects {"name": ..., "<stage>_bits": ...} with unspecified widths at 8.
ExperimentConfig experiment_config_from_json(const nlohmann::json &j);
nlohmann::json experiment_config_to_json(const ExperimentConfig &config);

struct ErrorMetrics
{
	double max_abs_err = 0.0;
	double rel_l2_err = 0.0;
};

/// ||actual - reference|| / ||reference|| (absolute norm when the reference is 0).
ErrorMetrics compare(const Tensor &actual, const Tensor &reference);

/// Measurements of one (mode, qconfig) cell in one trial.
struct CellResult
{
	ErrorMetrics metrics;
	std::vector<StageStats> stages;
};

/// cells[mode_index * qconfigs.size() + qconfig_index]
struct TrialResult
{
	std::vector<CellResult> cells;
};

TrialResult run_trial(const ExperimentConfig &config, const FloatPlan &plan, std::size_t trial);

/// All trials, in trial order. The work is spread over config.threads workers
/// but the result does not depend on the thread count.
std::vector<TrialResult> run_trials(const ExperimentConfig &config, const FloatPlan &plan);

/// Plan for the configured geometry and points, with the Legendre base attached.
FloatPlan experiment_plan(const ExperimentConfig &config);

} // namespace wino::harness
