#pragma once

#include <wino/pipeline.hpp>
#include <wino/tensor.hpp>
#include <wino/winograd_construct.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wino {

constexpr int min_quant_bits = 2;
constexpr int max_quant_bits = 32;

/// Symmetric per-tensor quantization: integer levels in [-L, L] with
/// L = 2^(bits-1) - 1, zero point 0, round-half-to-even.
struct QuantParams
{
	int bits = 8;
	double scale = 1.0;   // max_abs / L, or 1 for an all-zero tensor
	double max_abs = 0.0; // calibration value; level +-L maps back to exactly +-max_abs

	std::int64_t max_level() const noexcept
	{
		return (std::int64_t { 1 } << (bits - 1)) - 1;
	}
	std::int64_t level(double x) const noexcept;
	double dequantize(std::int64_t level) const noexcept;
	double apply(double x) const noexcept
	{
		return dequantize(level(x));
	}
};

double round_half_even(double x) noexcept;

/// Max-abs calibration. Throws std::invalid_argument when bits is outside
/// [min_quant_bits, max_quant_bits].
QuantParams compute_scale(std::span<const double> values, int bits);

/// Quantize-dequantize in place with a single scale for the whole span.
QuantParams fake_quant_inplace(std::span<double> values, int bits);

Tensor fake_quant(const Tensor &tensor, int bits);

struct QuantConfig
{
	int input_bits = 8;
	int weight_bits = 8;
	int input_transform_bits = 8;
	int weight_transform_bits = 8;
	int base_change_bits = 8;
	int hadamard_bits = 8;
	int output_transform_bits = 8;

	static QuantConfig uniform(int bits);
	/// Throws std::invalid_argument naming the first out-of-range width.
	void validate() const;

	friend bool operator==(const QuantConfig&, const QuantConfig&) = default;
};

/// Calibration of one cast in the quantized pipeline.
struct StageStats
{
	std::string stage;
	int bits = 0;
	double max_abs = 0.0;
	double scale = 0.0;
};

struct QuantizedConvResult
{
	Tensor output;
	std::vector<StageStats> stages;
};

/// Winograd correlation with a cast at every stage boundary: input and
/// weights, after each transform sandwich (base-change sandwiches included in
/// legendre mode), after channel accumulation of the Hadamard products, and on
/// the final output. Each cast uses one scale for everything that stage
/// produces across all tiles and channels.
QuantizedConvResult conv2d_winograd_quantized(const Tensor &input, const Tensor &weights, const FloatPlan &plan, BaseMode mode,
		const QuantConfig &config);

/// Quantized direct baseline: input and weights cast to their levels, integer
/// accumulation, output cast at output_transform_bits.
Tensor conv2d_direct_quantized(const Tensor &input, const Tensor &weights, const QuantConfig &config);

} // namespace wino
