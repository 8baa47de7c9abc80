#include <wino/quantization.hpp>
#include <wino/reference_conv.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wino {

namespace {

void check_bits(int bits, const char *what)
{
	if (bits < min_quant_bits || bits > max_quant_bits)
		throw std::invalid_argument(std::string(what) + " must be in [" + std::to_string(min_quant_bits) + ", " + std::to_string(max_quant_bits)
				+ "], got " + std::to_string(bits));
}

double max_abs_of(std::span<const double> values)
{
	double result = 0.0;
	for (double v : values)
		result = std::max(result, std::abs(v));
	return result;
}

/// One scale over a whole batch of matrices.
StageStats fake_quant_batch(std::vector<Matrix<double>> &batch, int bits, std::string stage)
{
	double max_abs = 0.0;
	for (const auto &m : batch)
		max_abs = std::max(max_abs, max_abs_of(m.data()));
	QuantParams params = compute_scale(std::span<const double>(&max_abs, 1), bits);
	for (auto &m : batch)
		for (double &v : m.data())
			v = params.apply(v);
	return StageStats { std::move(stage), bits, params.max_abs, params.scale };
}

int step_bits(StageKind kind, int transform_bits, const QuantConfig &config)
{
	return kind == StageKind::base_change ? config.base_change_bits : transform_bits;
}

std::string step_name(StageKind kind, const char *prefix)
{
	return std::string(prefix) + (kind == StageKind::base_change ? "_base_change" : "_transform");
}

/// Applies each sandwich step to the whole batch and casts after it. The cast
/// after the last step is skipped when cast_last is false.
void run_steps(const std::vector<SandwichStep<double>> &steps, std::vector<Matrix<double>> &batch, int transform_bits, const QuantConfig &config,
		const char *prefix, bool cast_last, std::vector<StageStats> &stats)
{
	for (std::size_t s = 0; s < steps.size(); s++)
	{
		for (auto &m : batch)
			m = sandwich(steps[s].left, m, steps[s].right);
		if (cast_last || s + 1 < steps.size())
			stats.push_back(fake_quant_batch(batch, step_bits(steps[s].kind, transform_bits, config), step_name(steps[s].kind, prefix)));
	}
}

} // namespace

double round_half_even(double x) noexcept
{
	const double r = std::round(x); // half away from zero
	if (std::abs(x - std::trunc(x)) == 0.5)
		return 2.0 * std::round(x / 2.0);
	return r;
}

std::int64_t QuantParams::level(double x) const noexcept
{
	if (max_abs == 0.0)
		return 0;
	const double L = static_cast<double>(max_level());
	const double q = std::clamp(round_half_even((x / max_abs) * L), -L, L);
	return static_cast<std::int64_t>(q);
}

double QuantParams::dequantize(std::int64_t level) const noexcept
{
	// (level / L) * max_abs maps the extreme levels onto +-max_abs exactly,
	// which makes a second cast at the same width reproduce the same scale.
	return (static_cast<double>(level) / static_cast<double>(max_level())) * max_abs;
}

QuantParams compute_scale(std::span<const double> values, int bits)
{
	check_bits(bits, "bit width");
	QuantParams params;
	params.bits = bits;
	params.max_abs = max_abs_of(values);
	params.scale = params.max_abs == 0.0 ? 1.0 : params.max_abs / static_cast<double>(params.max_level());
	return params;
}

QuantParams fake_quant_inplace(std::span<double> values, int bits)
{
	const QuantParams params = compute_scale(values, bits);
	for (double &v : values)
		v = params.apply(v);
	return params;
}

Tensor fake_quant(const Tensor &tensor, int bits)
{
	Tensor result = tensor;
	fake_quant_inplace(result.data(), bits);
	return result;
}

QuantConfig QuantConfig::uniform(int bits)
{
	return QuantConfig { bits, bits, bits, bits, bits, bits, bits };
}

void QuantConfig::validate() const
{
	check_bits(input_bits, "input_bits");
	check_bits(weight_bits, "weight_bits");
	check_bits(input_transform_bits, "input_transform_bits");
	check_bits(weight_transform_bits, "weight_transform_bits");
	check_bits(base_change_bits, "base_change_bits");
	check_bits(hadamard_bits, "hadamard_bits");
	check_bits(output_transform_bits, "output_transform_bits");
}

QuantizedConvResult conv2d_winograd_quantized(const Tensor &input, const Tensor &weights, const FloatPlan &plan, BaseMode mode,
		const QuantConfig &config)
{
	config.validate();
	const ConvGeometry g = conv_geometry(input, weights);
	const TileGrid grid = make_tile_grid(g, plan);
	QuantizedConvResult result;
	auto &stats = result.stages;

	Tensor q_input = input;
	const QuantParams in_params = fake_quant_inplace(q_input.data(), config.input_bits);
	stats.push_back( { "input", config.input_bits, in_params.max_abs, in_params.scale });
	Tensor q_weights = weights;
	const QuantParams w_params = fake_quant_inplace(q_weights.data(), config.weight_bits);
	stats.push_back( { "weights", config.weight_bits, w_params.max_abs, w_params.scale });

	// [oc][c]
	std::vector<Matrix<double>> u;
	u.reserve(g.out_channels * g.in_channels);
	for (std::size_t oc = 0; oc < g.out_channels; oc++)
		for (std::size_t c = 0; c < g.in_channels; c++)
			u.push_back(kernel_slice(q_weights, oc, c));
	run_steps(weight_steps(plan, mode), u, config.weight_transform_bits, config, "weight", true, stats);

	// [tile][c]
	std::vector<Matrix<double>> v;
	v.reserve(grid.count() * g.in_channels);
	for (std::size_t ty = 0; ty < grid.tiles_y; ty++)
		for (std::size_t tx = 0; tx < grid.tiles_x; tx++)
			for (std::size_t c = 0; c < g.in_channels; c++)
				v.push_back(extract_patch(q_input, c, grid, ty, tx));
	run_steps(input_steps(plan, mode), v, config.input_transform_bits, config, "input", true, stats);

	// [tile][oc], accumulated over c in ascending order at full precision.
	std::vector<Matrix<double>> products;
	products.reserve(grid.count() * g.out_channels);
	for (std::size_t t = 0; t < grid.count(); t++)
		for (std::size_t oc = 0; oc < g.out_channels; oc++)
		{
			Matrix<double> acc(grid.tile_size, grid.tile_size);
			for (std::size_t c = 0; c < g.in_channels; c++)
			{
				const auto &uw = u[oc * g.in_channels + c].data();
				const auto &vx = v[t * g.in_channels + c].data();
				for (std::size_t e = 0; e < acc.data().size(); e++)
					acc.data()[e] += uw[e] * vx[e];
			}
			products.push_back(std::move(acc));
		}
	stats.push_back(fake_quant_batch(products, config.hadamard_bits, "hadamard"));

	run_steps(output_steps(plan, mode), products, config.output_transform_bits, config, "output", false, stats);

	result.output = Tensor( { g.out_channels, g.out_height(), g.out_width() });
	for (std::size_t ty = 0; ty < grid.tiles_y; ty++)
		for (std::size_t tx = 0; tx < grid.tiles_x; tx++)
			for (std::size_t oc = 0; oc < g.out_channels; oc++)
				store_tile(result.output, oc, grid, ty, tx, products[(ty * grid.tiles_x + tx) * g.out_channels + oc]);
	// The final cast sees only the cropped output, not the padding tiles.
	const QuantParams out_params = fake_quant_inplace(result.output.data(), config.output_transform_bits);
	stats.push_back( { "output_transform", config.output_transform_bits, out_params.max_abs, out_params.scale });
	return result;
}

Tensor conv2d_direct_quantized(const Tensor &input, const Tensor &weights, const QuantConfig &config)
{
	config.validate();
	const ConvGeometry g = conv_geometry(input, weights);
	const QuantParams in_params = compute_scale(input.data(), config.input_bits);
	const QuantParams w_params = compute_scale(weights.data(), config.weight_bits);

	std::vector<std::int64_t> in_levels(input.size());
	std::transform(input.data().begin(), input.data().end(), in_levels.begin(), [&](double x) {
		return in_params.level(x);
	});
	std::vector<std::int64_t> w_levels(weights.size());
	std::transform(weights.data().begin(), weights.data().end(), w_levels.begin(), [&](double x) {
		return w_params.level(x);
	});

	// Integer accumulation is exact; the dequantized value of a level is
	// (level / L) * max_abs, so a product of levels carries both factors.
	const double in_unit = in_params.max_abs / static_cast<double>(in_params.max_level());
	const double w_unit = w_params.max_abs / static_cast<double>(w_params.max_level());
	Tensor output( { g.out_channels, g.out_height(), g.out_width() });
	for (std::size_t oc = 0; oc < g.out_channels; oc++)
		for (std::size_t y = 0; y < g.out_height(); y++)
			for (std::size_t x = 0; x < g.out_width(); x++)
			{
				__int128 acc = 0;
				for (std::size_t c = 0; c < g.in_channels; c++)
					for (std::size_t i = 0; i < g.kernel; i++)
						for (std::size_t j = 0; j < g.kernel; j++)
							acc += static_cast<__int128>(in_levels[(c * g.height + y + i) * g.width + x + j]) * w_levels[((oc * g.in_channels + c) * g.kernel + i) * g.kernel + j];
				output.at(oc, y, x) = static_cast<double>(acc) * in_unit * w_unit;
			}
	fake_quant_inplace(output.data(), config.output_transform_bits);
	return output;
}

} // namespace wino
