#pragma once

#include <wino/matrix.hpp>
#include <wino/tensor.hpp>
#include <wino/winograd_construct.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wino {

enum class BaseMode
{
	canonical,
	legendre
};

std::string_view to_string(BaseMode mode) noexcept;
/// "canonical" or "legendre"; throws std::invalid_argument otherwise.
BaseMode parse_base_mode(std::string_view text);

enum class StageKind
{
	vandermonde, // G, B or A sandwich (or their base-changed versions)
	base_change  // P / P_inv sandwich
};

/// One sandwich multiplication left * X * right of a transform chain. The
/// quantized pipeline casts after every step.
template<typename T>
struct SandwichStep
{
	StageKind kind;
	Matrix<T> left;
	Matrix<T> right;
};

template<typename T>
const BaseChangeMatrices<T>& require_base_change(const BasicPlan<T> &plan, BaseMode mode)
{
	if (mode == BaseMode::legendre && !plan.has_base_change())
		throw std::invalid_argument("legendre mode requires a plan with a base change");
	return *plan.base_change;
}

/// canonical: G W G^T.  legendre: P_inv (G_P W G_P^T) P_inv^T.
template<typename T>
std::vector<SandwichStep<T>> weight_steps(const BasicPlan<T> &plan, BaseMode mode)
{
	if (mode == BaseMode::canonical)
		return { { StageKind::vandermonde, plan.G, plan.G.transposed() } };
	const auto &bc = require_base_change(plan, mode);
	return { { StageKind::vandermonde, bc.G_P, bc.G_P.transposed() }, { StageKind::base_change, bc.P_inv, bc.P_inv.transposed() } };
}

/// canonical: B^T X B.  legendre: B_P^T (P_inv^T X P_inv) B_P, which equals
/// B^T X B because B_P^T P_inv^T = B^T.
template<typename T>
std::vector<SandwichStep<T>> input_steps(const BasicPlan<T> &plan, BaseMode mode)
{
	if (mode == BaseMode::canonical)
		return { { StageKind::vandermonde, plan.B.transposed(), plan.B } };
	const auto &bc = require_base_change(plan, mode);
	return { { StageKind::base_change, bc.P_inv.transposed(), bc.P_inv }, { StageKind::vandermonde, bc.B_P.transposed(), bc.B_P } };
}

/// canonical: A^T M A.  legendre: A_P^T (P_inv^T M P_inv) A_P.
template<typename T>
std::vector<SandwichStep<T>> output_steps(const BasicPlan<T> &plan, BaseMode mode)
{
	if (mode == BaseMode::canonical)
		return { { StageKind::vandermonde, plan.A.transposed(), plan.A } };
	const auto &bc = require_base_change(plan, mode);
	return { { StageKind::base_change, bc.P_inv.transposed(), bc.P_inv }, { StageKind::vandermonde, bc.A_P.transposed(), bc.A_P } };
}

template<typename T>
Matrix<T> apply_steps(const std::vector<SandwichStep<T>> &steps, Matrix<T> value)
{
	for (const auto &step : steps)
		value = sandwich(step.left, value, step.right);
	return value;
}

namespace detail {

inline void require_shape(std::size_t rows, std::size_t cols, std::size_t want_rows, std::size_t want_cols, const char *what)
{
	if (rows != want_rows || cols != want_cols)
		throw DimensionError(std::string(what) + ": expected " + std::to_string(want_rows) + "x" + std::to_string(want_cols) + ", got "
				+ std::to_string(rows) + "x" + std::to_string(cols));
}

} // namespace detail

template<typename T>
Matrix<T> transform_weights(const Matrix<T> &weights, const BasicPlan<T> &plan, BaseMode mode)
{
	detail::require_shape(weights.rows(), weights.cols(), plan.kernel_size, plan.kernel_size, "weight tile");
	return apply_steps(weight_steps(plan, mode), weights);
}

template<typename T>
Matrix<T> transform_input(const Matrix<T> &tile, const BasicPlan<T> &plan, BaseMode mode)
{
	detail::require_shape(tile.rows(), tile.cols(), plan.tile_size, plan.tile_size, "input tile");
	return apply_steps(input_steps(plan, mode), tile);
}

template<typename T>
Matrix<T> transform_output(const Matrix<T> &product, const BasicPlan<T> &plan, BaseMode mode)
{
	detail::require_shape(product.rows(), product.cols(), plan.tile_size, plan.tile_size, "transformed tile");
	return apply_steps(output_steps(plan, mode), product);
}

/// Output tiling: the valid output is covered by tiles_y x tiles_x blocks of
/// o x o; the input is implicitly zero-padded to padded_height x padded_width.
struct TileGrid
{
	std::size_t output_size = 0;
	std::size_t tile_size = 0;
	std::size_t tiles_y = 0;
	std::size_t tiles_x = 0;

	std::size_t count() const noexcept
	{
		return tiles_y * tiles_x;
	}
};

template<typename T>
TileGrid make_tile_grid(const ConvGeometry &g, const BasicPlan<T> &plan)
{
	if (plan.kernel_size != g.kernel)
		throw DimensionError("plan kernel size " + std::to_string(plan.kernel_size) + " does not match weights " + std::to_string(g.kernel));
	const std::size_t o = plan.output_size;
	return TileGrid { o, plan.tile_size, (g.out_height() + o - 1) / o, (g.out_width() + o - 1) / o };
}

/// m x m input patch feeding output tile (ty, tx); zero outside the input.
template<typename T>
Matrix<T> extract_patch(const BasicTensor<T> &input, std::size_t channel, const TileGrid &grid, std::size_t ty, std::size_t tx)
{
	Matrix<T> patch(grid.tile_size, grid.tile_size);
	const std::size_t y0 = ty * grid.output_size;
	const std::size_t x0 = tx * grid.output_size;
	for (std::size_t i = 0; i < grid.tile_size && y0 + i < input.dim(1); i++)
		for (std::size_t j = 0; j < grid.tile_size && x0 + j < input.dim(2); j++)
			patch(i, j) = input.at(channel, y0 + i, x0 + j);
	return patch;
}

/// Writes the part of an o x o output tile that lies inside the output.
template<typename T>
void store_tile(BasicTensor<T> &output, std::size_t channel, const TileGrid &grid, std::size_t ty, std::size_t tx, const Matrix<T> &tile)
{
	const std::size_t y0 = ty * grid.output_size;
	const std::size_t x0 = tx * grid.output_size;
	for (std::size_t i = 0; i < grid.output_size && y0 + i < output.dim(1); i++)
		for (std::size_t j = 0; j < grid.output_size && x0 + j < output.dim(2); j++)
			output.at(channel, y0 + i, x0 + j) = tile(i, j);
}

template<typename T>
Matrix<T> kernel_slice(const BasicTensor<T> &weights, std::size_t out_channel, std::size_t in_channel)
{
	const std::size_t k = weights.dim(2);
	Matrix<T> w(k, k);
	for (std::size_t i = 0; i < k; i++)
		for (std::size_t j = 0; j < k; j++)
			w(i, j) = weights.at(out_channel, in_channel, i, j);
	return w;
}

/// Tiled Winograd correlation. Hadamard products are summed over input
/// channels in ascending order in the transformed domain, then inverse
/// transformed once per output tile.
template<typename T>
BasicTensor<T> conv2d_winograd_generic(const BasicTensor<T> &input, const BasicTensor<T> &weights, const BasicPlan<T> &plan, BaseMode mode)
{
	const ConvGeometry g = conv_geometry(input, weights);
	const TileGrid grid = make_tile_grid(g, plan);
	const auto w_steps = weight_steps(plan, mode);
	const auto in_steps = input_steps(plan, mode);
	const auto out_steps = output_steps(plan, mode);

	std::vector<Matrix<T>> transformed_weights;
	transformed_weights.reserve(g.out_channels * g.in_channels);
	for (std::size_t oc = 0; oc < g.out_channels; oc++)
		for (std::size_t c = 0; c < g.in_channels; c++)
			transformed_weights.push_back(apply_steps(w_steps, kernel_slice(weights, oc, c)));

	BasicTensor<T> output( { g.out_channels, g.out_height(), g.out_width() });
	std::vector<Matrix<T>> transformed_input(g.in_channels);
	for (std::size_t ty = 0; ty < grid.tiles_y; ty++)
		for (std::size_t tx = 0; tx < grid.tiles_x; tx++)
		{
			for (std::size_t c = 0; c < g.in_channels; c++)
				transformed_input[c] = apply_steps(in_steps, extract_patch(input, c, grid, ty, tx));
			for (std::size_t oc = 0; oc < g.out_channels; oc++)
			{
				Matrix<T> acc(grid.tile_size, grid.tile_size);
				for (std::size_t c = 0; c < g.in_channels; c++)
				{
					const Matrix<T> &u = transformed_weights[oc * g.in_channels + c];
					for (std::size_t e = 0; e < acc.data().size(); e++)
						acc.data()[e] += u.data()[e] * transformed_input[c].data()[e];
				}
				store_tile(output, oc, grid, ty, tx, apply_steps(out_steps, std::move(acc)));
			}
		}
	return output;
}

Tensor conv2d_winograd(const Tensor &input, const Tensor &weights, const FloatPlan &plan, BaseMode mode);

} // namespace wino
