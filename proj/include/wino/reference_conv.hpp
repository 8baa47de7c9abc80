#pragma once

#include <wino/rational.hpp>
#include <wino/tensor.hpp>

namespace wino {

/// Valid cross-correlation (no kernel flip) summed over input channels:
///   out[o][y][x] = sum_c sum_i sum_j in[c][y+i][x+j] * w[o][c][i][j]
template<typename T>
BasicTensor<T> conv2d_direct_generic(const BasicTensor<T> &input, const BasicTensor<T> &weights)
{
	const ConvGeometry g = conv_geometry(input, weights);
	BasicTensor<T> output( { g.out_channels, g.out_height(), g.out_width() });
	for (std::size_t oc = 0; oc < g.out_channels; oc++)
		for (std::size_t y = 0; y < g.out_height(); y++)
			for (std::size_t x = 0; x < g.out_width(); x++)
			{
				T acc(0);
				for (std::size_t c = 0; c < g.in_channels; c++)
					for (std::size_t i = 0; i < g.kernel; i++)
						for (std::size_t j = 0; j < g.kernel; j++)
							acc += input.at(c, y + i, x + j) * weights.at(oc, c, i, j);
				output.at(oc, y, x) = acc;
			}
	return output;
}

Tensor conv2d_direct(const Tensor &input, const Tensor &weights);

BasicTensor<Rational> conv2d_direct_rational(const BasicTensor<Rational> &input, const BasicTensor<Rational> &weights);

} // namespace wino
