#pragma once

#include <wino/matrix.hpp>

#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace wino {

/// Dense row-major array. Activations are [c, H, W], weights [c_out, c_in, k, k].
template<typename T>
class BasicTensor
{
	public:
		BasicTensor() = default;
		explicit BasicTensor(std::vector<std::size_t> shape, const T &fill = T(0)) :
				m_shape(std::move(shape)),
				m_data(element_count(m_shape), fill)
		{
		}
		BasicTensor(std::vector<std::size_t> shape, std::vector<T> data) :
				m_shape(std::move(shape)),
				m_data(std::move(data))
		{
			if (m_data.size() != element_count(m_shape))
				throw DimensionError("tensor data length " + std::to_string(m_data.size()) + " does not match shape");
		}

		static std::size_t element_count(const std::vector<std::size_t> &shape)
		{
			return std::accumulate(shape.begin(), shape.end(), std::size_t { 1 }, std::multiplies<> { });
		}

		const std::vector<std::size_t>& shape() const noexcept
		{
			return m_shape;
		}
		std::size_t rank() const noexcept
		{
			return m_shape.size();
		}
		std::size_t dim(std::size_t i) const noexcept
		{
			return m_shape[i];
		}
		std::size_t size() const noexcept
		{
			return m_data.size();
		}

		std::vector<T>& data() noexcept
		{
			return m_data;
		}
		const std::vector<T>& data() const noexcept
		{
			return m_data;
		}

		T& at(std::size_t a, std::size_t b, std::size_t c) noexcept
		{
			return m_data[(a * m_shape[1] + b) * m_shape[2] + c];
		}
		const T& at(std::size_t a, std::size_t b, std::size_t c) const noexcept
		{
			return m_data[(a * m_shape[1] + b) * m_shape[2] + c];
		}
		T& at(std::size_t a, std::size_t b, std::size_t c, std::size_t d) noexcept
		{
			return m_data[((a * m_shape[1] + b) * m_shape[2] + c) * m_shape[3] + d];
		}
		const T& at(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const noexcept
		{
			return m_data[((a * m_shape[1] + b) * m_shape[2] + c) * m_shape[3] + d];
		}

		friend bool operator==(const BasicTensor &lhs, const BasicTensor &rhs)
		{
			return lhs.m_shape == rhs.m_shape && lhs.m_data == rhs.m_data;
		}

	private:
		std::vector<std::size_t> m_shape;
		std::vector<T> m_data;
};

using Tensor = BasicTensor<double>;

/// Shape of a valid correlation of input [c_in, H, W] with weights
/// [c_out, c_in, k, k]; throws DimensionError on any mismatch.
struct ConvGeometry
{
	std::size_t in_channels = 0;
	std::size_t out_channels = 0;
	std::size_t height = 0;
	std::size_t width = 0;
	std::size_t kernel = 0;

	std::size_t out_height() const noexcept
	{
		return height - kernel + 1;
	}
	std::size_t out_width() const noexcept
	{
		return width - kernel + 1;
	}
};

template<typename T>
ConvGeometry conv_geometry(const BasicTensor<T> &input, const BasicTensor<T> &weights)
{
	if (input.rank() != 3)
		throw DimensionError("input must be [c_in, H, W]");
	if (weights.rank() != 4)
		throw DimensionError("weights must be [c_out, c_in, k, k]");
	if (weights.dim(2) != weights.dim(3))
		throw DimensionError("kernel must be square");
	if (weights.dim(1) != input.dim(0))
		throw DimensionError("weights expect " + std::to_string(weights.dim(1)) + " input channels, input has " + std::to_string(input.dim(0)));
	ConvGeometry g { input.dim(0), weights.dim(0), input.dim(1), input.dim(2), weights.dim(2) };
	if (g.kernel == 0 || g.height < g.kernel || g.width < g.kernel)
		throw DimensionError("input smaller than kernel");
	return g;
}

} // namespace wino
