#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace wino {

class DimensionError : public std::invalid_argument
{
	public:
		using std::invalid_argument::invalid_argument;
};

/// Small dense row-major matrix. Used for transform matrices and tiles, so
/// nothing here is tuned for speed.
template<typename T>
class Matrix
{
	public:
		Matrix() = default;
		Matrix(std::size_t rows, std::size_t cols, const T &fill = T(0)) :
				m_rows(rows),
				m_cols(cols),
				m_data(rows * cols, fill)
		{
		}
		Matrix(std::initializer_list<std::initializer_list<T>> rows)
		{
			m_rows = rows.size();
			m_cols = m_rows == 0 ? 0 : rows.begin()->size();
			m_data.reserve(m_rows * m_cols);
			for (const auto &row : rows)
			{
				if (row.size() != m_cols)
					throw DimensionError("ragged matrix initializer");
				m_data.insert(m_data.end(), row.begin(), row.end());
			}
		}

		static Matrix identity(std::size_t n)
		{
			Matrix result(n, n);
			for (std::size_t i = 0; i < n; i++)
				result(i, i) = T(1);
			return result;
		}

		std::size_t rows() const noexcept
		{
			return m_rows;
		}
		std::size_t cols() const noexcept
		{
			return m_cols;
		}
		bool empty() const noexcept
		{
			return m_data.empty();
		}

		T& operator()(std::size_t row, std::size_t col) noexcept
		{
			return m_data[row * m_cols + col];
		}
		const T& operator()(std::size_t row, std::size_t col) const noexcept
		{
			return m_data[row * m_cols + col];
		}

		std::vector<T>& data() noexcept
		{
			return m_data;
		}
		const std::vector<T>& data() const noexcept
		{
			return m_data;
		}

		Matrix transposed() const
		{
			Matrix result(m_cols, m_rows);
			for (std::size_t i = 0; i < m_rows; i++)
				for (std::size_t j = 0; j < m_cols; j++)
					result(j, i) = (*this)(i, j);
			return result;
		}

		std::size_t count_nonzero() const
		{
			std::size_t n = 0;
			for (const T &v : m_data)
				if (v != T(0))
					n++;
			return n;
		}

		friend bool operator==(const Matrix &lhs, const Matrix &rhs)
		{
			return lhs.m_rows == rhs.m_rows && lhs.m_cols == rhs.m_cols && lhs.m_data == rhs.m_data;
		}

	private:
		std::size_t m_rows = 0;
		std::size_t m_cols = 0;
		std::vector<T> m_data;
};

template<typename T>
Matrix<T> operator*(const Matrix<T> &lhs, const Matrix<T> &rhs)
{
	if (lhs.cols() != rhs.rows())
		throw DimensionError("matrix product: " + std::to_string(lhs.rows()) + "x" + std::to_string(lhs.cols()) + " times "
				+ std::to_string(rhs.rows()) + "x" + std::to_string(rhs.cols()));
	Matrix<T> result(lhs.rows(), rhs.cols());
	for (std::size_t i = 0; i < lhs.rows(); i++)
		for (std::size_t j = 0; j < rhs.cols(); j++)
		{
			T acc(0);
			for (std::size_t k = 0; k < lhs.cols(); k++)
				acc += lhs(i, k) * rhs(k, j);
			result(i, j) = acc;
		}
	return result;
}

template<typename T>
std::vector<T> operator*(const Matrix<T> &lhs, const std::vector<T> &rhs)
{
	if (lhs.cols() != rhs.size())
		throw DimensionError("matrix-vector product: size mismatch");
	std::vector<T> result(lhs.rows(), T(0));
	for (std::size_t i = 0; i < lhs.rows(); i++)
		for (std::size_t k = 0; k < lhs.cols(); k++)
			result[i] += lhs(i, k) * rhs[k];
	return result;
}

/// left * middle * right, evaluated left to right.
template<typename T>
Matrix<T> sandwich(const Matrix<T> &left, const Matrix<T> &middle, const Matrix<T> &right)
{
	return (left * middle) * right;
}

template<typename T>
Matrix<T> hadamard(const Matrix<T> &lhs, const Matrix<T> &rhs)
{
	if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
		throw DimensionError("hadamard product: shape mismatch");
	Matrix<T> result(lhs.rows(), lhs.cols());
	for (std::size_t i = 0; i < lhs.data().size(); i++)
		result.data()[i] = lhs.data()[i] * rhs.data()[i];
	return result;
}

template<typename To, typename From, typename Convert>
Matrix<To> convert(const Matrix<From> &m, Convert &&fn)
{
	Matrix<To> result(m.rows(), m.cols());
	for (std::size_t i = 0; i < m.data().size(); i++)
		result.data()[i] = fn(m.data()[i]);
	return result;
}

} // namespace wino
