#include <wino/legendre_base.hpp>

namespace wino {

BaseChange BaseChange::identity(std::size_t m)
{
	return BaseChange { m, Matrix<Rational>::identity(m), Matrix<Rational>::identity(m) };
}

std::vector<Rational> monic_legendre(std::size_t n)
{
	std::vector<Rational> previous { Rational(1) };
	if (n == 0)
		return previous;
	std::vector<Rational> current { Rational(0), Rational(1) };
	for (std::size_t j = 1; j < n; j++)
	{
		const long jj = static_cast<long>(j * j);
		const Rational factor(jj, 4 * jj - 1);
		std::vector<Rational> next(j + 2, Rational(0));
		for (std::size_t i = 0; i < current.size(); i++)
			next[i + 1] = current[i];
		for (std::size_t i = 0; i < previous.size(); i++)
			next[i] -= factor * previous[i];
		previous = std::move(current);
		current = std::move(next);
	}
	return current;
}

Matrix<Rational> invert_unit_lower_triangular(const Matrix<Rational> &lower)
{
	const std::size_t n = lower.rows();
	if (lower.cols() != n)
		throw DimensionError("triangular inverse needs a square matrix");
	Matrix<Rational> inverse(n, n);
	for (std::size_t col = 0; col < n; col++)
	{
		inverse(col, col) = Rational(1);
		for (std::size_t row = col + 1; row < n; row++)
		{
			Rational acc(0);
			for (std::size_t k = col; k < row; k++)
				acc += lower(row, k) * inverse(k, col);
			inverse(row, col) = -acc;
		}
	}
	return inverse;
}

BaseChange build_base_change(std::size_t m)
{
	Matrix<Rational> PT(m, m);
	for (std::size_t i = 0; i < m; i++)
	{
		const auto coeffs = monic_legendre(i);
		for (std::size_t j = 0; j < coeffs.size(); j++)
			PT(i, j) = coeffs[j];
	}
	const Matrix<Rational> PT_inv = invert_unit_lower_triangular(PT);
	return BaseChange { m, PT.transposed(), PT_inv.transposed() };
}

} // namespace wino
