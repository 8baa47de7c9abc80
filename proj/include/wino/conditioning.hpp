#pragma once

#include <wino/matrix.hpp>

namespace wino {

enum class MatrixNorm
{
	two,
	frobenius
};

/// sigma_max / sigma_min for the two-norm, ||M||_F * ||M^+||_F for Frobenius.
/// Rectangular matrices use the pseudo-inverse. Returns +infinity when the
/// matrix is numerically rank deficient.
double condition_number(const Matrix<double> &matrix, MatrixNorm norm = MatrixNorm::two);

} // namespace wino
