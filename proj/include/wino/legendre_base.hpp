#pragma once

#include <wino/matrix.hpp>
#include <wino/rational.hpp>

#include <cstddef>
#include <vector>

namespace wino {

/// Change of polynomial base for m-point transforms. Column j of P holds the
/// ascending canonical coefficients of the j-th base polynomial, so P^T is
/// the row-per-polynomial layout. P * P_inv = I.
struct BaseChange
{
	std::size_t m = 0;
	Matrix<Rational> P;
	Matrix<Rational> P_inv;

	static BaseChange identity(std::size_t m);
};

/// Monic Legendre polynomial of degree n, ascending coefficients (length n+1).
/// p0 = 1, p1 = x, p_{n+1} = x p_n - n^2/(4n^2-1) p_{n-1}.
std::vector<Rational> monic_legendre(std::size_t n);

/// P^T[i][j] = coefficient of x^j in the monic Legendre polynomial p_i.
BaseChange build_base_change(std::size_t m);

/// Exact inverse of a unit lower-triangular matrix by forward substitution.
Matrix<Rational> invert_unit_lower_triangular(const Matrix<Rational> &lower);

} // namespace wino
