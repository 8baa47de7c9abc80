#pragma once

#include <wino/legendre_base.hpp>
#include <wino/matrix.hpp>
#include <wino/rational.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace wino {

class InvalidPointsError : public std::invalid_argument
{
	public:
		using std::invalid_argument::invalid_argument;
};

struct InterpolationPoints
{
	std::vector<Rational> finite_points;
	bool use_infinity = true;

	std::size_t count() const noexcept
	{
		return finite_points.size() + (use_infinity ? 1 : 0);
	}

	/// The customary Toom-Cook choice: 0, 1, -1, 2, -2, 1/2, -1/2, 3, -3,
	/// 1/3, -1/3, ... for the first count-1 points, plus infinity.
	/// count == 4 gives {0, 1, -1, inf}; count == 6 gives {0, 1, -1, 2, -2, inf}.
	static InterpolationPoints defaults(std::size_t count);
};

template<typename T>
struct BaseChangeMatrices
{
	Matrix<T> P;
	Matrix<T> P_inv;
	Matrix<T> G_P; // P * G
	Matrix<T> B_P; // P * B
	Matrix<T> A_P; // P * A
};

/// Transform matrices for F(o, k): a 1-D tile computes
///   y = A^T [(G g) . (B^T d)]
/// where g has k taps, d has m = o + k - 1 samples and y has o outputs.
template<typename T>
struct BasicPlan
{
	std::size_t output_size = 0; // o
	std::size_t kernel_size = 0; // k
	std::size_t tile_size = 0;   // m
	Matrix<T> G;                 // m x k
	Matrix<T> B;                 // m x m
	Matrix<T> A;                 // m x o
	std::optional<BaseChangeMatrices<T>> base_change;

	bool has_base_change() const noexcept
	{
		return base_change.has_value();
	}
};

struct WinogradPlan : BasicPlan<Rational>
{
	InterpolationPoints points;
};

/// Double-precision copy of a plan. The exact plan it came from is kept for
/// oracle comparisons.
struct FloatPlan : BasicPlan<double>
{
	WinogradPlan exact;
};

/// Coefficients (ascending degree) of prod (x - r_i). No roots gives [1].
std::vector<Rational> poly_from_roots(std::span<const Rational> roots);

/// Lagrange denominators are folded into G; the point at infinity uses the
/// limit rows (G: [0..0 1], A^T column: [0..0 1], B^T row: modulus polynomial).
/// Throws InvalidPointsError on repeated points and DimensionError when the
/// point count is not o + k - 1.
WinogradPlan build_plan(std::size_t o, std::size_t k, const InterpolationPoints &points, bool use_legendre);

/// Replaces (or adds) the base change of a plan and recomputes G_P, B_P, A_P.
WinogradPlan attach_base_change(WinogradPlan plan, const BaseChange &base);

FloatPlan plan_to_float(const WinogradPlan &plan);

} // namespace wino
