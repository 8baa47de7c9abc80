#include <wino/winograd_construct.hpp>

#include <algorithm>
#include <string>

namespace wino {

InterpolationPoints InterpolationPoints::defaults(std::size_t count)
{
	InterpolationPoints result;
	if (count == 0)
	{
		result.use_infinity = false;
		return result;
	}
	const std::size_t finite = count - 1;
	if (finite > 0)
		result.finite_points.emplace_back(0);
	for (long n = 1; result.finite_points.size() < finite; n++)
	{
		const Rational candidates[] = { Rational(n), Rational(-n), Rational(1, n), Rational(-1, n) };
		for (const Rational &c : candidates)
		{
			if (result.finite_points.size() == finite)
				break;
			bool seen = false;
			for (const Rational &p : result.finite_points)
				seen = seen || (p == c);
			if (!seen)
				result.finite_points.push_back(c);
		}
	}
	return result;
}

std::vector<Rational> poly_from_roots(std::span<const Rational> roots)
{
	std::vector<Rational> coeffs { Rational(1) };
	for (const Rational &r : roots)
	{
		std::vector<Rational> next(coeffs.size() + 1, Rational(0));
		for (std::size_t i = 0; i < coeffs.size(); i++)
		{
			next[i + 1] += coeffs[i];
			next[i] -= r * coeffs[i];
		}
		coeffs = std::move(next);
	}
	return coeffs;
}

WinogradPlan attach_base_change(WinogradPlan plan, const BaseChange &base)
{
	if (base.m != plan.tile_size)
		throw DimensionError("base change of size " + std::to_string(base.m) + " does not match tile size " + std::to_string(plan.tile_size));
	BaseChangeMatrices<Rational> bc;
	bc.P = base.P;
	bc.P_inv = base.P_inv;
	bc.G_P = base.P * plan.G;
	bc.B_P = base.P * plan.B;
	bc.A_P = base.P * plan.A;
	plan.base_change = std::move(bc);
	return plan;
}

WinogradPlan build_plan(std::size_t o, std::size_t k, const InterpolationPoints &points, bool use_legendre)
{
	if (o == 0 || k == 0)
		throw DimensionError("output and kernel sizes must be positive");
	const std::size_t m = o + k - 1;
	if (points.count() != m)
		throw DimensionError("F(" + std::to_string(o) + "," + std::to_string(k) + ") needs " + std::to_string(m) + " points, got "
				+ std::to_string(points.count()));
	const auto &pts = points.finite_points;
	for (std::size_t i = 0; i < pts.size(); i++)
		for (std::size_t j = i + 1; j < pts.size(); j++)
			if (pts[i] == pts[j])
				throw InvalidPointsError("duplicate interpolation point " + to_string(pts[i]));

	WinogradPlan plan;
	plan.output_size = o;
	plan.kernel_size = k;
	plan.tile_size = m;
	plan.points = points;
	plan.G = Matrix<Rational>(m, k);
	plan.B = Matrix<Rational>(m, m);
	plan.A = Matrix<Rational>(m, o);

	// Finite point i: G row is the scaled Vandermonde row, B^T row is the
	// Lagrange numerator prod_{j != i} (x - p_j), A^T column is the plain
	// Vandermonde column.
	for (std::size_t i = 0; i < pts.size(); i++)
	{
		std::vector<Rational> others;
		Rational denominator(1);
		for (std::size_t j = 0; j < pts.size(); j++)
			if (j != i)
			{
				others.push_back(pts[j]);
				denominator *= pts[i] - pts[j];
			}
		Rational power(1);
		for (std::size_t c = 0; c < std::max(k, o); c++)
		{
			if (c < k)
				plan.G(i, c) = power / denominator;
			if (c < o)
				plan.A(i, c) = power;
			power *= pts[i];
		}
		const auto numerator = poly_from_roots(others);
		for (std::size_t c = 0; c < numerator.size(); c++)
			plan.B(c, i) = numerator[c];
	}
	if (points.use_infinity)
	{
		const std::size_t i = m - 1;
		plan.G(i, k - 1) = Rational(1);
		plan.A(i, o - 1) = Rational(1);
		const auto modulus = poly_from_roots(pts);
		for (std::size_t c = 0; c < modulus.size(); c++)
			plan.B(c, i) = modulus[c];
	}

	if (use_legendre)
		plan = attach_base_change(std::move(plan), build_base_change(m));
	return plan;
}

FloatPlan plan_to_float(const WinogradPlan &plan)
{
	const auto cvt = [](const Matrix<Rational> &m) {
		return convert<double>(m, [](const Rational &r) {
			return to_double(r);
		});
	};
	FloatPlan result;
	result.output_size = plan.output_size;
	result.kernel_size = plan.kernel_size;
	result.tile_size = plan.tile_size;
	result.G = cvt(plan.G);
	result.B = cvt(plan.B);
	result.A = cvt(plan.A);
	if (plan.base_change)
	{
		const auto &bc = *plan.base_change;
		result.base_change = BaseChangeMatrices<double> { cvt(bc.P), cvt(bc.P_inv), cvt(bc.G_P), cvt(bc.B_P), cvt(bc.A_P) };
	}
	result.exact = plan;
	return result;
}

} // namespace wino
