#include "test_support.hpp"

#include <wino/pipeline.hpp>
#include <wino/reference_conv.hpp>

#include <gtest/gtest.h>

using namespace wino;
using namespace wino::test_util;

namespace {

FloatPlan f43()
{
	return plan_to_float(build_plan(4, 3, InterpolationPoints::defaults(6), true));
}

FloatPlan f43_identity_base()
{
	const auto exact = build_plan(4, 3, InterpolationPoints::defaults(6), false);
	return plan_to_float(attach_base_change(exact, BaseChange::identity(6)));
}

} // namespace

TEST(BaseModeNames, RoundTrip)
{
	EXPECT_EQ(parse_base_mode(to_string(BaseMode::canonical)), BaseMode::canonical);
	EXPECT_EQ(parse_base_mode(to_string(BaseMode::legendre)), BaseMode::legendre);
	EXPECT_THROW(parse_base_mode("chebyshev"), std::invalid_argument);
}

TEST(TransformWeights, ZeroGivesZero)
{
	const auto plan = f43();
	for (auto mode : { BaseMode::canonical, BaseMode::legendre })
	{
		const auto t = transform_weights(Matrix<double>(3, 3), plan, mode);
		for (double v : t.data())
			EXPECT_EQ(v, 0.0);
	}
}

TEST(Transforms, IdentityBaseDegeneratesToCanonical)
{
	const auto plan = f43_identity_base();
	std::mt19937_64 rng(1);
	const auto w = random_matrix(rng, 3, 3);
	const auto x = random_matrix(rng, 6, 6);
	EXPECT_EQ(transform_weights(w, plan, BaseMode::legendre), transform_weights(w, plan, BaseMode::canonical));
	EXPECT_EQ(transform_input(x, plan, BaseMode::legendre), transform_input(x, plan, BaseMode::canonical));
	EXPECT_EQ(transform_output(x, plan, BaseMode::legendre), transform_output(x, plan, BaseMode::canonical));
}

TEST(Transforms, ModesAgreeInDoublePrecision)
{
	const auto plan = f43();
	std::mt19937_64 rng(2);
	for (int t = 0; t < 50; t++)
	{
		const auto w = random_matrix(rng, 3, 3);
		const auto x = random_matrix(rng, 6, 6);
		EXPECT_LE(max_abs_diff(transform_weights(w, plan, BaseMode::legendre).data(), transform_weights(w, plan, BaseMode::canonical).data()), 1e-12);
		EXPECT_LE(max_abs_diff(transform_input(x, plan, BaseMode::legendre).data(), transform_input(x, plan, BaseMode::canonical).data()), 1e-12);
		EXPECT_LE(max_abs_diff(transform_output(x, plan, BaseMode::legendre).data(), transform_output(x, plan, BaseMode::canonical).data()), 1e-12);
	}
}

TEST(Transforms, ModesAgreeExactlyInRationalArithmetic)
{
	const auto plan = build_plan(4, 3, InterpolationPoints::defaults(6), true);
	std::mt19937_64 rng(3);
	for (int t = 0; t < 20; t++)
	{
		const auto w = random_rational_matrix(rng, 3, 3);
		const auto x = random_rational_matrix(rng, 6, 6);
		EXPECT_EQ(transform_weights(w, plan, BaseMode::legendre), transform_weights(w, plan, BaseMode::canonical));
		EXPECT_EQ(transform_input(x, plan, BaseMode::legendre), transform_input(x, plan, BaseMode::canonical));
		EXPECT_EQ(transform_output(x, plan, BaseMode::legendre), transform_output(x, plan, BaseMode::canonical));
	}
}

TEST(Transforms, LegendreStagesAreSeparateSandwiches)
{
	const auto plan = f43();
	const auto w = weight_steps(plan, BaseMode::legendre);
	ASSERT_EQ(w.size(), 2u);
	EXPECT_EQ(w[0].kind, StageKind::vandermonde);
	EXPECT_EQ(w[1].kind, StageKind::base_change);
	const auto in = input_steps(plan, BaseMode::legendre);
	ASSERT_EQ(in.size(), 2u);
	EXPECT_EQ(in[0].kind, StageKind::base_change);
	const auto out = output_steps(plan, BaseMode::legendre);
	ASSERT_EQ(out.size(), 2u);
	EXPECT_EQ(out[1].kind, StageKind::vandermonde);
	EXPECT_EQ(weight_steps(plan, BaseMode::canonical).size(), 1u);
}

TEST(Transforms, ShapeErrors)
{
	const auto plan = f43();
	EXPECT_THROW(transform_weights(Matrix<double>(2, 3), plan, BaseMode::canonical), DimensionError);
	EXPECT_THROW(transform_input(Matrix<double>(5, 6), plan, BaseMode::canonical), DimensionError);
	EXPECT_THROW(transform_output(Matrix<double>(6, 4), plan, BaseMode::legendre), DimensionError);
}

TEST(Transforms, LegendreNeedsBaseChange)
{
	const auto plan = plan_to_float(build_plan(4, 3, InterpolationPoints::defaults(6), false));
	EXPECT_THROW(transform_weights(Matrix<double>(3, 3), plan, BaseMode::legendre), std::invalid_argument);
}

TEST(Conv2dWinograd, OnesGiveNine)
{
	const auto plan = f43();
	const Tensor x( { 1, 6, 6 }, 1.0);
	const Tensor w( { 1, 1, 3, 3 }, 1.0);
	for (auto mode : { BaseMode::canonical, BaseMode::legendre })
	{
		const Tensor y = conv2d_winograd(x, w, plan, mode);
		EXPECT_EQ(y.shape(), (std::vector<std::size_t> { 1, 4, 4 }));
		for (double v : y.data())
			EXPECT_NEAR(v, 9.0, 1e-12);
	}
}

TEST(Conv2dWinograd, ZerosGiveZeros)
{
	const auto plan = f43();
	std::mt19937_64 rng(4);
	const Tensor w = random_tensor(rng, { 1, 1, 3, 3 });
	for (auto mode : { BaseMode::canonical, BaseMode::legendre })
	{
		const Tensor y = conv2d_winograd(Tensor( { 1, 6, 6 }), w, plan, mode);
		for (double v : y.data())
			EXPECT_EQ(v, 0.0);
	}
}

TEST(Conv2dWinograd, MultiChannelMatchesDirect)
{
	const auto plan = f43();
	std::mt19937_64 rng(5);
	const Tensor x = random_tensor(rng, { 2, 10, 10 });
	const Tensor w = random_tensor(rng, { 3, 2, 3, 3 });
	const Tensor ref = conv2d_direct(x, w);
	for (auto mode : { BaseMode::canonical, BaseMode::legendre })
	{
		const Tensor y = conv2d_winograd(x, w, plan, mode);
		ASSERT_EQ(y.shape(), ref.shape());
		EXPECT_LE(rel_l2(y.data(), ref.data()), 1e-10);
	}
}

TEST(Conv2dWinograd, RandomSuiteMatchesDirect)
{
	std::mt19937_64 rng(6);
	const FloatPlan plans[] = { plan_to_float(build_plan(2, 3, InterpolationPoints::defaults(4), true)), f43() };
	std::uniform_int_distribution<int> pick(0, 1);
	std::uniform_int_distribution<std::size_t> extent(6, 16);
	for (int t = 0; t < 200; t++)
	{
		const FloatPlan &plan = plans[pick(rng)];
		const std::size_t c_in = pick(rng) ? 3 : 1;
		const std::size_t c_out = pick(rng) ? 4 : 1;
		const Tensor x = random_tensor(rng, { c_in, extent(rng), extent(rng) });
		const Tensor w = random_tensor(rng, { c_out, c_in, 3, 3 });
		const Tensor ref = conv2d_direct(x, w);
		for (auto mode : { BaseMode::canonical, BaseMode::legendre })
			ASSERT_LE(rel_l2(conv2d_winograd(x, w, plan, mode).data(), ref.data()), 1e-10) << "case " << t;
	}
}

TEST(Conv2dWinograd, BaseModesAgree)
{
	const auto plan = f43();
	std::mt19937_64 rng(7);
	for (int t = 0; t < 20; t++)
	{
		const Tensor x = random_tensor(rng, { 2, 11, 9 });
		const Tensor w = random_tensor(rng, { 2, 2, 3, 3 });
		EXPECT_LE(max_abs_diff(conv2d_winograd(x, w, plan, BaseMode::canonical).data(), conv2d_winograd(x, w, plan, BaseMode::legendre).data()), 1e-12);
	}
}

TEST(Conv2dWinograd, Linearity)
{
	const auto plan = f43();
	std::mt19937_64 rng(8);
	const Tensor x = random_tensor(rng, { 2, 9, 9 });
	const Tensor w = random_tensor(rng, { 2, 2, 3, 3 });
	Tensor scaled = x;
	for (double &v : scaled.data())
		v *= -3.5;
	for (auto mode : { BaseMode::canonical, BaseMode::legendre })
	{
		Tensor expected = conv2d_winograd(x, w, plan, mode);
		for (double &v : expected.data())
			v *= -3.5;
		EXPECT_LE(rel_l2(conv2d_winograd(scaled, w, plan, mode).data(), expected.data()), 1e-13);
	}
}

TEST(Conv2dWinograd, NoSeamsAtNonMultipleSizes)
{
	const auto plan = f43();
	std::mt19937_64 rng(9);
	// Output extents 1..9 cover every remainder modulo o = 4.
	for (std::size_t h = 3; h <= 11; h++)
		for (std::size_t w = 3; w <= 11; w += 2)
		{
			const Tensor x = random_tensor(rng, { 1, h, w });
			const Tensor k = random_tensor(rng, { 1, 1, 3, 3 });
			const Tensor ref = conv2d_direct(x, k);
			for (auto mode : { BaseMode::canonical, BaseMode::legendre })
				ASSERT_LE(max_abs_diff(conv2d_winograd(x, k, plan, mode).data(), ref.data()), 1e-12) << h << "x" << w;
		}
}

TEST(Conv2dWinograd, ExactInRationalArithmetic)
{
	for (std::size_t o : { 2u, 4u, 6u })
	{
		const auto plan = build_plan(o, 3, InterpolationPoints::defaults(o + 2), true);
		std::mt19937_64 rng(10 + o);
		for (int t = 0; t < 5; t++)
		{
			const auto x = random_rational_tensor(rng, { 2, 9, 8 });
			const auto w = random_rational_tensor(rng, { 2, 2, 3, 3 });
			const auto ref = conv2d_direct_rational(x, w);
			EXPECT_EQ(conv2d_winograd_generic(x, w, plan, BaseMode::canonical), ref);
			EXPECT_EQ(conv2d_winograd_generic(x, w, plan, BaseMode::legendre), ref);
		}
	}
}

TEST(Conv2dWinograd, Errors)
{
	const auto plan = f43();
	EXPECT_THROW(conv2d_winograd(Tensor( { 1, 2, 6 }), Tensor( { 1, 1, 3, 3 }), plan, BaseMode::canonical), DimensionError);
	EXPECT_THROW(conv2d_winograd(Tensor( { 1, 6, 6 }), Tensor( { 1, 1, 5, 5 }), plan, BaseMode::canonical), DimensionError);
}

TEST(Conv2dWinograd, Deterministic)
{
	const auto plan = f43();
	std::mt19937_64 rng(12);
	const Tensor x = random_tensor(rng, { 3, 12, 12 });
	const Tensor w = random_tensor(rng, { 2, 3, 3, 3 });
	EXPECT_EQ(conv2d_winograd(x, w, plan, BaseMode::legendre), conv2d_winograd(x, w, plan, BaseMode::legendre));
}
