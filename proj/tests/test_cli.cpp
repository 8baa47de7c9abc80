#include "test_support.hpp"

#include <wino/harness/commands.hpp>
#include <wino/harness/tensor_io.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wino;
using namespace wino::harness;

namespace {

struct CliResult
{
	int code;
	std::string out;
	std::string err;
};

CliResult run(std::vector<std::string> args)
{
	std::ostringstream out, err;
	const int code = run_cli(args, out, err);
	return { code, out.str(), err.str() };
}

class CliFiles : public ::testing::Test
{
	protected:
		void SetUp() override
		{
			dir = std::filesystem::temp_directory_path() / ("wino_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_"
					+ ::testing::UnitTest::GetInstance()->current_test_info()->name());
			std::filesystem::create_directories(dir);
		}
		void TearDown() override
		{
			std::filesystem::remove_all(dir);
		}
		std::string path(const std::string &name) const
		{
			return (dir / name).string();
		}
		std::string slurp(const std::string &name) const
		{
			std::ifstream in(path(name));
			std::stringstream ss;
			ss << in.rdbuf();
			return ss.str();
		}
		std::filesystem::path dir;
};

} // namespace

TEST(Cli, GenMatricesLegendreExact)
{
	const auto r = run( { "gen-matrices", "--tile", "4", "--kernel", "3", "--base", "legendre" });
	ASSERT_EQ(r.code, 0) << r.err;
	EXPECT_NE(r.out.find("P^T (6x6)"), std::string::npos);
	EXPECT_NE(r.out.find("-1/3    0    1     0 0 0"), std::string::npos);
	EXPECT_NE(r.out.find("3/35    0 -6/7     0 1 0"), std::string::npos);
	EXPECT_NE(r.out.find("0 5/21    0 -10/9 0 1"), std::string::npos);
	EXPECT_NE(r.out.find("1/5   0 6/7    0 1 0"), std::string::npos);
}

TEST(Cli, GenMatricesJsonFractions)
{
	const auto r = run( { "--json", "gen-matrices", "--tile", "4", "--base", "legendre" });
	ASSERT_EQ(r.code, 0) << r.err;
	const auto j = nlohmann::json::parse(r.out);
	EXPECT_EQ(j.at("points"), "0,1,-1,2,-2,inf");
	const auto &pt = j.at("matrices").at(3);
	EXPECT_EQ(pt.at("name"), "P^T");
	EXPECT_EQ(pt.at("rows").at(5), (nlohmann::json { "0", "5/21", "0", "-10/9", "0", "1" }));
}

TEST(Cli, GenMatricesCanonicalF23PassesOracle)
{
	const auto r = run( { "--json", "gen-matrices", "--tile", "2", "--points", "0,1,-1,inf", "--format", "exact" });
	ASSERT_EQ(r.code, 0) << r.err;
	const auto j = nlohmann::json::parse(r.out);
	auto load = [&](std::size_t idx) {
		const auto &rows = j.at("matrices").at(idx).at("rows");
		Matrix<Rational> m(rows.size(), rows.at(0).size());
		for (std::size_t i = 0; i < m.rows(); i++)
			for (std::size_t c = 0; c < m.cols(); c++)
				m(i, c) = parse_rational(rows.at(i).at(c).get<std::string>());
		return m;
	};
	const auto G = load(0), BT = load(1), AT = load(2);
	std::mt19937_64 rng(3);
	for (int t = 0; t < 50; t++)
	{
		const auto g = test_util::random_rational_vector(rng, 3);
		const auto d = test_util::random_rational_vector(rng, 4);
		const auto u = G * g, v = BT * d;
		std::vector<Rational> h(4);
		for (std::size_t i = 0; i < 4; i++)
			h[i] = u[i] * v[i];
		EXPECT_EQ(AT * h, test_util::correlate_1d(d, g));
	}
}

TEST(Cli, GenMatricesFloatFormat)
{
	const auto r = run( { "gen-matrices", "--base", "legendre", "--format", "float" });
	ASSERT_EQ(r.code, 0);
	EXPECT_NE(r.out.find("-0.33333333333333331"), std::string::npos);
}

TEST(Cli, DuplicatePointsExitTwo)
{
	const auto r = run( { "gen-matrices", "--tile", "2", "--kernel", "3", "--points", "0,1,1,inf" });
	EXPECT_EQ(r.code, 2);
	EXPECT_NE(r.err.find("duplicate interpolation point"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo)
{
	EXPECT_EQ(run( { }).code, 2);
	EXPECT_EQ(run( { "frobnicate" }).code, 2);
	EXPECT_EQ(run( { "gen-matrices", "--base", "hermite" }).code, 2);
	EXPECT_EQ(run( { "gen-matrices", "--tile", "4", "--points", "0,1,inf" }).code, 2);
	EXPECT_EQ(run( { "--help" }).code, 0);
}

TEST(Cli, CondTable)
{
	const auto r = run( { "cond", "--tile", "4", "--kernel", "3" });
	ASSERT_EQ(r.code, 0) << r.err;
	EXPECT_NE(r.out.find("matrix,cond_two,cond_frobenius"), std::string::npos);
	EXPECT_NE(r.out.find("B_P^T,"), std::string::npos);

	const auto trivial = run( { "--json", "cond", "--tile", "1", "--kernel", "1" });
	ASSERT_EQ(trivial.code, 0) << trivial.err;
	const auto j = nlohmann::json::parse(trivial.out);
	for (const auto &row : j.at("conditioning"))
		if (row.at("matrix") == "P^T")
			EXPECT_EQ(row.at("cond_two").get<double>(), 1.0);
}

TEST_F(CliFiles, ConvZeroInput)
{
	write_tensor_file(path("x.json"), Tensor( { 1, 8, 8 }));
	std::mt19937_64 rng(1);
	write_tensor_file(path("w.json"), test_util::random_tensor(rng, { 2, 1, 3, 3 }));
	const auto r = run( { "--output", path("y.json"), "conv", "--input", path("x.json"), "--weights", path("w.json"), "--mode", "legendre", "--quant", "8b" });
	ASSERT_EQ(r.code, 0) << r.err;
	EXPECT_NE(r.out.find("rel_l2_err=0 "), std::string::npos) << r.out;
	const Tensor y = read_tensor_file(path("y.json"));
	EXPECT_EQ(y.shape(), (std::vector<std::size_t> { 2, 6, 6 }));
	for (double v : y.data())
		EXPECT_EQ(v, 0.0);
}

TEST_F(CliFiles, ConvFloatAndQuantizedErrors)
{
	std::mt19937_64 rng(2);
	write_tensor_file(path("x.json"), test_util::random_tensor(rng, { 3, 11, 13 }));
	write_tensor_file(path("w.json"), test_util::random_tensor(rng, { 2, 3, 3, 3 }));
	for (const char *mode : { "canonical", "legendre" })
	{
		const auto fl = run( { "--json", "conv", "--input", path("x.json"), "--weights", path("w.json"), "--mode", mode });
		ASSERT_EQ(fl.code, 0) << fl.err;
		EXPECT_LE(nlohmann::json::parse(fl.err).at("rel_l2_err").get<double>(), 1e-10);
		EXPECT_EQ(tensor_from_json(nlohmann::json::parse(fl.out)).shape(), (std::vector<std::size_t> { 2, 9, 11 }));

		const auto q = run( { "--json", "conv", "--input", path("x.json"), "--weights", path("w.json"), "--mode", mode, "--quant", "8b" });
		ASSERT_EQ(q.code, 0) << q.err;
		EXPECT_GT(nlohmann::json::parse(q.err).at("rel_l2_err").get<double>(), 0.0);
	}
	const auto direct = run( { "--json", "conv", "--input", path("x.json"), "--weights", path("w.json"), "--mode", "direct", "--quant", "8b" });
	ASSERT_EQ(direct.code, 0) << direct.err;
	EXPECT_GT(nlohmann::json::parse(direct.err).at("rel_l2_err").get<double>(), 0.0);
}

TEST_F(CliFiles, ConvRejectsBadFiles)
{
	{
		std::ofstream(path("bad.json")) << "{not json";
	}
	write_tensor_file(path("w.json"), Tensor( { 1, 2, 3, 3 }));
	write_tensor_file(path("x.json"), Tensor( { 1, 5, 5 }));
	EXPECT_EQ(run( { "conv", "--input", path("bad.json"), "--weights", path("w.json") }).code, 2);
	EXPECT_EQ(run( { "conv", "--input", path("x.json"), "--weights", path("w.json") }).code, 2);
	EXPECT_EQ(run( { "conv", "--input", path("missing.json"), "--weights", path("w.json") }).code, 1);
	EXPECT_EQ(run( { "conv", "--input", path("x.json") }).code, 2);
}

TEST_F(CliFiles, BenchErrorIsByteIdenticalAcrossRunsAndThreads)
{
	{
		std::ofstream(path("cfg.json")) << R"({"trials": 6, "seed": 17, "channels": [2, 2], "spatial": [9, 9]})";
	}
	const auto a = run( { "bench-error", "--config", path("cfg.json") });
	const auto b = run( { "bench-error", "--config", path("cfg.json") });
	const auto c = run( { "bench-error", "--config", path("cfg.json"), "--threads", "3" });
	ASSERT_EQ(a.code, 0) << a.err;
	EXPECT_EQ(a.out, b.out);
	EXPECT_EQ(a.out, c.out);
	EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "mode,qconfig,metric,mean,std,median,max,trials,seed");

	const auto seeded = run( { "--seed", "18", "bench-error", "--config", path("cfg.json") });
	EXPECT_NE(seeded.out, a.out);
	EXPECT_NE(seeded.out.find(",6,18\n"), std::string::npos);

	ASSERT_EQ(run( { "--output", path("report.csv"), "bench-error", "--config", path("cfg.json") }).code, 0);
	EXPECT_EQ(slurp("report.csv"), a.out);
	const auto j = nlohmann::json::parse(slurp("report.json"));
	EXPECT_EQ(j.at("rows").size(), 18u);
}

TEST_F(CliFiles, BenchErrorConfigErrors)
{
	{
		std::ofstream(path("cfg.json")) << R"({"trials": 0})";
	}
	EXPECT_EQ(run( { "bench-error", "--config", path("cfg.json") }).code, 2);
	EXPECT_EQ(run( { "bench-error", "--config", path("nope.json") }).code, 2);
	{
		std::ofstream(path("broken.json")) << "{";
	}
	EXPECT_EQ(run( { "bench-error", "--config", path("broken.json") }).code, 2);
}
