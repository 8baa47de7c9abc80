#pragma once

#include <wino/harness/experiment.hpp>
#include <wino/winograd_construct.hpp>

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wino::harness {

struct SummaryStats
{
	double mean = 0.0;
	double std = 0.0; // sample standard deviation, 0 for a single value
	double median = 0.0;
	double max = 0.0;
};

/// Values are summed in the order given.
SummaryStats summarize(std::span<const double> values);

struct ReportRow
{
	std::string mode;
	std::string qconfig;
	std::string metric; // max_abs_err or rel_l2_err
	SummaryStats stats;
	std::size_t trials = 0;
	std::uint64_t seed = 0;
};

struct StageRow
{
	std::string mode;
	std::string qconfig;
	std::string stage;
	int bits = 0;
	double mean_max_abs = 0.0;
	double mean_scale = 0.0;
};

struct ConditionRow
{
	std::string matrix;
	double cond_two = 0.0;
	double cond_frobenius = 0.0;
};

/// Condition numbers of the canonical transforms (G, B^T, A^T) and of the
/// factors used in the Legendre pipeline (P^T, P^-T, G_P, B_P^T, A_P^T).
std::vector<ConditionRow> condition_table(const FloatPlan &plan);

struct ErrorReport
{
	ExperimentConfig config;
	std::vector<ReportRow> rows;
	std::vector<StageRow> stages;
	std::vector<ConditionRow> conditioning;

	/// Header: mode,qconfig,metric,mean,std,median,max,trials,seed
	std::string to_csv() const;
	nlohmann::json to_json() const;
};

inline constexpr const char *csv_header = "mode,qconfig,metric,mean,std,median,max,trials,seed";

ErrorReport build_report(const ExperimentConfig &config, const FloatPlan &plan, const std::vector<TrialResult> &trials);

/// Shortest round-trip decimal form ("%.17g").
std::string format_double(double value);

} // namespace wino::harness
