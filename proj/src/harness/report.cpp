#include <wino/harness/report.hpp>
#include <wino/conditioning.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace wino::harness {

SummaryStats summarize(std::span<const double> values)
{
	SummaryStats s;
	if (values.empty())
		return s;
	const double n = static_cast<double>(values.size());
	double sum = 0.0;
	for (double v : values)
		sum += v;
	s.mean = sum / n;
	if (values.size() > 1)
	{
		double sq = 0.0;
		for (double v : values)
			sq += (v - s.mean) * (v - s.mean);
		s.std = std::sqrt(sq / (n - 1.0));
	}
	std::vector<double> sorted(values.begin(), values.end());
	std::sort(sorted.begin(), sorted.end());
	const std::size_t mid = sorted.size() / 2;
	s.median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
	s.max = sorted.back();
	return s;
}

std::string format_double(double value)
{
	char buffer[32];
	std::snprintf(buffer, sizeof(buffer), "%.17g", value);
	return buffer;
}

std::vector<ConditionRow> condition_table(const FloatPlan &plan)
{
	std::vector<std::pair<std::string, Matrix<double>>> named { { "G", plan.G }, { "B^T", plan.B.transposed() }, { "A^T", plan.A.transposed() } };
	if (plan.base_change)
	{
		const auto &bc = *plan.base_change;
		named.emplace_back("P^T", bc.P.transposed());
		named.emplace_back("P^-T", bc.P_inv.transposed());
		named.emplace_back("G_P", bc.G_P);
		named.emplace_back("B_P^T", bc.B_P.transposed());
		named.emplace_back("A_P^T", bc.A_P.transposed());
	}
	std::vector<ConditionRow> rows;
	for (const auto &[name, m] : named)
		rows.push_back( { name, condition_number(m, MatrixNorm::two), condition_number(m, MatrixNorm::frobenius) });
	return rows;
}

ErrorReport build_report(const ExperimentConfig &config, const FloatPlan &plan, const std::vector<TrialResult> &trials)
{
	ErrorReport report;
	report.config = config;
	report.conditioning = condition_table(plan);
	const std::size_t nq = config.qconfigs.size();
	for (std::size_t mi = 0; mi < config.modes.size(); mi++)
		for (std::size_t qi = 0; qi < nq; qi++)
		{
			const std::size_t cell = mi * nq + qi;
			const std::string mode(to_string(config.modes[mi]));
			const std::string &qname = config.qconfigs[qi].name;
			std::vector<double> max_abs, rel_l2;
			for (const auto &t : trials)
			{
				max_abs.push_back(t.cells.at(cell).metrics.max_abs_err);
				rel_l2.push_back(t.cells.at(cell).metrics.rel_l2_err);
			}
			report.rows.push_back( { mode, qname, "max_abs_err", summarize(max_abs), trials.size(), config.seed });
			report.rows.push_back( { mode, qname, "rel_l2_err", summarize(rel_l2), trials.size(), config.seed });

			if (trials.empty())
				continue;
			const auto &first = trials.front().cells.at(cell).stages;
			for (std::size_t s = 0; s < first.size(); s++)
			{
				double max_abs_sum = 0.0, scale_sum = 0.0;
				for (const auto &t : trials)
				{
					max_abs_sum += t.cells.at(cell).stages.at(s).max_abs;
					scale_sum += t.cells.at(cell).stages.at(s).scale;
				}
				const double n = static_cast<double>(trials.size());
				report.stages.push_back( { mode, qname, first[s].stage, first[s].bits, max_abs_sum / n, scale_sum / n });
			}
		}
	return report;
}

std::string ErrorReport::to_csv() const
{
	std::ostringstream out;
	out << csv_header << '\n';
	for (const auto &r : rows)
		out << r.mode << ',' << r.qconfig << ',' << r.metric << ',' << format_double(r.stats.mean) << ',' << format_double(r.stats.std) << ','
				<< format_double(r.stats.median) << ',' << format_double(r.stats.max) << ',' << r.trials << ',' << r.seed << '\n';
	return out.str();
}

nlohmann::json ErrorReport::to_json() const
{
	nlohmann::json j;
	j["config"] = experiment_config_to_json(config);
	j["rows"] = nlohmann::json::array();
	for (const auto &r : rows)
		j["rows"].push_back( { { "mode", r.mode }, { "qconfig", r.qconfig }, { "metric", r.metric }, { "mean", r.stats.mean }, { "std", r.stats.std }, {
				"median", r.stats.median }, { "max", r.stats.max }, { "trials", r.trials }, { "seed", r.seed } });
	j["stages"] = nlohmann::json::array();
	for (const auto &s : stages)
		j["stages"].push_back( { { "mode", s.mode }, { "qconfig", s.qconfig }, { "stage", s.stage }, { "bits", s.bits }, { "mean_max_abs", s.mean_max_abs }, {
				"mean_scale", s.mean_scale } });
	j["conditioning"] = nlohmann::json::array();
	for (const auto &c : conditioning)
		j["conditioning"].push_back( { { "matrix", c.matrix }, { "cond_two", c.cond_two }, { "cond_frobenius", c.cond_frobenius } });
	return j;
}

} // namespace wino::harness
