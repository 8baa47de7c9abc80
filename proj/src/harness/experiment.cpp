#include <wino/harness/experiment.hpp>
#include <wino/harness/points_spec.hpp>
#include <wino/reference_conv.hpp>

#include <atomic>
#include <cmath>
#include <regex>
#include <stdexcept>
#include <thread>

namespace wino::harness {

NamedQuantConfig preset_quant_config(const std::string &name)
{
	if (name == "float")
		return { name, std::nullopt };
	static const std::regex pattern(R"((\d+)b(?:\+(\d+)b)?)");
	std::smatch match;
	if (!std::regex_match(name, match, pattern))
		throw std::invalid_argument("unknown quantization preset '" + name + "' (expected float, <b>b or <b>b+<h>b)");
	QuantConfig config = QuantConfig::uniform(std::stoi(match[1].str()));
	if (match[2].matched)
		config.hadamard_bits = std::stoi(match[2].str());
	config.validate();
	return { name, config };
}

std::string_view to_string(PipelineKind kind) noexcept
{
	switch (kind)
	{
		case PipelineKind::canonical:
			return "canonical";
		case PipelineKind::legendre:
			return "legendre";
		case PipelineKind::direct:
			return "direct";
	}
	return "unknown";
}

PipelineKind parse_pipeline_kind(std::string_view text)
{
	if (text == "canonical")
		return PipelineKind::canonical;
	if (text == "legendre")
		return PipelineKind::legendre;
	if (text == "direct")
		return PipelineKind::direct;
	throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected canonical, legendre or direct)");
}

void ExperimentConfig::validate() const
{
	if (o == 0 || k == 0)
		throw std::invalid_argument("o and k must be positive");
	if (trials == 0)
		throw std::invalid_argument("trials must be at least 1");
	if (modes.empty())
		throw std::invalid_argument("modes must not be empty");
	if (qconfigs.empty())
		throw std::invalid_argument("qconfigs must not be empty");
	if (in_channels == 0 || out_channels == 0)
		throw std::invalid_argument("channel counts must be positive");
	if (height < k || width < k)
		throw std::invalid_argument("spatial size must be at least the kernel size");
	for (std::size_t i = 0; i < modes.size(); i++)
		for (std::size_t j = i + 1; j < modes.size(); j++)
			if (modes[i] == modes[j])
				throw std::invalid_argument("mode '" + std::string(to_string(modes[i])) + "' listed twice");
	for (std::size_t i = 0; i < qconfigs.size(); i++)
	{
		if (qconfigs[i].name.empty())
			throw std::invalid_argument("qconfig names must not be empty");
		if (qconfigs[i].config)
			qconfigs[i].config->validate();
		for (std::size_t j = i + 1; j < qconfigs.size(); j++)
			if (qconfigs[i].name == qconfigs[j].name)
				throw std::invalid_argument("qconfig '" + qconfigs[i].name + "' listed twice");
	}
}

namespace {

const char *const bit_fields[] = { "input_bits", "weight_bits", "input_transform_bits", "weight_transform_bits", "base_change_bits", "hadamard_bits",
		"output_transform_bits" };

int* bit_field(QuantConfig &c, std::string_view key)
{
	int *fields[] = { &c.input_bits, &c.weight_bits, &c.input_transform_bits, &c.weight_transform_bits, &c.base_change_bits, &c.hadamard_bits,
			&c.output_transform_bits };
	for (std::size_t i = 0; i < std::size(bit_fields); i++)
		if (key == bit_fields[i])
			return fields[i];
	return nullptr;
}

NamedQuantConfig qconfig_from_json(const nlohmann::json &j)
{
	if (j.is_string())
		return preset_quant_config(j.get<std::string>());
	if (!j.is_object() || !j.contains("name") || !j.at("name").is_string())
		throw std::invalid_argument("qconfig entries must be preset names or objects with a \"name\"");
	NamedQuantConfig result { j.at("name").get<std::string>(), QuantConfig { } };
	for (const auto &[key, value] : j.items())
	{
		if (key == "name")
			continue;
		int *field = bit_field(*result.config, key);
		if (field == nullptr)
			throw std::invalid_argument("unknown qconfig key '" + key + "'");
		if (!value.is_number_integer())
			throw std::invalid_argument("qconfig '" + key + "' must be an integer");
		*field = value.get<int>();
	}
	return result;
}

template<typename T>
T get_unsigned(const nlohmann::json &value, const std::string &key)
{
	if (!value.is_number_unsigned())
		throw std::invalid_argument("'" + key + "' must be a non-negative integer");
	return value.get<T>();
}

std::pair<std::size_t, std::size_t> get_pair(const nlohmann::json &value, const std::string &key)
{
	if (!value.is_array() || value.size() != 2)
		throw std::invalid_argument("'" + key + "' must be a two-element array");
	return { get_unsigned<std::size_t>(value[0], key), get_unsigned<std::size_t>(value[1], key) };
}

double l2_norm(const std::vector<double> &v)
{
	double sum = 0.0;
	for (double x : v)
		sum += x * x;
	return std::sqrt(sum);
}

} // namespace

ExperimentConfig experiment_config_from_json(const nlohmann::json &j)
{
	if (!j.is_object())
		throw std::invalid_argument("experiment config must be a JSON object");
	ExperimentConfig config;
	for (const auto &[key, value] : j.items())
	{
		if (key == "o")
			config.o = get_unsigned<std::size_t>(value, key);
		else if (key == "k")
			config.k = get_unsigned<std::size_t>(value, key);
		else if (key == "points")
		{
			if (!value.is_string())
				throw std::invalid_argument("'points' must be a string");
			config.points = value.get<std::string>();
		}
		else if (key == "modes")
		{
			if (!value.is_array())
				throw std::invalid_argument("'modes' must be an array");
			config.modes.clear();
			for (const auto &m : value)
			{
				if (!m.is_string())
					throw std::invalid_argument("'modes' entries must be strings");
				config.modes.push_back(parse_pipeline_kind(m.get<std::string>()));
			}
		}
		else if (key == "qconfigs")
		{
			if (!value.is_array())
				throw std::invalid_argument("'qconfigs' must be an array");
			config.qconfigs.clear();
			for (const auto &q : value)
				config.qconfigs.push_back(qconfig_from_json(q));
		}
		else if (key == "trials")
			config.trials = get_unsigned<std::size_t>(value, key);
		else if (key == "seed")
			config.seed = get_unsigned<std::uint64_t>(value, key);
		else if (key == "input_distribution")
		{
			if (!value.is_string())
				throw std::invalid_argument("'input_distribution' must be a string");
			config.input_distribution = parse_distribution(value.get<std::string>());
		}
		else if (key == "channels")
			std::tie(config.in_channels, config.out_channels) = get_pair(value, key);
		else if (key == "spatial")
			std::tie(config.height, config.width) = get_pair(value, key);
		else if (key == "threads")
			config.threads = get_unsigned<std::size_t>(value, key);
		else
			throw std::invalid_argument("unknown config key '" + key + "'");
	}
	config.validate();
	return config;
}

nlohmann::json experiment_config_to_json(const ExperimentConfig &config)
{
	nlohmann::json modes = nlohmann::json::array();
	for (PipelineKind m : config.modes)
		modes.push_back(std::string(to_string(m)));
	nlohmann::json qconfigs = nlohmann::json::array();
	for (const auto &q : config.qconfigs)
	{
		nlohmann::json entry { { "name", q.name } };
		if (q.config)
		{
			QuantConfig c = *q.config;
			for (const char *field : bit_fields)
				entry[field] = *bit_field(c, field);
		}
		qconfigs.push_back(entry);
	}
	// threads is deliberately absent: it must not influence the report.
	return nlohmann::json { { "o", config.o }, { "k", config.k }, { "points", config.points }, { "modes", modes }, { "qconfigs", qconfigs }, {
			"trials", config.trials }, { "seed", config.seed }, { "input_distribution", std::string(to_string(config.input_distribution)) }, {
			"channels", { config.in_channels, config.out_channels } }, { "spatial", { config.height, config.width } } };
}

ErrorMetrics compare(const Tensor &actual, const Tensor &reference)
{
	if (actual.shape() != reference.shape())
		throw DimensionError("compare: shape mismatch");
	ErrorMetrics m;
	std::vector<double> diff(actual.size());
	for (std::size_t i = 0; i < diff.size(); i++)
	{
		diff[i] = actual.data()[i] - reference.data()[i];
		m.max_abs_err = std::max(m.max_abs_err, std::abs(diff[i]));
	}
	const double ref_norm = l2_norm(reference.data());
	const double diff_norm = l2_norm(diff);
	m.rel_l2_err = ref_norm > 0.0 ? diff_norm / ref_norm : diff_norm;
	return m;
}

FloatPlan experiment_plan(const ExperimentConfig &config)
{
	const std::size_t m = config.o + config.k - 1;
	return plan_to_float(build_plan(config.o, config.k, parse_points(config.points, m), true));
}

TrialResult run_trial(const ExperimentConfig &config, const FloatPlan &plan, std::size_t trial)
{
	TrialRng rng(config.seed, trial);
	Tensor input( { config.in_channels, config.height, config.width });
	Tensor weights( { config.out_channels, config.in_channels, config.k, config.k });
	rng.fill(input, config.input_distribution);
	rng.fill(weights, config.input_distribution);
	const Tensor reference = conv2d_direct(input, weights);

	TrialResult result;
	result.cells.reserve(config.modes.size() * config.qconfigs.size());
	for (PipelineKind mode : config.modes)
		for (const auto &q : config.qconfigs)
		{
			CellResult cell;
			if (mode == PipelineKind::direct)
			{
				cell.metrics = q.config ? compare(conv2d_direct_quantized(input, weights, *q.config), reference) : compare(reference, reference);
			}
			else
			{
				const BaseMode base = mode == PipelineKind::canonical ? BaseMode::canonical : BaseMode::legendre;
				if (q.config)
				{
					auto quantized = conv2d_winograd_quantized(input, weights, plan, base, *q.config);
					cell.metrics = compare(quantized.output, reference);
					cell.stages = std::move(quantized.stages);
				}
				else
					cell.metrics = compare(conv2d_winograd(input, weights, plan, base), reference);
			}
			result.cells.push_back(std::move(cell));
		}
	return result;
}

std::vector<TrialResult> run_trials(const ExperimentConfig &config, const FloatPlan &plan)
{
	config.validate();
	std::vector<TrialResult> results(config.trials);
	std::size_t workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
	workers = std::min(workers, config.trials);
	if (workers <= 1)
	{
		for (std::size_t t = 0; t < config.trials; t++)
			results[t] = run_trial(config, plan, t);
		return results;
	}

	std::atomic<std::size_t> next { 0 };
	std::exception_ptr failure;
	std::atomic<bool> failed { false };
	std::vector<std::thread> pool;
	pool.reserve(workers);
	for (std::size_t w = 0; w < workers; w++)
		pool.emplace_back([&] {
			try
			{
				for (std::size_t t = next++; t < config.trials && !failed; t = next++)
					results[t] = run_trial(config, plan, t);
			} catch (...)
			{
				if (!failed.exchange(true))
					failure = std::current_exception();
			}
		});
	for (auto &th : pool)
		th.join();
	if (failure)
		std::rethrow_exception(failure);
	return results;
}

} // namespace wino::harness
