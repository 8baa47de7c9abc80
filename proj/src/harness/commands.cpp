#include <wino/harness/commands.hpp>
#include <wino/harness/experiment.hpp>
#include <wino/harness/points_spec.hpp>
#include <wino/harness/report.hpp>
#include <wino/harness/tensor_io.hpp>
#include <wino/reference_conv.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

namespace wino::harness {

using wino::to_string;

namespace {

struct GlobalOptions
{
	std::optional<std::uint64_t> seed;
	bool json = false;
	std::string output;
};

struct PlanOptions
{
	std::size_t o = 4;
	std::size_t k = 3;
	std::string points = "default";
};

void add_plan_options(CLI::App *cmd, PlanOptions &plan, bool with_kernel)
{
	cmd->add_option("--tile", plan.o, "output tile edge o")->capture_default_str()->check(CLI::PositiveNumber);
	if (with_kernel)
		cmd->add_option("--kernel", plan.k, "kernel edge k")->capture_default_str()->check(CLI::PositiveNumber);
	cmd->add_option("--points", plan.points, "interpolation points, e.g. \"0,1,-1,2,-2,inf\"")->capture_default_str();
}

WinogradPlan make_plan(const PlanOptions &opts, bool legendre)
{
	const std::size_t m = opts.o + opts.k - 1;
	return build_plan(opts.o, opts.k, parse_points(opts.points, m), legendre);
}

void write_file(const std::string &path, const std::string &content)
{
	std::ofstream file(path);
	if (!file)
		throw std::runtime_error("cannot write " + path);
	file << content;
	if (!file)
		throw std::runtime_error("error writing " + path);
}

// ---- gen-matrices ----

std::vector<std::pair<std::string, Matrix<Rational>>> printable_matrices(const WinogradPlan &plan)
{
	std::vector<std::pair<std::string, Matrix<Rational>>> result { { "G", plan.G }, { "B^T", plan.B.transposed() }, { "A^T", plan.A.transposed() } };
	if (plan.base_change)
	{
		const auto &bc = *plan.base_change;
		result.emplace_back("P^T", bc.P.transposed());
		result.emplace_back("P^-T", bc.P_inv.transposed());
		result.emplace_back("G_P", bc.G_P);
		result.emplace_back("B_P^T", bc.B_P.transposed());
		result.emplace_back("A_P^T", bc.A_P.transposed());
	}
	return result;
}

std::string entry_text(const Rational &r, bool exact)
{
	return exact ? to_string(r) : format_double(to_double(r));
}

void print_matrix(std::ostream &out, const std::string &name, const Matrix<Rational> &m, bool exact)
{
	out << name << " (" << m.rows() << "x" << m.cols() << ")\n";
	std::vector<std::size_t> widths(m.cols(), 0);
	for (std::size_t i = 0; i < m.rows(); i++)
		for (std::size_t j = 0; j < m.cols(); j++)
			widths[j] = std::max(widths[j], entry_text(m(i, j), exact).size());
	for (std::size_t i = 0; i < m.rows(); i++)
	{
		out << " ";
		for (std::size_t j = 0; j < m.cols(); j++)
		{
			const std::string text = entry_text(m(i, j), exact);
			out << ' ' << std::string(widths[j] - text.size(), ' ') << text;
		}
		out << '\n';
	}
}

int cmd_gen_matrices(const PlanOptions &opts, BaseMode base, const std::string &format, const GlobalOptions &global, std::ostream &out)
{
	const bool exact = format == "exact";
	const WinogradPlan plan = make_plan(opts, base == BaseMode::legendre);
	const auto matrices = printable_matrices(plan);
	if (global.json)
	{
		nlohmann::json list = nlohmann::json::array();
		for (const auto &[name, m] : matrices)
		{
			nlohmann::json rows = nlohmann::json::array();
			for (std::size_t i = 0; i < m.rows(); i++)
			{
				nlohmann::json row = nlohmann::json::array();
				for (std::size_t j = 0; j < m.cols(); j++)
				{
					if (exact)
						row.push_back(to_string(m(i, j)));
					else
						row.push_back(to_double(m(i, j)));
				}
				rows.push_back(row);
			}
			list.push_back( { { "name", name }, { "rows", rows } });
		}
		const nlohmann::json doc { { "o", plan.output_size }, { "k", plan.kernel_size }, { "m", plan.tile_size }, { "points", format_points(plan.points) }, {
				"base", std::string(to_string(base)) }, { "format", format }, { "matrices", list } };
		out << doc.dump(2) << '\n';
		return exit_ok;
	}
	out << "# F(" << plan.output_size << "," << plan.kernel_size << ") points: " << format_points(plan.points) << "\n";
	for (const auto &[name, m] : matrices)
		print_matrix(out, name, m, exact);
	return exit_ok;
}

// ---- conv ----

struct ConvOptions
{
	std::string input;
	std::string weights;
	std::string mode = "canonical";
	std::string quant = "float";
};

int cmd_conv(const ConvOptions &opts, PlanOptions plan_opts, const GlobalOptions &global, std::ostream &out, std::ostream &err)
{
	const PipelineKind mode = parse_pipeline_kind(opts.mode);
	const NamedQuantConfig quant = preset_quant_config(opts.quant);
	const Tensor input = read_tensor_file(opts.input);
	const Tensor weights = read_tensor_file(opts.weights);
	const ConvGeometry g = conv_geometry(input, weights);
	plan_opts.k = g.kernel;

	const Tensor reference = conv2d_direct(input, weights);
	Tensor output;
	if (mode == PipelineKind::direct)
		output = quant.config ? conv2d_direct_quantized(input, weights, *quant.config) : reference;
	else
	{
		const FloatPlan plan = plan_to_float(make_plan(plan_opts, mode == PipelineKind::legendre));
		const BaseMode base = mode == PipelineKind::canonical ? BaseMode::canonical : BaseMode::legendre;
		output = quant.config ? conv2d_winograd_quantized(input, weights, plan, base, *quant.config).output : conv2d_winograd(input, weights, plan, base);
	}
	const ErrorMetrics metrics = compare(output, reference);

	std::ostream &summary = global.output.empty() ? err : out;
	if (global.output.empty())
		out << tensor_to_json(output).dump() << '\n';
	else
		write_tensor_file(global.output, output);
	if (global.json)
		summary << nlohmann::json { { "mode", opts.mode }, { "qconfig", opts.quant }, { "rel_l2_err", metrics.rel_l2_err }, { "max_abs_err", metrics.max_abs_err } }.dump()
				<< '\n';
	else
		summary << "mode=" << opts.mode << " qconfig=" << opts.quant << " rel_l2_err=" << format_double(metrics.rel_l2_err) << " max_abs_err="
				<< format_double(metrics.max_abs_err) << '\n';
	return exit_ok;
}

// ---- bench-error ----

struct BenchOptions
{
	std::string config_file;
	std::optional<std::size_t> trials;
	std::optional<std::size_t> threads;
};

int cmd_bench_error(const BenchOptions &opts, const GlobalOptions &global, std::ostream &out)
{
	ExperimentConfig config;
	if (!opts.config_file.empty())
	{
		std::ifstream file(opts.config_file);
		if (!file)
			throw std::invalid_argument("cannot open config " + opts.config_file);
		nlohmann::json j;
		try
		{
			file >> j;
		} catch (const nlohmann::json::parse_error &e)
		{
			throw std::invalid_argument(opts.config_file + ": " + e.what());
		}
		config = experiment_config_from_json(j);
	}
	if (opts.trials)
		config.trials = *opts.trials;
	if (opts.threads)
		config.threads = *opts.threads;
	if (global.seed)
		config.seed = *global.seed;
	config.validate();

	const FloatPlan plan = experiment_plan(config);
	const ErrorReport report = build_report(config, plan, run_trials(config, plan));
	const std::string csv = report.to_csv();
	const std::string json = report.to_json().dump(2) + "\n";
	if (global.output.empty())
	{
		out << (global.json ? json : csv);
		return exit_ok;
	}
	std::string base = global.output;
	if (base.size() > 4 && base.compare(base.size() - 4, 4, ".csv") == 0)
		base.resize(base.size() - 4);
	write_file(base + ".csv", csv);
	write_file(base + ".json", json);
	out << "wrote " << base << ".csv and " << base << ".json\n";
	return exit_ok;
}

// ---- cond ----

int cmd_cond(const PlanOptions &opts, const GlobalOptions &global, std::ostream &out)
{
	const FloatPlan plan = plan_to_float(make_plan(opts, true));
	const auto rows = condition_table(plan);
	if (global.json)
	{
		nlohmann::json list = nlohmann::json::array();
		for (const auto &r : rows)
			list.push_back( { { "matrix", r.matrix }, { "cond_two", r.cond_two }, { "cond_frobenius", r.cond_frobenius } });
		out << nlohmann::json { { "o", plan.output_size }, { "k", plan.kernel_size }, { "points", format_points(plan.exact.points) }, { "conditioning", list } }.dump(
				2) << '\n';
		return exit_ok;
	}
	out << "# F(" << plan.output_size << "," << plan.kernel_size << ") points: " << format_points(plan.exact.points) << "\n";
	out << "matrix,cond_two,cond_frobenius\n";
	for (const auto &r : rows)
		out << r.matrix << ',' << format_double(r.cond_two) << ',' << format_double(r.cond_frobenius) << '\n';
	return exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
	CLI::App app { "Winograd convolution transforms in canonical and Legendre bases" , "wino_cli" };
	app.require_subcommand(1);
	app.fallthrough();

	GlobalOptions global;
	app.add_option("--seed", global.seed, "random seed (bench-error)");
	app.add_flag("--json", global.json, "emit JSON instead of text/CSV");
	app.add_option("--output", global.output, "output path");

	PlanOptions gen_plan;
	std::string gen_base = "canonical";
	std::string gen_format = "exact";
	auto *gen = app.add_subcommand("gen-matrices", "print the transform matrices of F(o, k)");
	add_plan_options(gen, gen_plan, true);
	gen->add_option("--base", gen_base, "canonical or legendre")->capture_default_str()->check(CLI::IsMember( { "canonical", "legendre" }));
	gen->add_option("--format", gen_format, "exact fractions or float decimals")->capture_default_str()->check(CLI::IsMember( { "exact", "float" }));

	PlanOptions conv_plan;
	ConvOptions conv_opts;
	auto *conv = app.add_subcommand("conv", "convolve stored tensors and report the error against direct convolution");
	conv->add_option("--input", conv_opts.input, "input tensor JSON [c_in, H, W]")->required();
	conv->add_option("--weights", conv_opts.weights, "weight tensor JSON [c_out, c_in, k, k]")->required();
	conv->add_option("--mode", conv_opts.mode, "canonical, legendre or direct")->capture_default_str();
	conv->add_option("--quant", conv_opts.quant, "float, <b>b or <b>b+<h>b")->capture_default_str();
	add_plan_options(conv, conv_plan, false);

	BenchOptions bench_opts;
	auto *bench = app.add_subcommand("bench-error", "Monte-Carlo error experiment");
	bench->add_option("--config", bench_opts.config_file, "experiment config JSON");
	bench->add_option("--trials", bench_opts.trials, "override the number of trials");
	bench->add_option("--threads", bench_opts.threads, "worker threads, 0 = all cores");

	PlanOptions cond_plan;
	auto *cond = app.add_subcommand("cond", "condition numbers of canonical and Legendre-base transforms");
	add_plan_options(cond, cond_plan, true);

	std::vector<std::string> argv_storage { "wino_cli" };
	argv_storage.insert(argv_storage.end(), args.begin(), args.end());
	std::vector<char*> argv;
	for (auto &a : argv_storage)
		argv.push_back(a.data());

	try
	{
		app.parse(static_cast<int>(argv.size()), argv.data());
	} catch (const CLI::CallForHelp&)
	{
		out << app.help();
		return exit_ok;
	} catch (const CLI::ParseError &e)
	{
		err << "error: " << e.what() << '\n';
		return exit_usage_error;
	}

	try
	{
		if (gen->parsed())
			return cmd_gen_matrices(gen_plan, parse_base_mode(gen_base), gen_format, global, out);
		if (conv->parsed())
			return cmd_conv(conv_opts, conv_plan, global, out, err);
		if (bench->parsed())
			return cmd_bench_error(bench_opts, global, out);
		return cmd_cond(cond_plan, global, out);
	} catch (const std::invalid_argument &e)
	{
		err << "error: " << e.what() << '\n';
		return exit_usage_error;
	} catch (const nlohmann::json::exception &e)
	{
		err << "error: " << e.what() << '\n';
		return exit_usage_error;
	} catch (const std::exception &e)
	{
		err << "error: " << e.what() << '\n';
		return exit_runtime_error;
	}
}

} // namespace wino::harness
