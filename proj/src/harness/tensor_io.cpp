#include <wino/harness/tensor_io.hpp>

#include <fstream>
#include <stdexcept>

namespace wino::harness {

nlohmann::json tensor_to_json(const Tensor &tensor)
{
	return nlohmann::json { { "shape", tensor.shape() }, { "data", tensor.data() } };
}

Tensor tensor_from_json(const nlohmann::json &j)
{
	if (!j.is_object() || !j.contains("shape") || !j.contains("data"))
		throw std::invalid_argument("tensor JSON must be an object with \"shape\" and \"data\"");
	const auto &shape_json = j.at("shape");
	const auto &data_json = j.at("data");
	if (!shape_json.is_array() || !data_json.is_array())
		throw std::invalid_argument("tensor \"shape\" and \"data\" must be arrays");
	std::vector<std::size_t> shape;
	for (const auto &e : shape_json)
	{
		if (!e.is_number_unsigned())
			throw std::invalid_argument("tensor shape entries must be non-negative integers");
		shape.push_back(e.get<std::size_t>());
	}
	std::vector<double> data;
	data.reserve(data_json.size());
	for (const auto &e : data_json)
	{
		if (!e.is_number())
			throw std::invalid_argument("tensor data entries must be numbers");
		data.push_back(e.get<double>());
	}
	if (data.size() != Tensor::element_count(shape))
		throw std::invalid_argument("tensor data has " + std::to_string(data.size()) + " values but shape needs " + std::to_string(Tensor::element_count(shape)));
	return Tensor(std::move(shape), std::move(data));
}

Tensor read_tensor_file(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open " + path);
	nlohmann::json j;
	try
	{
		in >> j;
	} catch (const nlohmann::json::parse_error &e)
	{
		throw std::invalid_argument(path + ": " + e.what());
	}
	return tensor_from_json(j);
}

void write_tensor_file(const std::string &path, const Tensor &tensor)
{
	std::ofstream out(path);
	if (!out)
		throw std::runtime_error("cannot write " + path);
	out << tensor_to_json(tensor).dump() << '\n';
}

} // namespace wino::harness
