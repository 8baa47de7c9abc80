#include <wino/pipeline.hpp>

namespace wino {

std::string_view to_string(BaseMode mode) noexcept
{
	switch (mode)
	{
		case BaseMode::canonical:
			return "canonical";
		case BaseMode::legendre:
			return "legendre";
	}
	return "unknown";
}

BaseMode parse_base_mode(std::string_view text)
{
	if (text == "canonical")
		return BaseMode::canonical;
	if (text == "legendre")
		return BaseMode::legendre;
	throw std::invalid_argument("unknown base mode '" + std::string(text) + "' (expected canonical or legendre)");
}

Tensor conv2d_winograd(const Tensor &input, const Tensor &weights, const FloatPlan &plan, BaseMode mode)
{
	return conv2d_winograd_generic(input, weights, plan, mode);
}

} // namespace wino
