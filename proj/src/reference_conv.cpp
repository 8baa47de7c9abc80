#include <wino/reference_conv.hpp>

namespace wino {

Tensor conv2d_direct(const Tensor &input, const Tensor &weights)
{
	return conv2d_direct_generic(input, weights);
}

BasicTensor<Rational> conv2d_direct_rational(const BasicTensor<Rational> &input, const BasicTensor<Rational> &weights)
{
	return conv2d_direct_generic(input, weights);
}

} // namespace wino
