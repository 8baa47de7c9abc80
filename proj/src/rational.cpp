#include <wino/rational.hpp>

#include <cmath>
#include <stdexcept>

namespace wino {

double to_double(const Rational &value)
{
	const BigInt num = boost::multiprecision::numerator(value);
	const BigInt den = boost::multiprecision::denominator(value);
	if (num == 0)
		return 0.0;
	const bool negative = num < 0;
	const BigInt a = negative ? BigInt(-num) : num;

	// Scale so the integer quotient carries 54-55 significant bits, then
	// round the low bits half-to-even with the division remainder as sticky.
	const long exponent = static_cast<long>(boost::multiprecision::msb(a)) - static_cast<long>(boost::multiprecision::msb(den));
	const long shift = 54 - exponent;
	BigInt scaled_num = a;
	BigInt scaled_den = den;
	if (shift >= 0)
		scaled_num <<= shift;
	else
		scaled_den <<= -shift;
	BigInt quotient, remainder;
	boost::multiprecision::divide_qr(scaled_num, scaled_den, quotient, remainder);

	const unsigned extra = static_cast<unsigned>(boost::multiprecision::msb(quotient)) - 52;
	BigInt mantissa = quotient >> extra;
	const BigInt dropped = quotient - (mantissa << extra);
	const BigInt half = BigInt(1) << (extra - 1);
	if (dropped > half || (dropped == half && (remainder != 0 || boost::multiprecision::bit_test(mantissa, 0))))
		mantissa += 1;

	const double result = std::ldexp(mantissa.convert_to<double>(), static_cast<int>(static_cast<long>(extra) - shift));
	return negative ? -result : result;
}

std::string to_string(const Rational &value)
{
	const BigInt den = boost::multiprecision::denominator(value);
	if (den == 1)
		return boost::multiprecision::numerator(value).str();
	return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole)
{
	std::string_view digits = text;
	if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
		digits.remove_prefix(1);
	if (digits.empty())
		throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
	for (char c : digits)
		if (c < '0' || c > '9')
			throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
	const BigInt result { std::string(digits) };
	return (text.front() == '-') ? BigInt(-result) : result;
}

} // namespace

Rational parse_rational(std::string_view text)
{
	const auto slash = text.find('/');
	if (slash == std::string_view::npos)
		return Rational(parse_integer(text, text));
	const BigInt num = parse_integer(text.substr(0, slash), text);
	const BigInt den = parse_integer(text.substr(slash + 1), text);
	if (den == 0)
		throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
	// Boost rejects a negative denominator in the two-argument constructor.
	return Rational(num) / Rational(den);
}

} // namespace wino
