#include <wino/harness/points_spec.hpp>

#include <stdexcept>

namespace wino::harness {

namespace {

std::string_view trim(std::string_view s)
{
	while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
		s.remove_prefix(1);
	while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
		s.remove_suffix(1);
	return s;
}

} // namespace

InterpolationPoints parse_points(std::string_view text, std::size_t count)
{
	text = trim(text);
	if (text.empty() || text == "default")
		return InterpolationPoints::defaults(count);

	InterpolationPoints points;
	points.use_infinity = false;
	std::size_t start = 0;
	while (start <= text.size())
	{
		const std::size_t comma = text.find(',', start);
		const std::string_view item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
		if (item == "inf" || item == "infinity" || item == "oo")
		{
			if (points.use_infinity)
				throw InvalidPointsError("duplicate interpolation point inf");
			points.use_infinity = true;
		}
		else
			points.finite_points.push_back(parse_rational(item));
		if (comma == std::string_view::npos)
			break;
		start = comma + 1;
	}
	return points;
}

std::string format_points(const InterpolationPoints &points)
{
	std::string result;
	for (const Rational &p : points.finite_points)
	{
		if (!result.empty())
			result += ",";
		result += to_string(p);
	}
	if (points.use_infinity)
		result += result.empty() ? "inf" : ",inf";
	return result;
}

} // namespace wino::harness
