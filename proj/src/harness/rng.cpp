#include <wino/harness/rng.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace wino::harness {

std::string_view to_string(Distribution d) noexcept
{
	return d == Distribution::standard_normal ? "standard-normal" : "uniform";
}

Distribution parse_distribution(std::string_view text)
{
	if (text == "standard-normal" || text == "normal")
		return Distribution::standard_normal;
	if (text == "uniform")
		return Distribution::uniform;
	throw std::invalid_argument("unknown input_distribution '" + std::string(text) + "' (expected standard-normal or uniform)");
}

std::uint64_t splitmix64(std::uint64_t &state) noexcept
{
	std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
	return z ^ (z >> 31);
}

namespace {

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t trial) noexcept
{
	std::uint64_t state = seed;
	const std::uint64_t a = splitmix64(state);
	state = a ^ trial;
	return splitmix64(state);
}

} // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) :
		m_engine(stream_key(seed, trial))
{
}

double TrialRng::uniform01() noexcept
{
	return static_cast<double>(m_engine() >> 11) * 0x1.0p-53;
}

double TrialRng::uniform_symmetric() noexcept
{
	double u = 0.0;
	do
	{
		u = 2.0 * uniform01() - 1.0;
	} while (u == -1.0);
	return u;
}

double TrialRng::standard_normal() noexcept
{
	if (m_has_spare)
	{
		m_has_spare = false;
		return m_spare;
	}
	double u, v, s;
	do
	{
		u = uniform_symmetric();
		v = uniform_symmetric();
		s = u * u + v * v;
	} while (s >= 1.0 || s == 0.0);
	const double factor = std::sqrt(-2.0 * std::log(s) / s);
	m_spare = v * factor;
	m_has_spare = true;
	return u * factor;
}

double TrialRng::sample(Distribution d) noexcept
{
	return d == Distribution::standard_normal ? standard_normal() : uniform_symmetric();
}

void TrialRng::fill(Tensor &tensor, Distribution d) noexcept
{
	for (double &v : tensor.data())
		v = sample(d);
}

} // namespace wino::harness
