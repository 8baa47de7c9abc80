#pragma once

#include <wino/tensor.hpp>

#include <cstdint>
#include <random>
#include <string_view>

namespace wino::harness {

enum class Distribution
{
	standard_normal,
	uniform // uniform on (-1, 1)
};

std::string_view to_string(Distribution d) noexcept;
Distribution parse_distribution(std::string_view text);

std::uint64_t splitmix64(std::uint64_t &state) noexcept;

/// Random stream for one trial. Trial t of a run seeded with s always gets the
/// same stream no matter which thread runs it: the mt19937_64 engine is keyed
/// by splitmix64 applied to (s, t). Variates are built from raw engine output
/// (53-bit uniforms, Marsaglia polar normals) rather than std:: distributions,
/// whose algorithms differ between standard libraries.
class TrialRng
{
	public:
		TrialRng(std::uint64_t seed, std::uint64_t trial);

		double uniform01() noexcept; // [0, 1)
		double uniform_symmetric() noexcept; // (-1, 1)
		double standard_normal() noexcept;
		double sample(Distribution d) noexcept;

		void fill(Tensor &tensor, Distribution d) noexcept;

	private:
		std::mt19937_64 m_engine;
		double m_spare = 0.0;
		bool m_has_spare = false;
};

} // namespace wino::harness
