#ifndef HAUPT_TESTS_SUPPORT_HPP
#define HAUPT_TESTS_SUPPORT_HPP

#include <functional>
#include <optional>
#include <random>
#include <string>

#include "haupt/error.hpp"
#include "haupt/qseries.hpp"

namespace support {

inline haupt::LaurentSeries ints(long low, std::initializer_list<long> v, bool exact = false)
{
    std::vector<mpz_class> nums;
    for (long x : v)
        nums.emplace_back(x);
    return haupt::LaurentSeries::from_integers(low, std::move(nums), exact);
}

// Code of the haupt::Error thrown by f, or nothing.
inline std::optional<haupt::Errc> error_of(const std::function<void()> &f)
{
    try {
        f();
    } catch (const haupt::Error &e) {
        return e.code();
    }
    return std::nullopt;
}

// Sparse integer series on [low, high) with roughly `density` nonzero slots.
inline haupt::LaurentSeries random_sparse(std::mt19937_64 &rng, long low, long high, double density)
{
    std::uniform_real_distribution<double> coin(0, 1);
    std::uniform_int_distribution<long> val(-1000000, 1000000);
    std::vector<mpz_class> nums(static_cast<std::size_t>(high - low));
    for (auto &x : nums)
        if (coin(rng) < density)
            x = val(rng);
    return haupt::LaurentSeries::from_integers(low, std::move(nums));
}

} // namespace support

#endif
