#ifndef HAUPT_RATE_PATTERN_HPP
#define HAUPT_RATE_PATTERN_HPP

#include <string>
#include <vector>

namespace haupt {

// "a1,...,am -> b1,...,bk": the listed head, then increments cycling through b.
struct RatePattern
{
    std::vector<long> head;
    std::vector<long> cycle; // empty: defined only on the head

    // 1-based; OutOfRange past the head of a pattern without a cycle.
    long term(long i) const;
    std::vector<long> terms(long count) const;
    std::string str() const;
};

// Accepts "->" or the arrow character; whitespace is ignored.
RatePattern parse_rate_pattern(const std::string &text);

} // namespace haupt

#endif
