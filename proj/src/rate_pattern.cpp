#include "haupt/rate_pattern.hpp"

#include <cctype>

#include "haupt/error.hpp"

namespace haupt {

namespace {

std::vector<long> parse_list(const std::string &s, const std::string &whole)
{
    std::vector<long> out;
    std::size_t i = 0;
    while (true) {
        std::size_t j = i;
        if (j < s.size() && s[j] == '-')
            ++j;
        const std::size_t digits = j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
            ++j;
        if (j == digits)
            fail(Errc::Malformed, "expected an integer in rate pattern '" + whole + "'");
        try {
            out.push_back(std::stol(s.substr(i, j - i)));
        } catch (const std::exception &) {
            fail(Errc::Malformed, "integer out of range in rate pattern '" + whole + "'");
        }
        if (j == s.size())
            return out;
        if (s[j] != ',')
            fail(Errc::Malformed, "unexpected '" + std::string(1, s[j]) + "' in rate pattern '" + whole + "'");
        i = j + 1;
    }
}

} // namespace

RatePattern parse_rate_pattern(const std::string &text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    const std::string unicode_arrow = "\xE2\x86\x92";
    for (std::size_t at; (at = s.find(unicode_arrow)) != std::string::npos;)
        s.replace(at, unicode_arrow.size(), "->");
    RatePattern r;
    const auto arrow = s.find("->");
    if (arrow == std::string::npos) {
        r.head = parse_list(s, text);
        return r;
    }
    if (s.find("->", arrow + 2) != std::string::npos)
        fail(Errc::Malformed, "more than one arrow in rate pattern '" + text + "'");
    r.head = parse_list(s.substr(0, arrow), text);
    r.cycle = parse_list(s.substr(arrow + 2), text);
    return r;
}

long RatePattern::term(long i) const
{
    const long m = static_cast<long>(head.size());
    if (i < 1)
        fail(Errc::OutOfRange, "rate pattern terms are numbered from 1");
    if (i <= m)
        return head[static_cast<std::size_t>(i - 1)];
    if (cycle.empty())
        fail(Errc::OutOfRange, "rate pattern '" + str() + "' has no term " + std::to_string(i));
    const long k = static_cast<long>(cycle.size());
    long sum = 0;
    for (long b : cycle)
        sum += b;
    const long steps = i - m;
    long v = head.back() + (steps / k) * sum;
    for (long j = 0; j < steps % k; ++j)
        v += cycle[static_cast<std::size_t>(j)];
    return v;
}

std::vector<long> RatePattern::terms(long count) const
{
    std::vector<long> out;
    for (long i = 1; i <= count; ++i)
        out.push_back(term(i));
    return out;
}

std::string RatePattern::str() const
{
    auto join = [](const std::vector<long> &v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    return cycle.empty() ? join(head) : join(head) + "->" + join(cycle);
}

} // namespace haupt
