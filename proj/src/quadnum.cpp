#include "haupt/quadnum.hpp"

#include <cstdlib>

#include "haupt/error.hpp"

namespace haupt {

bool is_squarefree(long d)
{
    if (d == 0)
        return false;
    long m = std::labs(d);
    for (long l = 2; l * l <= m; ++l)
        if (m % (l * l) == 0)
            return false;
    return true;
}

QuadNum::QuadNum(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d)
{
    a_.canonicalize();
    b_.canonicalize();
    if (!is_squarefree(d_))
        fail(Errc::Malformed, "quadratic field parameter " + std::to_string(d_) + " is not squarefree");
    if (d_ == 1) {
        a_ += b_;
        b_ = 0;
    }
}

long QuadNum::common_d(const QuadNum &x, const QuadNum &y)
{
    if (x.b_ == 0)
        return y.d_;
    if (y.b_ == 0 || x.d_ == y.d_)
        return x.d_;
    fail(Errc::Malformed, "mixing sqrt(" + std::to_string(x.d_) + ") and sqrt(" + std::to_string(y.d_) + ")");
}

QuadNum QuadNum::conj() const { return d_ < 0 ? QuadNum(a_, -b_, d_) : *this; }

QuadNum QuadNum::galois() const { return QuadNum(a_, -b_, d_); }

QuadNum QuadNum::operator+(const QuadNum &o) const { return QuadNum(a_ + o.a_, b_ + o.b_, common_d(*this, o)); }

QuadNum QuadNum::operator-(const QuadNum &o) const { return QuadNum(a_ - o.a_, b_ - o.b_, common_d(*this, o)); }

QuadNum QuadNum::operator*(const QuadNum &o) const
{
    const long d = common_d(*this, o);
    return QuadNum(a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_, d);
}

QuadNum QuadNum::operator-() const { return QuadNum(-a_, -b_, d_); }

bool operator==(const QuadNum &x, const QuadNum &y)
{
    if (x.a_ != y.a_ || x.b_ != y.b_)
        return false;
    return x.b_ == 0 || x.d_ == y.d_;
}

std::string QuadNum::str() const
{
    if (b_ == 0)
        return a_.get_str();
    return a_.get_str() + (b_ > 0 ? "+" : "") + b_.get_str() + "*sqrt(" + std::to_string(d_) + ")";
}

} // namespace haupt
