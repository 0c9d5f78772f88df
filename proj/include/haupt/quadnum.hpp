#ifndef HAUPT_QUADNUM_HPP
#define HAUPT_QUADNUM_HPP

#include <string>

#include <gmpxx.h>

namespace haupt {

// a + b sqrt(d), d squarefree. Values with different d only mix when one has b = 0.
class QuadNum
{
public:
    QuadNum() = default;
    QuadNum(mpq_class a, mpq_class b = 0, long d = 1);

    const mpq_class &a() const { return a_; }
    const mpq_class &b() const { return b_; }
    long d() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    // Complex conjugation: flips b for d < 0, identity for d > 0.
    QuadNum conj() const;
    // The nontrivial automorphism sqrt(d) -> -sqrt(d).
    QuadNum galois() const;

    QuadNum operator+(const QuadNum &o) const;
    QuadNum operator-(const QuadNum &o) const;
    QuadNum operator*(const QuadNum &o) const;
    QuadNum operator-() const;

    friend bool operator==(const QuadNum &x, const QuadNum &y);
    std::string str() const;

private:
    static long common_d(const QuadNum &x, const QuadNum &y);

    mpq_class a_ = 0;
    mpq_class b_ = 0;
    long d_ = 1;
};

bool is_squarefree(long d);

} // namespace haupt

#endif
