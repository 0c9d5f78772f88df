#include <algorithm>
#include <cstdlib>

#include "kernels.hpp"

namespace haupt::detail {

std::vector<mpz_class> conv_schoolbook(const std::vector<mpz_class> &a, const std::vector<mpz_class> &b,
                                       std::size_t len)
{
    std::vector<mpz_class> c(len);
    const std::size_t na = std::min(a.size(), len);
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == 0)
            continue;
        const std::size_t nb = std::min(b.size(), len - i);
        for (std::size_t j = 0; j < nb; ++j)
            if (b[j] != 0)
                mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return c;
}

namespace {

std::size_t max_bits(const std::vector<mpz_class> &v, std::size_t n)
{
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (v[i] != 0)
            m = std::max(m, mpz_sizeinbase(v[i].get_mpz_t(), 2));
    return m;
}

// sum v[i] 2^{slot_limbs * GMP_NUMB_BITS * i} for i < n, signs included.
mpz_class pack(const std::vector<mpz_class> &v, std::size_t n, std::size_t slot_limbs)
{
    mpz_class pos, neg;
    const std::size_t total = n * slot_limbs;
    mp_limb_t *pp = mpz_limbs_write(pos.get_mpz_t(), static_cast<mp_size_t>(total));
    mp_limb_t *np = mpz_limbs_write(neg.get_mpz_t(), static_cast<mp_size_t>(total));
    std::fill(pp, pp + total, mp_limb_t(0));
    std::fill(np, np + total, mp_limb_t(0));
    bool any_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
        const int s = sgn(v[i]);
        if (s == 0)
            continue;
        const std::size_t sz = mpz_size(v[i].get_mpz_t());
        const mp_limb_t *src = mpz_limbs_read(v[i].get_mpz_t());
        mp_limb_t *dst = (s > 0 ? pp : np) + i * slot_limbs;
        std::copy(src, src + sz, dst);
        any_neg = any_neg || s < 0;
    }
    mpz_limbs_finish(pos.get_mpz_t(), static_cast<mp_size_t>(total));
    mpz_limbs_finish(neg.get_mpz_t(), static_cast<mp_size_t>(total));
    if (any_neg)
        pos -= neg;
    return pos;
}

} // namespace

std::vector<mpz_class> conv_kronecker(const std::vector<mpz_class> &a, const std::vector<mpz_class> &b,
                                      std::size_t len)
{
    std::vector<mpz_class> c(len);
    const std::size_t na = std::min(a.size(), len), nb = std::min(b.size(), len);
    if (na == 0 || nb == 0)
        return c;
    const std::size_t ba = max_bits(a, na), bb = max_bits(b, nb);
    if (ba == 0 || bb == 0)
        return c;
    std::size_t terms = std::min(na, nb), lg = 0;
    while ((std::size_t(1) << lg) < terms)
        ++lg;
    // Balanced digits need |c_k| < 2^(bits-1).
    const std::size_t need = ba + bb + lg + 1;
    const std::size_t slot_limbs = (need + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
    const mpz_class pa = pack(a, na, slot_limbs);
    mpz_class r;
    if (&a == &b && na == nb)
        mpz_mul(r.get_mpz_t(), pa.get_mpz_t(), pa.get_mpz_t());
    else
        r = pa * pack(b, nb, slot_limbs);
    const int sign = sgn(r);
    if (sign == 0)
        return c;
    mpz_abs(r.get_mpz_t(), r.get_mpz_t());
    const std::size_t rsize = mpz_size(r.get_mpz_t());
    const mp_limb_t *rp = mpz_limbs_read(r.get_mpz_t());
    const std::size_t bits = slot_limbs * GMP_NUMB_BITS;
    mpz_class full, half;
    mpz_setbit(full.get_mpz_t(), bits);
    mpz_setbit(half.get_mpz_t(), bits - 1);
    mpz_class u;
    bool carry = false;
    for (std::size_t k = 0; k < len; ++k) {
        const std::size_t off = k * slot_limbs;
        if (off >= rsize && !carry)
            break;
        mp_limb_t *up = mpz_limbs_write(u.get_mpz_t(), static_cast<mp_size_t>(slot_limbs));
        for (std::size_t l = 0; l < slot_limbs; ++l)
            up[l] = (off + l < rsize) ? rp[off + l] : mp_limb_t(0);
        mpz_limbs_finish(u.get_mpz_t(), static_cast<mp_size_t>(slot_limbs));
        if (carry)
            ++u;
        if (u >= half) {
            u -= full;
            carry = true;
        } else {
            carry = false;
        }
        if (sign < 0)
            mpz_neg(c[k].get_mpz_t(), u.get_mpz_t());
        else
            c[k] = u;
    }
    return c;
}

std::vector<mpz_class> conv(const std::vector<mpz_class> &a, const std::vector<mpz_class> &b, std::size_t len)
{
    const std::size_t na = std::min(a.size(), len), nb = std::min(b.size(), len);
    if (std::min(na, nb) < 24)
        return conv_schoolbook(a, b, len);
    return conv_kronecker(a, b, len);
}

SparseFactor euler_factor(long d, std::size_t len)
{
    // sum_{k in Z} (-1)^k q^{d k(3k-1)/2}
    SparseFactor f;
    for (long k = 1;; ++k) {
        const long e1 = d * k * (3 * k - 1) / 2, e2 = d * k * (3 * k + 1) / 2;
        if (static_cast<std::size_t>(e1) >= len)
            break;
        const long s = (k % 2 == 0) ? 1 : -1;
        f.exp.push_back(static_cast<std::size_t>(e1));
        f.coeff.push_back(s);
        if (static_cast<std::size_t>(e2) < len) {
            f.exp.push_back(static_cast<std::size_t>(e2));
            f.coeff.push_back(s);
        }
    }
    return f;
}

SparseFactor jacobi_factor(long d, std::size_t len)
{
    // sum_{k >= 0} (-1)^k (2k+1) q^{d k(k+1)/2}
    SparseFactor f;
    for (long k = 1;; ++k) {
        const long e = d * k * (k + 1) / 2;
        if (static_cast<std::size_t>(e) >= len)
            break;
        f.exp.push_back(static_cast<std::size_t>(e));
        f.coeff.push_back((k % 2 == 0) ? (2 * k + 1) : -(2 * k + 1));
    }
    return f;
}

namespace {

inline void axpy(mpz_class &dst, const mpz_class &src, long c)
{
    if (c == 1)
        dst += src;
    else if (c == -1)
        dst -= src;
    else if (c > 0)
        mpz_addmul_ui(dst.get_mpz_t(), src.get_mpz_t(), static_cast<unsigned long>(c));
    else
        mpz_submul_ui(dst.get_mpz_t(), src.get_mpz_t(), static_cast<unsigned long>(-c));
}

} // namespace

void mul_sparse(std::vector<mpz_class> &g, const SparseFactor &f)
{
    for (std::size_t n = g.size(); n-- > 0;) {
        for (std::size_t i = 0; i < f.exp.size() && f.exp[i] <= n; ++i) {
            const mpz_class &src = g[n - f.exp[i]];
            if (src != 0)
                axpy(g[n], src, f.coeff[i]);
        }
    }
}

void div_sparse(std::vector<mpz_class> &g, const SparseFactor &f)
{
    for (std::size_t n = 0; n < g.size(); ++n) {
        for (std::size_t i = 0; i < f.exp.size() && f.exp[i] <= n; ++i) {
            const mpz_class &src = g[n - f.exp[i]];
            if (src != 0)
                axpy(g[n], src, -f.coeff[i]);
        }
    }
}

} // namespace haupt::detail
