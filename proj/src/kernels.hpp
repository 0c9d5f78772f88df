#ifndef HAUPT_SRC_KERNELS_HPP
#define HAUPT_SRC_KERNELS_HPP

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace haupt::detail {

// Truncated integer convolutions: c[k] = sum_{i+j=k} a[i] b[j] for k < len.
std::vector<mpz_class> conv_schoolbook(const std::vector<mpz_class> &a, const std::vector<mpz_class> &b,
                                       std::size_t len);
std::vector<mpz_class> conv_kronecker(const std::vector<mpz_class> &a, const std::vector<mpz_class> &b,
                                      std::size_t len);
std::vector<mpz_class> conv(const std::vector<mpz_class> &a, const std::vector<mpz_class> &b, std::size_t len);

// Sparse factor with unit leading term: 1 + sum_i coeff[i] q^exp[i], exp strictly increasing, all > 0.
struct SparseFactor
{
    std::vector<std::size_t> exp;
    std::vector<long> coeff;
};

// prod_{n>=1} (1 - q^{d n}) through q^{len-1}, via Euler's pentagonal theorem.
SparseFactor euler_factor(long d, std::size_t len);
// prod_{n>=1} (1 - q^{d n})^3 through q^{len-1}, via Jacobi's identity.
SparseFactor jacobi_factor(long d, std::size_t len);

// In place: g <- g * f and g <- g / f, truncated to g.size().
void mul_sparse(std::vector<mpz_class> &g, const SparseFactor &f);
void div_sparse(std::vector<mpz_class> &g, const SparseFactor &f);

} // namespace haupt::detail

#endif
