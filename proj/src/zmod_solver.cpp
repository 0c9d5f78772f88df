#include "haupt/error.hpp"
#include "haupt/moonshine.hpp"

namespace haupt {

namespace {

// v_q(x) for x in [0, q^r), with r for zero.
long val(const mpz_class &x, long q, long r)
{
    if (x == 0)
        return r;
    return p_adic_valuation(x, q);
}

void reduce(mpz_class &x, const mpz_class &mod)
{
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
}

} // namespace

std::optional<std::vector<mpz_class>> solve_mod_prime_power(std::vector<std::vector<mpz_class>> A,
                                                            std::vector<mpz_class> b, long q, long r)
{
    const std::size_t rows = A.size();
    const std::size_t cols = rows ? A[0].size() : 0;
    if (b.size() != rows)
        fail(Errc::Malformed, "right-hand side has the wrong length");
    for (const auto &row : A)
        if (row.size() != cols)
            fail(Errc::Malformed, "ragged matrix");
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(r));
    if (r == 0)
        return std::vector<mpz_class>(cols, 0);
    for (auto &row : A)
        for (auto &x : row)
            reduce(x, mod);
    for (auto &x : b)
        reduce(x, mod);
    const auto A0 = A;
    const auto b0 = b;

    // Column transform: x = V y.
    std::vector<std::vector<mpz_class>> V(cols, std::vector<mpz_class>(cols, 0));
    for (std::size_t i = 0; i < cols; ++i)
        V[i][i] = 1;

    std::vector<long> pivot_val;
    mpz_class t, inv, unit, qv;
    std::size_t k = 0;
    for (; k < std::min(rows, cols); ++k) {
        // Entry of least valuation in the trailing block.
        long best = r;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = k; i < rows && best > 0; ++i)
            for (std::size_t j = k; j < cols; ++j) {
                const long v = val(A[i][j], q, r);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                    if (v == 0)
                        break;
                }
            }
        if (best == r)
            break;
        std::swap(A[k], A[bi]);
        std::swap(b[k], b[bi]);
        if (bj != k) {
            for (auto &row : A)
                std::swap(row[k], row[bj]);
            for (auto &row : V)
                std::swap(row[k], row[bj]);
        }
        mpz_ui_pow_ui(qv.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(best));
        mpz_divexact(unit.get_mpz_t(), A[k][k].get_mpz_t(), qv.get_mpz_t());
        if (mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t()) == 0)
            fail(Errc::InvariantViolation, "pivot unit is not invertible");
        // Rows below: subtract (A[i][k] / q^v) u^-1 times row k.
        for (std::size_t i = k + 1; i < rows; ++i) {
            if (A[i][k] == 0)
                continue;
            mpz_class f;
            mpz_divexact(f.get_mpz_t(), A[i][k].get_mpz_t(), qv.get_mpz_t());
            f *= inv;
            reduce(f, mod);
            for (std::size_t j = k; j < cols; ++j) {
                t = f * A[k][j];
                A[i][j] -= t;
                reduce(A[i][j], mod);
            }
            t = f * b[k];
            b[i] -= t;
            reduce(b[i], mod);
        }
        // Columns to the right: only row k is nonzero in column k now.
        for (std::size_t j = k + 1; j < cols; ++j) {
            if (A[k][j] == 0)
                continue;
            mpz_class f;
            mpz_divexact(f.get_mpz_t(), A[k][j].get_mpz_t(), qv.get_mpz_t());
            f *= inv;
            reduce(f, mod);
            A[k][j] = 0;
            for (std::size_t i = 0; i < cols; ++i) {
                t = f * V[i][k];
                V[i][j] -= t;
                reduce(V[i][j], mod);
            }
        }
        pivot_val.push_back(best);
    }

    // Diagonal system d_k y_k = b_k.
    std::vector<mpz_class> y(cols, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        if (i >= k) {
            if (b[i] != 0)
                return std::nullopt;
            continue;
        }
        const long v = pivot_val[i];
        if (val(b[i], q, r) < v)
            return std::nullopt;
        mpz_ui_pow_ui(qv.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(v));
        mpz_divexact(unit.get_mpz_t(), A[i][i].get_mpz_t(), qv.get_mpz_t());
        mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
        mpz_class bi;
        mpz_divexact(bi.get_mpz_t(), b[i].get_mpz_t(), qv.get_mpz_t());
        y[i] = bi * inv;
        reduce(y[i], mod);
    }
    std::vector<mpz_class> x(cols, 0);
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t j = 0; j < cols; ++j)
            x[i] += V[i][j] * y[j];
        reduce(x[i], mod);
    }
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class s = -b0[i];
        for (std::size_t j = 0; j < cols; ++j)
            s += A0[i][j] * x[j];
        reduce(s, mod);
        if (s != 0)
            fail(Errc::InvariantViolation, "solution check failed in row " + std::to_string(i));
    }
    return x;
}

} // namespace haupt
