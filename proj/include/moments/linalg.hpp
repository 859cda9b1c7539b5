// linalg.hpp -- exact elimination kernels over Eigen dense storage:
// fraction-free determinants, CRT determinants, finite-field rank, and
// rational reduced row echelon / nullspace.

#pragma once

#include <moments/exact.hpp>

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace moments {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntMatrix = DenseMatrix<std::int64_t>;
using RationalMatrix = DenseMatrix<Rational>;
using BinaryMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;
using ModMatrix = Eigen::Matrix<u64, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Mod32Matrix = Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class DetMethod { bareiss, modular_crt, float_lu };

inline const char* to_string(DetMethod m) {
    switch (m) {
        case DetMethod::bareiss: return "bareiss";
        case DetMethod::modular_crt: return "modular_crt";
        case DetMethod::float_lu: return "float_lu";
    }
    return "?";
}

struct DetResult {
    std::optional<BigInt> exact;  // present when computed exactly
    double log10_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;
    DetMethod method = DetMethod::bareiss;
};

inline DetResult det_result_from_exact(BigInt v, DetMethod method) {
    DetResult r;
    r.log10_abs = log10_abs(v);
    r.sign = v == 0 ? 0 : (v < 0 ? -1 : 1);
    r.exact = std::move(v);
    r.method = method;
    return r;
}

namespace detail {

inline int default_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hc, 1u, 8u));
}

template <class Fn>
void parallel_rows(int begin, int end, int threads, std::int64_t work_per_row, Fn&& fn) {
    int count = end - begin;
    if (threads <= 1 || count < 2 || work_per_row * count < (1 << 20)) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }
    int nt = std::min(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(nt - 1);
    int chunk = (count + nt - 1) / nt;
    for (int t = 1; t < nt; ++t) {
        int lo = begin + t * chunk;
        int hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (int i = begin; i < std::min(end, begin + chunk); ++i) fn(i);
    for (auto& th : pool) th.join();
}

struct GfpElimination {
    int rank = 0;
    u64 det = 0;  // meaningful for square input only
};

/// In-place row echelon reduction mod p.  Deterministic: pivots are the first
/// nonzero entries scanning down each column; row updates are independent, so
/// thread count never changes the result.
inline GfpElimination eliminate_mod_p(ModMatrix& w, u64 p, int threads) {
    const int rows = static_cast<int>(w.rows());
    const int cols = static_cast<int>(w.cols());
    const bool square = rows == cols;
    Montgomery mont(p);

    GfpElimination out;
    u64 det = 1 % p;
    int sign = 1;
    bool singular = false;
    u64* data = w.data();

    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pr = -1;
        for (int i = rank; i < rows; ++i) {
            if (data[std::size_t(i) * cols + col] != 0) {
                pr = i;
                break;
            }
        }
        if (pr < 0) {
            singular = true;
            continue;
        }
        if (pr != rank) {
            w.row(pr).swap(w.row(rank));
            sign = -sign;
        }
        const u64* src = data + std::size_t(rank) * cols;
        const u64 pivot = src[col];
        det = mulmod(det, pivot, p);
        const u64 pinv = mont.inverse(pivot);

        const std::int64_t row_work = cols - col;
        parallel_rows(rank + 1, rows, threads, row_work, [&](int i) {
            u64* dst = data + std::size_t(i) * cols;
            const u64 head = dst[col];
            if (head == 0) return;
            const u64 m_mont = mont.to_mont(mulmod(head, pinv, p));
            dst[col] = 0;
            for (int j = col + 1; j < cols; ++j)
                dst[j] = submod(dst[j], mont.redc_mul(m_mont, src[j]), p);
        });
        ++rank;
    }

    out.rank = rank;
    if (square) out.det = (singular || rank < rows) ? 0 : (sign < 0 ? (p - det) % p : det);
    return out;
}

/// 32-bit variant of the kernel above for p < 2^31; same pivoting, same
/// results, roughly half the time at large orders.
inline GfpElimination eliminate_mod_p32(Mod32Matrix& w, u64 p, int threads) {
    using u32 = std::uint32_t;
    const int rows = static_cast<int>(w.rows());
    const int cols = static_cast<int>(w.cols());
    const bool square = rows == cols;
    Montgomery32 mont(p);

    GfpElimination out;
    u64 det = 1 % p;
    int sign = 1;
    bool singular = false;
    u32* data = w.data();

    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pr = -1;
        for (int i = rank; i < rows; ++i) {
            if (data[std::size_t(i) * cols + col] != 0) {
                pr = i;
                break;
            }
        }
        if (pr < 0) {
            singular = true;
            continue;
        }
        if (pr != rank) {
            w.row(pr).swap(w.row(rank));
            sign = -sign;
        }
        const u32* src = data + std::size_t(rank) * cols;
        const u32 pivot = src[col];
        det = mulmod(det, pivot, p);
        const u32 pinv = mont.inverse(pivot);

        const std::int64_t row_work = cols - col;
        parallel_rows(rank + 1, rows, threads, row_work, [&](int i) {
            u32* dst = data + std::size_t(i) * cols;
            const u32 head = dst[col];
            if (head == 0) return;
            const u32 m_mont = mont.to_mont(static_cast<u32>(u64(head) * pinv % p));
            dst[col] = 0;
            for (int j = col + 1; j < cols; ++j)
                dst[j] = mont.sub(dst[j], mont.redc_mul(m_mont, src[j]));
        });
        ++rank;
    }

    out.rank = rank;
    if (square) out.det = (singular || rank < rows) ? 0 : (sign < 0 ? (p - det) % p : det);
    return out;
}

inline u64 reduce_entry(std::int64_t v, u64 p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

}  // namespace detail

/// Exact integer determinant by fraction-free (Bareiss) elimination; every
/// intermediate value is an exact integer minor.
inline DetResult bareiss_det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = static_cast<int>(m.rows());
    if (n == 0) return det_result_from_exact(BigInt(1), DetMethod::bareiss);

    DenseMatrix<BigInt> w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = m(i, j);

    int sign = 1;
    BigInt prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        int pr = -1;
        for (int i = k; i < n; ++i) {
            if (w(i, k) != 0) {
                pr = i;
                break;
            }
        }
        if (pr < 0) return det_result_from_exact(BigInt(0), DetMethod::bareiss);
        if (pr != k) {
            w.row(pr).swap(w.row(k));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                w(i, j) = (w(k, k) * w(i, j) - w(i, k) * w(k, j)) / prev;
            w(i, k) = 0;
        }
        prev = w(k, k);
    }
    BigInt det = sign * w(n - 1, n - 1);
    return det_result_from_exact(std::move(det), DetMethod::bareiss);
}

inline u64 det_mod_p(const IntMatrix& m, u64 p, int threads = 0) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (threads == 0) threads = detail::default_threads();
    ModMatrix w(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) w(i, j) = detail::reduce_entry(m(i, j), p);
    return detail::eliminate_mod_p(w, p, threads).det;
}

/// Exact determinant by modular elimination and Chinese remainder
/// reconstruction.  The prime count comes from the Hadamard bound; one extra
/// pool prime re-checks the reconstructed value.
inline DetResult crt_det(const IntMatrix& m, std::vector<u64> primes = {}, int threads = 0) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = static_cast<int>(m.rows());
    if (n == 0) return det_result_from_exact(BigInt(1), DetMethod::modular_crt);

    double log2_bound = 1.0;  // sign bit
    for (int i = 0; i < n; ++i) {
        double norm2 = 0;
        for (int j = 0; j < n; ++j) {
            double v = static_cast<double>(m(i, j));
            norm2 += v * v;
        }
        if (norm2 == 0) return det_result_from_exact(BigInt(0), DetMethod::modular_crt);
        log2_bound += 0.5 * std::log2(norm2);
    }

    if (primes.empty()) {
        const auto& pool = crt_prime_pool();
        int count = static_cast<int>(log2_bound / 61.5) + 2;
        if (count + 1 > static_cast<int>(pool.size()))
            throw std::runtime_error("CRT prime pool exhausted; matrix too large for exact determinant");
        primes.assign(pool.begin(), pool.begin() + count);
    }
    for (u64 p : primes)
        if (!is_prime(p)) throw std::invalid_argument("CRT modulus is not prime");

    std::vector<u64> residues;
    residues.reserve(primes.size());
    for (u64 p : primes) residues.push_back(det_mod_p(m, p, threads));

    // Garner-style incremental reconstruction into the symmetric range.
    BigInt x = residues[0];
    BigInt modulus = primes[0];
    for (std::size_t i = 1; i < primes.size(); ++i) {
        const u64 p = primes[i];
        u64 x_mod = static_cast<u64>(x % p);
        u64 m_mod = static_cast<u64>(modulus % p);
        u64 t = mulmod(submod(residues[i], x_mod, p), powmod(m_mod, p - 2, p), p);
        x += BigInt(t) * modulus;
        modulus *= p;
    }
    if (2 * x > modulus) x -= modulus;

    // Independent residue check with a prime outside the reconstruction set.
    u64 pv = 0;
    for (u64 candidate : crt_prime_pool()) {
        if (std::find(primes.begin(), primes.end(), candidate) == primes.end()) {
            pv = candidate;
            break;
        }
    }
    if (pv != 0) {
        BigInt rv = x % pv;
        if (rv < 0) rv += pv;
        if (static_cast<u64>(rv) != det_mod_p(m, pv, threads))
            throw std::runtime_error("CRT determinant failed verification against a held-out prime");
    }
    return det_result_from_exact(std::move(x), DetMethod::modular_crt);
}

/// log10 |det| via floating LU with partial pivoting; magnitudes accumulate
/// in log space so values beyond double range stay representable.
inline DetResult float_lu_det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = static_cast<int>(m.rows());
    DetResult r;
    r.method = DetMethod::float_lu;
    if (n == 0) {
        r.log10_abs = 0;
        r.sign = 1;
        return r;
    }
    Eigen::MatrixXd d = m.cast<double>();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(d);
    int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
    double log10 = 0;
    for (int i = 0; i < n; ++i) {
        double di = lu.matrixLU()(i, i);
        if (di == 0 || !std::isfinite(di)) {
            r.sign = 0;
            return r;  // singular marker: sign 0, log10 -inf
        }
        if (di < 0) sign = -sign;
        log10 += std::log10(std::abs(di));
    }
    r.sign = sign;
    r.log10_abs = log10;
    return r;
}

inline DetResult det_log10(const IntMatrix& m, DetMethod method, int threads = 0) {
    switch (method) {
        case DetMethod::bareiss: return bareiss_det(m);
        case DetMethod::modular_crt: return crt_det(m, {}, threads);
        case DetMethod::float_lu: return float_lu_det(m);
    }
    throw std::logic_error("unknown determinant method");
}

/// Size-based strategy: exact Bareiss up to order 200, exact CRT up to 1716,
/// floating log-LU beyond.
inline DetResult auto_det(const IntMatrix& m, int threads = 0) {
    if (m.rows() <= 200) return bareiss_det(m);
    if (m.rows() <= 1716) return crt_det(m, {}, threads);
    return float_lu_det(m);
}

/// Rank over GF(p) of an integer matrix expression.
template <class Derived>
int rank_mod_p(const Eigen::MatrixBase<Derived>& m, u64 p, int threads = 0) {
    if (!is_prime(p)) throw std::invalid_argument("modulus is not prime");
    if (threads == 0) threads = detail::default_threads();
    if (p < (u64(1) << 31)) {
        Mod32Matrix w(m.rows(), m.cols());
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                w(i, j) = static_cast<std::uint32_t>(
                    detail::reduce_entry(static_cast<std::int64_t>(m(i, j)), p));
        return detail::eliminate_mod_p32(w, p, threads).rank;
    }
    ModMatrix w(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            w(i, j) = detail::reduce_entry(static_cast<std::int64_t>(m(i, j)), p);
    return detail::eliminate_mod_p(w, p, threads).rank;
}

/// Rank of (base - shift*I) over GF(p) without materializing the shifted
/// matrix in wide storage; `base` entries must be small (0/1 matrices here).
inline int rank_mod_p_shifted(const BinaryMatrix& base, std::int64_t shift, u64 p, int threads = 0) {
    if (!is_prime(p)) throw std::invalid_argument("modulus is not prime");
    if (base.rows() != base.cols()) throw std::invalid_argument("diagonal shift needs a square matrix");
    if (threads == 0) threads = detail::default_threads();
    const int n = static_cast<int>(base.rows());
    if (p < (u64(1) << 31)) {
        Mod32Matrix w(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                w(i, j) = static_cast<std::uint32_t>(
                    detail::reduce_entry(std::int64_t(base(i, j)) - (i == j ? shift : 0), p));
        return detail::eliminate_mod_p32(w, p, threads).rank;
    }
    ModMatrix w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            w(i, j) = detail::reduce_entry(std::int64_t(base(i, j)) - (i == j ? shift : 0), p);
    return detail::eliminate_mod_p(w, p, threads).rank;
}

/// Two-prime confirmation; a disagreement means an unlucky prime and aborts.
template <class RankFn>
int rank_two_primes(RankFn&& rank_at, u64 p1, u64 p2) {
    if (p1 == p2) throw std::invalid_argument("confirming primes must be distinct");
    int r1 = rank_at(p1);
    int r2 = rank_at(p2);
    if (r1 != r2) {
        std::ostringstream msg;
        msg << "finite-field rank disagrees: p=" << p1 << " gives " << r1 << ", p=" << p2
            << " gives " << r2 << " (unlucky prime suspected)";
        throw std::runtime_error(msg.str());
    }
    return r1;
}

/// In-place reduced row echelon form over the rationals; returns pivot
/// columns.  First-nonzero pivoting keeps layouts reproducible.
inline std::vector<int> rref_in_place(RationalMatrix& m) {
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    std::vector<int> pivots;
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int pr = -1;
        for (int i = r; i < rows; ++i) {
            if (m(i, col) != 0) {
                pr = i;
                break;
            }
        }
        if (pr < 0) continue;
        if (pr != r) m.row(pr).swap(m.row(r));
        const Rational inv_piv = Rational(1) / m(r, col);
        for (int j = col; j < cols; ++j) m(r, j) *= inv_piv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m(i, col) == 0) continue;
            const Rational f = m(i, col);
            for (int j = col; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

/// Basis of the exact rational nullspace, one vector per free column, each
/// scaled so its first nonzero coordinate is 1.  Empty iff full column rank.
inline std::vector<std::vector<Rational>> rational_nullspace(const RationalMatrix& m) {
    RationalMatrix r = m;
    const std::vector<int> pivots = rref_in_place(r);
    const int cols = static_cast<int>(m.cols());

    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(static_cast<int>(i), f);
        for (int j = 0; j < cols; ++j) {
            if (v[j] != 0) {
                const Rational scale = Rational(1) / v[j];
                for (int t = j; t < cols; ++t) v[t] *= scale;
                break;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

inline int rational_rank(const RationalMatrix& m) {
    RationalMatrix r = m;
    return static_cast<int>(rref_in_place(r).size());
}

}  // namespace moments
