#include "abst/snf.hpp"

#include <algorithm>

#include "abst/errors.hpp"

namespace abst {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols) {
    if (rows == 0 || cols == 0) throw structural_error("IntMatrix: empty dimensions");
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    if (rows.empty() || rows[0].empty()) throw structural_error("IntMatrix: empty rows");
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw structural_error("IntMatrix: ragged rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::multiplied(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw structural_error("IntMatrix: dimension mismatch");
    IntMatrix r(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) r.at(i, j) += at(i, k) * rhs.at(k, j);
        }
    return r;
}

Int IntMatrix::determinant() const {
    if (rows_ != cols_) throw structural_error("determinant: not square");
    // Bareiss fraction-free elimination
    IntMatrix m(*this);
    const std::size_t n = rows_;
    Int prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t piv = k;
            while (piv < n && m.at(piv, k) == 0) ++piv;
            if (piv == n) return Int(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev;
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

std::vector<Int> SNFResult::diagonal() const {
    std::vector<Int> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d.at(i, i));
    return out;
}

std::vector<Int> SNFResult::nontrivial_divisors() const {
    std::vector<Int> out;
    for (const Int& x : diagonal())
        if (x > 1) out.push_back(x);
    return out;
}

std::size_t SNFResult::rank() const {
    std::size_t r = 0;
    for (const Int& x : diagonal())
        if (x != 0) ++r;
    return r;
}

SNFResult smith_normal_form(const IntMatrix& a) {
    const std::size_t n = a.rows(), q = a.cols();
    SNFResult res{a, IntMatrix::identity(n), IntMatrix::identity(q)};
    IntMatrix& d = res.d;
    IntMatrix& u = res.u;
    IntMatrix& v = res.v;

    auto row_sub = [&](std::size_t i, std::size_t j, const Int& f) {  // row i -= f * row j
        for (std::size_t c = 0; c < q; ++c) d.at(i, c) -= f * d.at(j, c);
        for (std::size_t c = 0; c < n; ++c) u.at(i, c) -= f * u.at(j, c);
    };
    auto col_sub = [&](std::size_t i, std::size_t j, const Int& f) {  // col i -= f * col j
        for (std::size_t r = 0; r < n; ++r) d.at(r, i) -= f * d.at(r, j);
        for (std::size_t r = 0; r < q; ++r) v.at(r, i) -= f * v.at(r, j);
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < q; ++c) std::swap(d.at(i, c), d.at(j, c));
        for (std::size_t c = 0; c < n; ++c) std::swap(u.at(i, c), u.at(j, c));
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < n; ++r) std::swap(d.at(r, i), d.at(r, j));
        for (std::size_t r = 0; r < q; ++r) std::swap(v.at(r, i), v.at(r, j));
    };
    auto row_negate = [&](std::size_t i) {
        for (std::size_t c = 0; c < q; ++c) d.at(i, c) = -d.at(i, c);
        for (std::size_t c = 0; c < n; ++c) u.at(i, c) = -u.at(i, c);
    };

    const std::size_t steps = std::min(n, q);
    for (std::size_t k = 0; k < steps; ++k) {
        for (;;) {
            // pivot: smallest nonzero absolute value, ties by position
            std::size_t pr = n, pc = q;
            Int best(0);
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < q; ++j) {
                    const Int& x = d.at(i, j);
                    if (x == 0) continue;
                    Int ax = abs(x);
                    if (pr == n || ax < best) {
                        best = ax;
                        pr = i;
                        pc = j;
                    }
                }
            if (pr == n) goto done;  // trailing block is zero
            row_swap(k, pr);
            col_swap(k, pc);
            if (d.at(k, k) < 0) row_negate(k);

            bool clean = true;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (d.at(i, k) == 0) continue;
                Int f = d.at(i, k) / d.at(k, k);  // truncated division
                if (f != 0) row_sub(i, k, f);
                if (d.at(i, k) != 0) clean = false;
            }
            for (std::size_t j = k + 1; j < q; ++j) {
                if (d.at(k, j) == 0) continue;
                Int f = d.at(k, j) / d.at(k, k);
                if (f != 0) col_sub(j, k, f);
                if (d.at(k, j) != 0) clean = false;
            }
            if (!clean) continue;

            // enforce divisibility of the trailing block
            bool divisible = true;
            for (std::size_t i = k + 1; i < n && divisible; ++i)
                for (std::size_t j = k + 1; j < q; ++j)
                    if (!mpz_divisible_p(d.at(i, j).get_mpz_t(), d.at(k, k).get_mpz_t())) {
                        row_sub(k, i, Int(-1));  // row k += row i
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
    }
done:
    return res;
}

namespace {

// Prime factorization by trial division; divisors here are desk scale.
std::map<Int, unsigned> factorize(Int n) {
    std::map<Int, unsigned> f;
    for (Int p(2); p * p <= n;) {
        if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            unsigned e = 0;
            while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
                n /= p;
                ++e;
            }
            f[p] = e;
        }
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (p > 1'000'000 && n > 1) {
            if (is_prime(n)) break;
            throw diagnostic_error("type_from_relation_matrix: divisor too hard to factor");
        }
    }
    if (n > 1) f[n] += 1;
    return f;
}

}  // namespace

GroupType AbelianType::restricted_to(const Int& p) const {
    GroupType t;
    t.torsion_free_rank = free_rank;
    auto it = primary.find(p);
    if (it != primary.end()) t.ulm = it->second;
    return t;
}

AbelianType type_from_relation_matrix(const IntMatrix& a, std::size_t q) {
    if (a.cols() != q) throw structural_error("type_from_relation_matrix: column count != q");
    SNFResult snf = smith_normal_form(a);
    AbelianType t;
    t.free_rank = static_cast<unsigned>(q - snf.rank());
    for (const Int& div : snf.nontrivial_divisors()) {
        for (const auto& [p, e] : factorize(div)) ++t.primary[p][e];
    }
    return t;
}

AbelianType type_from_relations(const std::vector<std::vector<Int>>& relations, std::size_t q) {
    if (relations.empty()) {
        AbelianType t;
        t.free_rank = static_cast<unsigned>(q);
        return t;
    }
    return type_from_relation_matrix(IntMatrix::from_rows(relations), q);
}

}  // namespace abst
