#ifndef ABST_SNF_HPP
#define ABST_SNF_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "abst/ints.hpp"
#include "abst/pbasis.hpp"

namespace abst {

/// Dense matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix(std::size_t rows, std::size_t cols);
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Int& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    Int& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

    IntMatrix multiplied(const IntMatrix& rhs) const;
    /// Exact integer determinant (Bareiss), square matrices only.
    Int determinant() const;

    bool operator==(const IntMatrix&) const = default;

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

/// Smith normal form U*A*V = D with unimodular U, V and d_i | d_{i+1}.
struct SNFResult {
    IntMatrix d, u, v;

    std::vector<Int> diagonal() const;
    /// Diagonal entries > 1.
    std::vector<Int> nontrivial_divisors() const;
    std::size_t rank() const;
};

/// Deterministic SNF: pivot of smallest nonzero absolute value, ties by
/// position (row-major).
SNFResult smith_normal_form(const IntMatrix& a);

/// Multi-prime additive type of Z^q / rowspace(A).
struct AbelianType {
    unsigned free_rank = 0;
    std::map<Int, std::map<unsigned, unsigned>> primary;  // p -> (r -> multiplicity)

    GroupType restricted_to(const Int& p) const;
    bool operator==(const AbelianType&) const = default;
};

/// Type of the group presented by relation matrix A (rows are relations)
/// on q generators.
AbelianType type_from_relation_matrix(const IntMatrix& a, std::size_t q);
/// Same, building the matrix from relation vectors; an empty list means the
/// free group of rank q.
AbelianType type_from_relations(const std::vector<std::vector<Int>>& relations, std::size_t q);

}  // namespace abst

#endif
