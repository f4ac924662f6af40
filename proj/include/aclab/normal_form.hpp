#pragma once

#include <optional>
#include <vector>

#include "aclab/matrix.hpp"

namespace aclab {

// Smith decomposition U*M*V = S with U, V unimodular and S diagonal with a
// divisibility chain s_1 | s_2 | ... Pivot selection is always the smallest
// nonzero absolute value (ties broken by position), so output is
// deterministic.
struct SmithDecomposition {
    IMat u, s, v;
    std::size_t rank = 0;                 // number of nonzero diagonal entries
    std::vector<Int> invariant_factors;   // the nonzero s_i, in chain order
};

SmithDecomposition smith_decomposition(const IMat& m);

// Basis of the integer kernel {x : M x = 0}, as columns. The kernel of an
// integer matrix is automatically saturated.
IMat integer_kernel(const IMat& m);

// One integer solution of M x = b, if any.
std::optional<std::vector<Int>> solve_integer(const IMat& m, const std::vector<Int>& b);

// Rank over Q.
std::size_t integer_rank(const IMat& m);

}  // namespace aclab
