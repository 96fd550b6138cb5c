#pragma once

#include <optional>
#include <vector>

#include "weyllab/hpoly.hpp"
#include "weyllab/rational.hpp"

namespace weyllab {

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;
using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

// Gauss-Jordan reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(RatMatrix& m);
std::size_t rank(RatMatrix m);

// Unique solution of A x = b, or nullopt if A is singular or the system is
// inconsistent.
std::optional<RatVector> solve_unique(const RatMatrix& a, const RatVector& b);
// Some solution of A x = b (free variables zero), or nullopt if inconsistent.
std::optional<RatVector> solve_any(const RatMatrix& a, const RatVector& b);

RatMatrix transpose(const RatMatrix& m);
RatVector mat_vec(const RatMatrix& m, const RatVector& v);

// Indices of a maximal linearly independent subset of the rows, chosen greedily
// in order.
std::vector<std::size_t> independent_rows(const RatMatrix& rows);

// Row-style Hermite normal form of the Z-span of the given integer rows;
// zero rows dropped.
IntMatrix hermite_basis(IntMatrix rows);

// Fraction-free (Bareiss) determinant of a square polynomial matrix.
HPoly bareiss_determinant(std::vector<std::vector<HPoly>> m);

}  // namespace weyllab
