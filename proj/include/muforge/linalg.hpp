#pragma once

#include "muforge/rational.hpp"

#include <optional>
#include <vector>

namespace muforge {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>; // row-major
using LatticeVector = std::vector<long long>;
using IntMat = std::vector<std::vector<long long>>;

RatVec rat_vec(size_t n, const Rat& fill = Rat(0));
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const RatVec& a, const Rat& c);
Rat dot(const RatVec& a, const RatVec& b);
bool is_zero_vec(const RatVec& a);

RatMat rat_identity(size_t n);
RatVec mat_vec(const RatMat& m, const RatVec& v);
RatMat mat_mul(const RatMat& a, const RatMat& b);
RatMat transpose(const RatMat& m);
std::optional<RatMat> rat_inverse(const RatMat& m);

/// Particular solution of A x = b over Q, empty if inconsistent.
std::optional<RatVec> solve_linear(const RatMat& a, const RatVec& b);

/// Basis of the rational kernel of A.
std::vector<RatVec> kernel_basis(const RatMat& a);

size_t rank_of(RatMat a);

/// <u, v>_G = u^T G v.
Rat gram_dot(const RatMat& gram, const RatVec& u, const RatVec& v);

/// G-orthogonal projection of v onto span(basis); basis may be empty.
RatVec project_onto_span(const RatMat& gram, const std::vector<RatVec>& basis, const RatVec& v);

RatVec to_rat_vec(const LatticeVector& v);
LatticeVector int_mat_vec(const IntMat& m, const LatticeVector& v);
IntMat int_mat_mul(const IntMat& a, const IntMat& b);
IntMat int_identity(size_t n);
RatMat to_rat_mat(const IntMat& m);
/// Inverse of a unimodular integer matrix; empty if not invertible over Z.
std::optional<IntMat> int_inverse(const IntMat& m);

/// Smith normal form D = U A V with U, V unimodular, D diagonal with
/// d_1 | d_2 | ... and nonnegative entries.
struct SmithForm {
    std::vector<std::vector<Int>> d, u, v;
};
SmithForm smith_normal_form(const std::vector<std::vector<Int>>& a);

} // namespace muforge
