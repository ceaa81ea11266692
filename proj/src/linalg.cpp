#include "muforge/linalg.hpp"

namespace muforge {

RatVec rat_vec(size_t n, const Rat& fill) { return RatVec(n, fill); }

RatVec add(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVec sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec scale(const RatVec& a, const Rat& c) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero_vec(const RatVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

RatMat rat_identity(size_t n) {
    RatMat m(n, rat_vec(n));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RatVec mat_vec(const RatMat& m, const RatVec& v) {
    RatVec r(m.size(), Rat(0));
    for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
    return r;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RatMat r(n, rat_vec(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            Rat s(0);
            for (size_t l = 0; l < k; ++l) s += a[i][l] * b[l][j];
            r[i][j] = s;
        }
    return r;
}

RatMat transpose(const RatMat& m) {
    if (m.empty()) return {};
    RatMat r(m[0].size(), rat_vec(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) r[j][i] = m[i][j];
    return r;
}

std::optional<RatMat> rat_inverse(const RatMat& m) {
    size_t n = m.size();
    RatMat a = m;
    RatMat inv = rat_identity(n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat p = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

namespace {

// Row-reduce [A | b]; returns echelon matrix and pivot columns.
struct Echelon {
    RatMat rows;
    std::vector<size_t> pivots;
};

Echelon row_reduce(RatMat a) {
    Echelon e;
    size_t rows = a.size();
    size_t cols = rows == 0 ? 0 : a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        Rat p = a[r][c];
        for (size_t j = 0; j < cols; ++j) a[r][j] /= p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.rows = std::move(a);
    return e;
}

} // namespace

std::optional<RatVec> solve_linear(const RatMat& a, const RatVec& b) {
    size_t rows = a.size();
    size_t cols = rows == 0 ? 0 : a[0].size();
    RatMat aug(rows, rat_vec(cols + 1));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    Echelon e = row_reduce(std::move(aug));
    RatVec x(cols, Rat(0));
    for (size_t k = 0; k < e.pivots.size(); ++k) {
        if (e.pivots[k] == cols) return std::nullopt; // pivot in the b column
        x[e.pivots[k]] = e.rows[k][cols];
    }
    return x;
}

std::vector<RatVec> kernel_basis(const RatMat& a) {
    size_t cols = a.empty() ? 0 : a[0].size();
    Echelon e = row_reduce(a);
    std::vector<bool> is_pivot(cols, false);
    for (size_t p : e.pivots) is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(cols, Rat(0));
        v[free] = 1;
        for (size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.rows[k][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

size_t rank_of(RatMat a) { return row_reduce(std::move(a)).pivots.size(); }

Rat gram_dot(const RatMat& gram, const RatVec& u, const RatVec& v) {
    return dot(u, mat_vec(gram, v));
}

RatVec project_onto_span(const RatMat& gram, const std::vector<RatVec>& basis, const RatVec& v) {
    size_t n = v.size();
    if (basis.empty()) return rat_vec(n);
    // Solve the Gram system <b_i, b_j> c_j = <b_i, v>.
    size_t k = basis.size();
    RatMat g(k, rat_vec(k));
    RatVec rhs(k);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) g[i][j] = gram_dot(gram, basis[i], basis[j]);
        rhs[i] = gram_dot(gram, basis[i], v);
    }
    auto c = solve_linear(g, rhs);
    if (!c) throw Error("projection onto degenerate span");
    RatVec r = rat_vec(n);
    for (size_t i = 0; i < k; ++i) r = add(r, scale(basis[i], (*c)[i]));
    return r;
}

RatVec to_rat_vec(const LatticeVector& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

LatticeVector int_mat_vec(const IntMat& m, const LatticeVector& v) {
    LatticeVector r(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    return r;
}

IntMat int_mat_mul(const IntMat& a, const IntMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMat r(n, std::vector<long long>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j)
            for (size_t l = 0; l < k; ++l) r[i][j] += a[i][l] * b[l][j];
    return r;
}

IntMat int_identity(size_t n) {
    IntMat m(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RatMat to_rat_mat(const IntMat& m) {
    RatMat r(m.size());
    for (size_t i = 0; i < m.size(); ++i) r[i] = to_rat_vec(m[i]);
    return r;
}

std::optional<IntMat> int_inverse(const IntMat& m) {
    auto rinv = rat_inverse(to_rat_mat(m));
    if (!rinv) return std::nullopt;
    IntMat out(rinv->size(), std::vector<long long>(rinv->size(), 0));
    for (size_t i = 0; i < rinv->size(); ++i)
        for (size_t j = 0; j < rinv->size(); ++j) {
            if (!is_integer((*rinv)[i][j])) return std::nullopt;
            out[i][j] = static_cast<long long>(rat_num((*rinv)[i][j]));
        }
    return out;
}

SmithForm smith_normal_form(const std::vector<std::vector<Int>>& a) {
    size_t rows = a.size();
    size_t cols = rows == 0 ? 0 : a[0].size();
    SmithForm f;
    f.d = a;
    f.u.assign(rows, std::vector<Int>(rows, 0));
    f.v.assign(cols, std::vector<Int>(cols, 0));
    for (size_t i = 0; i < rows; ++i) f.u[i][i] = 1;
    for (size_t j = 0; j < cols; ++j) f.v[j][j] = 1;

    auto swap_rows = [&](size_t i, size_t j) {
        std::swap(f.d[i], f.d[j]);
        std::swap(f.u[i], f.u[j]);
    };
    auto swap_cols = [&](size_t i, size_t j) {
        for (auto& row : f.d) std::swap(row[i], row[j]);
        for (auto& row : f.v) std::swap(row[i], row[j]);
    };
    auto add_row = [&](size_t dst, size_t src, const Int& c) {
        for (size_t j = 0; j < cols; ++j) f.d[dst][j] += c * f.d[src][j];
        for (size_t j = 0; j < rows; ++j) f.u[dst][j] += c * f.u[src][j];
    };
    auto add_col = [&](size_t dst, size_t src, const Int& c) {
        for (size_t i = 0; i < rows; ++i) f.d[i][dst] += c * f.d[i][src];
        for (size_t i = 0; i < cols; ++i) f.v[i][dst] += c * f.v[i][src];
    };
    auto negate_row = [&](size_t i) {
        for (auto& x : f.d[i]) x = -x;
        for (auto& x : f.u[i]) x = -x;
    };

    size_t t = 0;
    while (t < rows && t < cols) {
        // Move a nonzero entry of smallest absolute value to (t, t).
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j) {
                if (f.d[i][j] == 0) continue;
                if (!found || boost::multiprecision::abs(f.d[i][j]) <
                                  boost::multiprecision::abs(f.d[pi][pj])) {
                    pi = i;
                    pj = j;
                }
                found = true;
            }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        // Clear row and column t; each Euclid swap strictly shrinks the
        // pivot, so this terminates.
        bool restart = true;
        while (restart) {
            restart = false;
            for (size_t i = t + 1; i < rows && !restart; ++i) {
                if (f.d[i][t] == 0) continue;
                Int q = f.d[i][t] / f.d[t][t];
                add_row(i, t, -q);
                if (f.d[i][t] != 0) {
                    swap_rows(t, i);
                    restart = true;
                }
            }
            if (restart) continue;
            for (size_t j = t + 1; j < cols && !restart; ++j) {
                if (f.d[t][j] == 0) continue;
                Int q = f.d[t][j] / f.d[t][t];
                add_col(j, t, -q);
                if (f.d[t][j] != 0) {
                    swap_cols(t, j);
                    restart = true;
                }
            }
            if (restart) continue;
            // Pivot must divide the whole remaining block for the
            // divisibility chain; fold an offending row in and retry.
            for (size_t i = t + 1; i < rows && !restart; ++i)
                for (size_t j = t + 1; j < cols && !restart; ++j)
                    if (f.d[i][j] % f.d[t][t] != 0) {
                        add_row(t, i, Int(1));
                        restart = true;
                    }
        }
        if (f.d[t][t] < 0) negate_row(t);
        ++t;
    }
    return f;
}

} // namespace muforge
