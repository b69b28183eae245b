#include "fbheat/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fbheat/jacobi_svd.hpp"

namespace fbheat {

std::vector<double> singular_values(const DenseMatrix<double>& A) {
    return jacobi_singular_values(A);
}

std::vector<double> singular_values(const DenseMatrix<Cplx>& A) {
    return jacobi_singular_values(A);
}

DenseMatrix<double> inverse_block(const EpsilonParam& eps, int N) {
    const int n2 = 2 * N;
    const TridiagonalMatrix T = build_aplus(eps, n2);
    std::vector<double> d = T.diag, up = T.super, lo = T.sub;
    TridiagLU<double> lu(std::move(d), std::move(up), std::move(lo));
    DenseMatrix<double> inv(N, N);
    std::vector<double> col(static_cast<size_t>(n2));
    for (int n = 1; n <= N; ++n) {
        std::fill(col.begin(), col.end(), 0.0);
        col[static_cast<size_t>(n - 1)] = 1.0;
        lu.solve(col);
        for (int m = 0; m < N; ++m) inv(m, n - 1) = col[static_cast<size_t>(m)];
    }
    return inv;
}

SchattenReport schatten_partial(const EpsilonParam& eps, int N,
                                const std::vector<double>& p_list) {
    if (N < 8) throw DimensionError("schatten_partial needs N >= 8");
    for (double p : p_list)
        if (!(p > 0.0) || p > 2.0) throw DomainError("Schatten exponent must lie in (0, 2]");

    SchattenReport rep;
    rep.block = N;
    rep.epsilon = eps.value();
    rep.singular_values = singular_values(inverse_block(eps, N));
    const std::vector<double> sv2 = singular_values(inverse_block(eps, 2 * N));

    for (double p : p_list) {
        double sum_n = 0.0, sum_2n = 0.0;
        for (double s : rep.singular_values) sum_n += std::pow(s, p);
        for (double s : sv2) sum_2n += std::pow(s, p);
        rep.partial_sums[p] = sum_n;
        rep.partial_sums_doubled[p] = sum_2n;
        rep.stabilization[p] = std::abs(sum_2n - sum_n) / std::max(sum_n, 1e-300);
    }
    return rep;
}

namespace {

/// Incremental orthonormalization with full (twice-is-enough)
/// reorthogonalization; emits the principal-angle sines and, via one-sided
/// Jacobi on the raw vector matrix, the Gram condition numbers of the nested
/// families.  Runs in double, DD or complex scalars.
template <class Scalar>
struct AngleMachine {
    using ST = ScalarTraits<Scalar>;
    using Real = typename ST::Real;

    static Real norm(const std::vector<Scalar>& v) {
        Real acc(0);
        for (const Scalar& x : v) acc += ST::abs2(x);
        return sqrt(acc);
    }

    static void project_out(const std::vector<std::vector<Scalar>>& q, std::vector<Scalar>& r) {
        for (const auto& col : q) {
            Scalar dot(0);
            for (size_t i = 0; i < r.size(); ++i) dot += ST::conj(col[i]) * r[i];
            for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - dot * col[i];
        }
    }

    static RieszDiagnostics run(const std::vector<std::vector<Scalar>>& vectors,
                                double precision_floor) {
        RieszDiagnostics out;
        out.precision_floor = precision_floor;
        if (vectors.empty()) return out;
        const size_t dim = vectors.front().size();
        for (const auto& v : vectors)
            if (v.size() != dim) throw DimensionError("eigenvector family has mixed lengths");

        std::vector<std::vector<Scalar>> q;
        for (size_t j = 0; j < vectors.size(); ++j) {
            std::vector<Scalar> r = vectors[j];
            const Real un = norm(r);
            if (!(to_double(un) > 0.0)) {
                out.rank_deficient_at = static_cast<int>(j);
                break;
            }
            project_out(q, r);
            project_out(q, r); // reorthogonalize: the family is nearly dependent
            const Real rn = norm(r);
            const double sin_angle = std::min(1.0, to_double(rn) / to_double(un));
            if (j > 0) {
                out.angles.push_back(std::asin(sin_angle));
                if (out.precision_floor_index < 0 && sin_angle <= precision_floor)
                    out.precision_floor_index = static_cast<int>(out.angles.size()) - 1;
            }
            if (!(to_double(rn) > 1e-3 * precision_floor * to_double(un))) {
                out.rank_deficient_at = static_cast<int>(j);
                break;
            }
            for (Scalar& x : r) x = x / Scalar(rn);
            q.push_back(std::move(r));
        }

        // Gram conditions of the nested families via singular values of the
        // vector matrix: cond(G_N) = (s_max/s_min)^2.
        const size_t usable = q.size();
        for (size_t count = 1; count <= usable; ++count) {
            DenseMatrix<Scalar> V(static_cast<int>(dim), static_cast<int>(count));
            for (size_t c = 0; c < count; ++c)
                for (size_t i = 0; i < dim; ++i) V(static_cast<int>(i), static_cast<int>(c)) = vectors[c][i];
            const auto sv = jacobi_singular_values(V);
            const double smax = to_double(sv.front());
            const double smin = to_double(sv.back());
            double cond = smin > 0.0 ? (smax / smin) * (smax / smin)
                                     : std::numeric_limits<double>::max();
            out.gram_condition.push_back(std::min(cond, 1e300));
        }
        return out;
    }

    static std::vector<double> residuals(const std::vector<std::vector<Scalar>>& vectors,
                                         const std::vector<Scalar>& target) {
        std::vector<double> out;
        std::vector<std::vector<Scalar>> q;
        std::vector<Scalar> r = target;
        for (size_t j = 0; j < vectors.size(); ++j) {
            std::vector<Scalar> w = vectors[j];
            project_out(q, w);
            project_out(q, w);
            const Real wn = norm(w);
            if (!(to_double(wn) > 0.0)) break;
            for (Scalar& x : w) x = x / Scalar(wn);
            q.push_back(std::move(w));
            const auto& qj = q.back();
            Scalar dot(0);
            for (size_t i = 0; i < r.size(); ++i) dot += ST::conj(qj[i]) * r[i];
            for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - dot * qj[i];
            out.push_back(to_double(norm(r)));
        }
        return out;
    }
};

template <class Real>
std::vector<std::vector<Real>> eigenvector_family(const std::vector<Eigenpair<Real>>& pairs) {
    std::vector<std::vector<Real>> vecs;
    vecs.reserve(pairs.size());
    for (const auto& p : pairs) vecs.push_back(p.vec);
    return vecs;
}

} // namespace

RieszDiagnostics subspace_angles(const std::vector<OneSidedCoeffs>& vectors) {
    std::vector<std::vector<Cplx>> v(vectors.begin(), vectors.end());
    return AngleMachine<Cplx>::run(v, 1e-15);
}

std::vector<double> completeness_residuals(const std::vector<OneSidedCoeffs>& vectors,
                                           const OneSidedCoeffs& target) {
    std::vector<std::vector<Cplx>> v(vectors.begin(), vectors.end());
    return AngleMachine<Cplx>::residuals(v, target);
}

RieszDiagnostics riesz_diagnostics(const EpsilonParam& eps, int count, int truncation,
                                   Precision mode) {
    if (count < 2) throw DimensionError("riesz diagnostics need at least 2 vectors");
    if (mode == Precision::extended) {
        const auto pairs = lowest_eigenpairs_dd(eps, truncation, count);
        if (static_cast<int>(pairs.size()) < count)
            throw NumericalError("only " + std::to_string(pairs.size()) +
                                 " refined eigenpairs available, need " + std::to_string(count));
        return AngleMachine<DD>::run(eigenvector_family(pairs), 1e-30);
    }
    const auto pairs = lowest_eigenpairs(eps, truncation, count);
    if (static_cast<int>(pairs.size()) < count)
        throw NumericalError("only " + std::to_string(pairs.size()) +
                             " refined eigenpairs available, need " + std::to_string(count));
    return AngleMachine<double>::run(eigenvector_family(pairs), 1e-15);
}

std::vector<double> completeness_diagnostics(const EpsilonParam& eps,
                                             const std::vector<double>& target, int count,
                                             int truncation, Precision mode) {
    if (static_cast<int>(target.size()) != truncation)
        throw DimensionError("target length must equal the truncation");
    if (mode == Precision::extended) {
        const auto pairs = lowest_eigenpairs_dd(eps, truncation, count);
        if (static_cast<int>(pairs.size()) < count)
            throw NumericalError("insufficient refined eigenpairs for the completeness probe");
        std::vector<DD> t(target.begin(), target.end());
        return AngleMachine<DD>::residuals(eigenvector_family(pairs), t);
    }
    const auto pairs = lowest_eigenpairs(eps, truncation, count);
    if (static_cast<int>(pairs.size()) < count)
        throw NumericalError("insufficient refined eigenpairs for the completeness probe");
    return AngleMachine<double>::residuals(eigenvector_family(pairs), target);
}

} // namespace fbheat
