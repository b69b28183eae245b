#pragma once

#include <cmath>
#include <complex>

#include "fbheat/dd.hpp"

namespace fbheat {

/// Machine epsilon of the working precision.
template <class Real>
inline Real num_eps();

template <>
inline double num_eps<double>() { return 2.220446049250313e-16; }

template <>
inline DD num_eps<DD>() { return DD(4.93038065763132e-32); } // 2^-104

/// Uniform scalar access for the templated kernels: double, DD and
/// std::complex<double> all flow through the same code paths.
template <class Scalar>
struct ScalarTraits {
    using Real = Scalar;
    static Real real(const Scalar& x) { return x; }
    static Scalar conj(const Scalar& x) { return x; }
    static Real abs2(const Scalar& x) { return x * x; }
};

template <class T>
struct ScalarTraits<std::complex<T>> {
    using Real = T;
    static Real real(const std::complex<T>& x) { return x.real(); }
    static std::complex<T> conj(const std::complex<T>& x) { return std::conj(x); }
    static Real abs2(const std::complex<T>& x) { return std::norm(x); }
};

using std::abs;
using std::sqrt;

} // namespace fbheat
