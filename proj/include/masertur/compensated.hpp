// compensated.hpp - error-free-transformation accumulation for the residual
// evaluations whose cancellation carries physically tiny currents

#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace masertur::detail {

// Neumaier running sum with fma-exact products
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    // a * b added exactly as product + fma remainder
    void add_product(double a, double b) {
        const double p = a * b;
        add(p);
        add(std::fma(a, b, -p));
    }
    double value() const { return sum + comp; }
};

struct CompensatedComplex {
    CompensatedSum re, im;

    void add(std::complex<double> v) {
        re.add(v.real());
        im.add(v.imag());
    }
    void add_product(std::complex<double> a, std::complex<double> b) {
        re.add_product(a.real(), b.real());
        re.add_product(-a.imag(), b.imag());
        im.add_product(a.real(), b.imag());
        im.add_product(a.imag(), b.real());
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

// y = A x - rhs with doubled-precision accumulation per row
inline Eigen::VectorXcd compensated_residual(const Eigen::MatrixXcd& A,
                                             const Eigen::VectorXcd& x,
                                             const Eigen::VectorXcd& rhs) {
    const Eigen::Index n = A.rows();
    Eigen::VectorXcd r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        CompensatedComplex acc;
        for (Eigen::Index j = 0; j < A.cols(); ++j) acc.add_product(A(i, j), x[j]);
        acc.add(-rhs[i]);
        r[i] = acc.value();
    }
    return r;
}

} // namespace masertur::detail
