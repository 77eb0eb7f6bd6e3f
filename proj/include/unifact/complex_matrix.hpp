#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <json.hpp>

#include "unifact/errors.hpp"

namespace unifact {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Values are immutable by
/// convention once handed to an operation; all functions return fresh
/// matrices.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {
        if (dim < 1) throw DimensionMismatch("ComplexMatrix: dim must be >= 1");
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

    int dim() const { return dim_; }

    Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    const std::vector<Complex>& data() const { return a_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    ComplexMatrix operator+(const ComplexMatrix& o) const {
        check_same(o);
        ComplexMatrix r(dim_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }
    ComplexMatrix operator-(const ComplexMatrix& o) const {
        check_same(o);
        ComplexMatrix r(dim_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }
    ComplexMatrix operator*(const ComplexMatrix& o) const {
        check_same(o);
        ComplexMatrix r(dim_);
        for (int i = 0; i < dim_; ++i) {
            for (int k = 0; k < dim_; ++k) {
                Complex aik = (*this)(i, k);
                if (aik == Complex{}) continue;
                for (int j = 0; j < dim_; ++j) r(i, j) += aik * o(k, j);
            }
        }
        return r;
    }
    ComplexMatrix operator*(Complex s) const {
        ComplexMatrix r(dim_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
        return r;
    }

    Complex trace() const {
        Complex t{};
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0;
        for (const auto& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    bool bitwise_equal(const ComplexMatrix& o) const { return dim_ == o.dim_ && a_ == o.a_; }

    nlohmann::json to_json() const {
        nlohmann::json data = nlohmann::json::array();
        for (const auto& z : a_) data.push_back({z.real(), z.imag()});
        return {{"dim", dim_}, {"data", data}};
    }

    static ComplexMatrix from_json(const nlohmann::json& j) {
        if (!j.contains("dim") || !j.contains("data"))
            throw BadFormat("matrix JSON: need \"dim\" and \"data\"");
        int d = j.at("dim").get<int>();
        if (d < 1) throw BadFormat("matrix JSON: dim must be >= 1");
        const auto& data = j.at("data");
        if (!data.is_array() || data.size() != static_cast<size_t>(d) * d)
            throw BadFormat("matrix JSON: data must have exactly dim^2 entries");
        ComplexMatrix m(d);
        for (size_t k = 0; k < data.size(); ++k) {
            const auto& e = data[k];
            if (!e.is_array() || e.size() != 2)
                throw BadFormat("matrix JSON: each entry must be [re, im]");
            m.a_[k] = Complex(e[0].get<double>(), e[1].get<double>());
        }
        return m;
    }

private:
    void check_same(const ComplexMatrix& o) const {
        if (dim_ != o.dim_) throw DimensionMismatch("matrix dimension mismatch");
    }

    int dim_ = 0;
    std::vector<Complex> a_;
};

inline ComplexMatrix operator*(Complex s, const ComplexMatrix& m) { return m * s; }

/// Frobenius norm of (a - b); cheap upper-bound companion to the operator
/// norm used in residual claims.
inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).frobenius_norm();
}

inline double hermitian_defect(const ComplexMatrix& a) {
    return frobenius_distance(a, a.adjoint());
}

} // namespace unifact
