#include "fintower/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fintower {

namespace {

void check_float_cap(const ExactMatrix& m) {
    if (m.rows() > kMaxFloatDim || m.cols() > kMaxFloatDim) {
        throw std::length_error("float path for shape " + m.shape_string() +
                                " exceeds the dense float cap of " +
                                std::to_string(kMaxFloatDim));
    }
}

bool in_interval(double value, IntervalKind kind, double lambda, double tol) {
    switch (kind) {
        case IntervalKind::above:
            return value > lambda + tol;
        case IntervalKind::below_incl:
            return value > tol && value <= lambda + tol;
    }
    return false;
}

}  // namespace

ComplexMatrix to_complex(const ExactMatrix& m) {
    check_float_cap(m);
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(m.rows()),
                                            static_cast<Eigen::Index>(m.cols()));
    for (const auto& e : m.entries()) {
        out(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) =
            e.value.to_complex();
    }
    return out;
}

SingularProfile singular_values(const ExactMatrix& m) {
    const std::size_t count = std::min(m.rows(), m.cols());
    if (m.has_diagonal_support() || m.is_generalized_permutation()) {
        std::vector<double> values;
        values.reserve(count);
        for (const auto& e : m.entries()) {
            values.push_back(std::sqrt(e.value.norm_sq().convert_to<double>()));
        }
        values.resize(count, 0.0);
        std::sort(values.begin(), values.end(), std::greater<double>());
        return SingularProfile{std::move(values)};
    }
    const Eigen::JacobiSVD<ComplexMatrix> svd(to_complex(m));
    const auto& sv = svd.singularValues();
    return SingularProfile{{sv.data(), sv.data() + sv.size()}};
}

double operator_norm(const ExactMatrix& m) {
    const SingularProfile profile = singular_values(m);
    return profile.values.empty() ? 0.0 : profile.values.front();
}

std::size_t count_above(const SingularProfile& s, double lambda, double tol) {
    std::size_t n = 0;
    for (const double v : s.values) {
        if (in_interval(v, IntervalKind::above, lambda, tol)) {
            ++n;
        }
    }
    return n;
}

std::size_t count_in_zero_lambda(const SingularProfile& s, double lambda,
                                 double tol) {
    std::size_t n = 0;
    for (const double v : s.values) {
        if (in_interval(v, IntervalKind::below_incl, lambda, tol)) {
            ++n;
        }
    }
    return n;
}

PolarPair polar_of(const ComplexMatrix& x, double tol) {
    const Eigen::JacobiSVD<ComplexMatrix> svd(
        x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > tol) {
        ++rank;
    }
    const ComplexMatrix u_r = svd.matrixU().leftCols(rank);
    const ComplexMatrix v_r = svd.matrixV().leftCols(rank);
    PolarPair out;
    out.isometry = u_r * v_r.adjoint();
    out.modulus = svd.matrixV() * sigma.asDiagonal() *
                  svd.matrixV().adjoint();
    return out;
}

PolarPair polar(const ExactMatrix& x, double tol) {
    return polar_of(to_complex(x), tol);
}

ComplexMatrix spectral_projection_hermitian(const ComplexMatrix& h,
                                            IntervalKind kind, double lambda,
                                            double tol) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("spectral projection requires a square matrix");
    }
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    ComplexMatrix out = ComplexMatrix::Zero(h.rows(), h.cols());
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
        if (in_interval(eig.eigenvalues()(k), kind, lambda, tol)) {
            const auto u = eig.eigenvectors().col(k);
            out += u * u.adjoint();
        }
    }
    return out;
}

ComplexMatrix spectral_projection_of_modulus(const ExactMatrix& x,
                                             IntervalKind kind, double lambda,
                                             double tol) {
    if (!x.is_square()) {
        throw std::invalid_argument(
            "spectral projection of the modulus requires a square matrix, got " +
            x.shape_string());
    }
    const Eigen::JacobiSVD<ComplexMatrix> svd(to_complex(x), Eigen::ComputeFullV);
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(x.rows()),
                                            static_cast<Eigen::Index>(x.cols()));
    for (Eigen::Index k = 0; k < svd.matrixV().cols(); ++k) {
        const double sigma =
            k < svd.singularValues().size() ? svd.singularValues()(k) : 0.0;
        if (in_interval(sigma, kind, lambda, tol)) {
            const auto v = svd.matrixV().col(k);
            out += v * v.adjoint();
        }
    }
    return out;
}

}  // namespace fintower
