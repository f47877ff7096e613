// types.hpp -- shared dense types and factor bookkeeping
#pragma once

#include <Eigen/Dense>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ebsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Ordered tensor-factor dimensions of a Hilbert space; factor 0 is leftmost.
struct FactorShape {
    std::vector<Index> dims;

    FactorShape() = default;
    FactorShape(std::initializer_list<Index> d) : dims(d) { check(); }
    explicit FactorShape(std::vector<Index> d) : dims(std::move(d)) { check(); }

    Index total_dim() const {
        return std::accumulate(dims.begin(), dims.end(), Index{1},
                               std::multiplies<Index>());
    }
    Index num_factors() const { return static_cast<Index>(dims.size()); }

    void check() const {
        if (dims.empty())
            throw std::invalid_argument("FactorShape: no factors");
        for (Index d : dims)
            if (d < 1)
                throw std::invalid_argument("FactorShape: factor dimension must be >= 1");
    }
};

} // namespace ebsim
