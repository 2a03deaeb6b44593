#include "nlslab/params.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nls {

void validate(const ModelParams& p) {
    if (p.dim < 1)
        throw std::invalid_argument("dimension must satisfy N >= 1, got " + std::to_string(p.dim));
    const double b_cap = std::min(2.0, static_cast<double>(p.dim));
    if (!(p.b >= 0.0 && p.b < b_cap))
        throw std::invalid_argument("inhomogeneity exponent must satisfy 0 <= b < min(2, N), got b = " +
                                    std::to_string(p.b) + " with N = " + std::to_string(p.dim));
    if (!(p.sigma > 0.0))
        throw std::invalid_argument("nonlinearity power must be positive, got sigma = " +
                                    std::to_string(p.sigma));
    if (p.dim >= 3) {
        const double sigma_cap = (2.0 - p.b) / (p.dim - 2);
        if (!(p.sigma < sigma_cap))
            throw std::invalid_argument("sigma must stay below (2 - b) / (N - 2) for N >= 3, got sigma = " +
                                        std::to_string(p.sigma));
    }
    if (!(p.omega > 0.0))
        throw std::invalid_argument("frequency must be positive, got omega = " + std::to_string(p.omega));
}

ModelParams critical_params(int dim, double b, double omega) {
    ModelParams p;
    p.dim = dim;
    p.b = b;
    p.omega = omega;
    p.sigma = (dim >= 1) ? (2.0 - b) / dim : 0.0;
    validate(p);
    return p;
}

ModelParams make_params(int dim, double b, double sigma, double omega) {
    ModelParams p{dim, b, sigma, omega};
    validate(p);
    return p;
}

} // namespace nls
