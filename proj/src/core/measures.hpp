#pragma once

#include "core/states.hpp"

#include <functional>
#include <vector>

namespace tangle::measures {

using linalg::CMatrix;
using linalg::CVector;
using linalg::complexd;
using states::Ket;
using states::MixedState;
using states::SymParams;

double concurrence_pure(const Ket& k);
double concurrence_wootters(const MixedState& rho);

// sqrt(4 det rho_1) across the cut qubit vs the other two
double negativity_one_rest(const Ket& k, int cut);

// Cross-check route: twice the absolute sum of the negative eigenvalues of the
// one-vs-rest partial transpose.
double negativity_partial_transpose(const Ket& k, int cut);

// Complex quartic amplitude whose modulus is the three-tangle. Homogeneous of
// degree 4; input need not be normalized.
complexd tangle_amplitude_raw(const CVector& amps);
complexd tangle_amplitude(const Ket& k);
complexd tangle_param(const SymParams& p);
double tangle_pure(const Ket& k);

struct Ensemble {
    std::vector<std::pair<double, Ket>> members;  // (probability, state)
};

CMatrix ensemble_density(const Ensemble& e);
double ensemble_average(const Ensemble& e, const std::function<double(const Ket&)>& measure);

struct RoofResult {
    double value;
    Ensemble best;
};

// Decomposition search: ensembles |psi_j> prop. to sum_i V_ji sqrt(lambda_i)|e_i>
// over m x r isometries V; Haar restarts plus local refinement by random
// perturbation (step halved after 20 consecutive rejections, stop below 1e-6).
// m <= 0 selects rank + 2.
RoofResult convex_roof(const MixedState& rho, const std::function<double(const Ket&)>& measure,
                       int m, int restarts, std::uint64_t seed);

} // namespace tangle::measures
