#pragma once

#include "core/measures.hpp"

namespace tangle::critical {

using measures::Ensemble;

enum class Family { G, J };

struct RescaledParams {
    double q_tilde;
    double p;
};

struct CriticalResult {
    double q_tilde_c;
    double q_c;
    double avg_decay;  // tau(initial) / q_c
};

RescaledParams rescaled_params_G(double beta, double gamma, double q);
RescaledParams rescaled_params_J(double alpha, double q);

// Bracketed expression before clipping; its first zero in q_tilde is the
// critical point.
double tau_tilde_raw(Family f, double q_tilde, double p);
double tau_tilde_G(double q_tilde, double p);
double tau_tilde_J(double q_tilde, double p);

// Minimal tangle over the characteristic family
// sqrt(1-q~)|base> + sqrt(q~)(sqrt(p)(d1 P1 + d2 P2) + sqrt(1-p)(d3 P3 + d4 P4))
// with |d1|^2+|d2|^2 = |d3|^2+|d4|^2 = 1, by phase-grid seeding plus local
// refinement. Independent check of the closed forms.
double characteristic_min(Family f, double q_tilde, double p);

// Six equal-weight members composing (1-q~)|base><base| + q~ PiW(p).
Ensemble optimal_ensemble_Gtilde(double q_tilde, double p);
Ensemble optimal_ensemble_Jtilde(double q_tilde, double p);

double critical_qtilde(Family f, double p);  // first zero, bisection to 1e-12

CriticalResult critical_q_G(double beta, double gamma);
CriticalResult critical_q_J(double alpha);

} // namespace tangle::critical
