#pragma once

#include "qorrelate/measures.hpp"

namespace qorrelate {

// Closed-form ingredients of the Dicke-state scores. Permutation invariance
// makes every pair marginal identical, so nothing here scales with 2^n.
struct DickeParams {
    int n = 0;
    int r = 0;
    double a = 0.0;  // <00|rho|00>
    double b = 0.0;  // <01|rho|01> = <10|rho|10> = <01|rho|10>
    double c = 0.0;  // <11|rho|11>
    double s1 = 0.0;   // single-qubit entropy h(r/n)
    double s2 = 0.0;   // marginal entropy of either qubit of a pair
    double s12 = 0.0;  // pair entropy, spectrum {a, 2b, c}
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
};

DickeParams dicke_params(int n, int r);

// S1 - (n-1)(S2 - S12 + H(lambda_pm)); the sigma_x measurement is optimal on
// the Dicke pair marginal. Requires n >= 3, 1 <= r <= n-1.
double dicke_discord_score(int n, int r);

// S(rho_1) - (n-1) * one-way work-deficit of the analytic pair marginal.
double dicke_workdeficit_score(int n, int r, Direction dir, const OptimizerOptions& options = {});

// 4(r/n)(1 - r/n) - (n-1) * max{0, 2(b - sqrt(ac))}^2
double dicke_tangle(int n, int r);

}  // namespace qorrelate
