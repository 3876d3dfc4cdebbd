#include "qorrelate/dicke.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qorrelate/states.hpp"

namespace qorrelate {

namespace {

double eta(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

void require_interior(int n, int r) {
    if (n < 3) throw std::invalid_argument("Dicke scores need n >= 3");
    if (r < 1 || r > n - 1) {
        throw std::out_of_range("excitation count r=" + std::to_string(r) + " outside [1, " + std::to_string(n - 1) +
                                "]");
    }
}

}  // namespace

DickeParams dicke_params(int n, int r) {
    const auto [a, b, c] = dicke_populations(n, r);
    DickeParams p;
    p.n = n;
    p.r = r;
    p.a = a;
    p.b = b;
    p.c = c;
    const double x = static_cast<double>(r) / n;
    p.s1 = eta(x) + eta(1.0 - x);
    p.s2 = eta(a + b) + eta(b + c);
    p.s12 = eta(a) + eta(2.0 * b) + eta(c);
    const double root = std::sqrt(std::max(0.0, 1.0 - 4.0 * (a * b + b * c + c * a)));
    p.lambda_plus = 0.5 * (1.0 + root);
    p.lambda_minus = 0.5 * (1.0 - root);
    return p;
}

double dicke_discord_score(int n, int r) {
    require_interior(n, r);
    const DickeParams p = dicke_params(n, r);
    const double conditional = eta(p.lambda_plus) + eta(p.lambda_minus);
    return p.s1 - (n - 1) * (p.s2 - p.s12 + conditional);
}

double dicke_workdeficit_score(int n, int r, Direction dir, const OptimizerOptions& options) {
    require_interior(n, r);
    const double s1 = von_neumann_entropy(dicke_single_rdm(n, r));
    return s1 - (n - 1) * work_deficit_one_way(dicke_pair_rdm(n, r), dir, options);
}

double dicke_tangle(int n, int r) {
    const auto [a, b, c] = dicke_populations(n, r);
    const double x = static_cast<double>(r) / n;
    const double pair = std::max(0.0, 2.0 * (b - std::sqrt(a * c)));
    return 4.0 * x * (1.0 - x) - (n - 1) * pair * pair;
}

}  // namespace qorrelate
