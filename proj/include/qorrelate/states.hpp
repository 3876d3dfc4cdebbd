#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qorrelate/linalg.hpp"
#include "qorrelate/pure_state.hpp"

namespace qorrelate {

// Normalized vector of 2^n i.i.d. complex Gaussians (Haar on the unit sphere).
PureState haar_random_pure(int n, std::uint64_t seed);

PureState w_state(int n);
PureState ghz_state(int n);
// Equal superposition of the C(n, r) weight-r basis states.
PureState dicke_state(int n, int r);

// Haar-random superposition within the weight-r sector, 1 <= r <= n-1.
PureState generalized_dicke_random(int n, int r, std::uint64_t seed);
// Haar-random state of the symmetric subspace: sum_r a_r |D_n^r>, a uniform
// on the complex unit (n+1)-sphere.
PureState symmetric_random(int n, std::uint64_t seed);

// Two-qubit marginal of any pair of |D_n^r>: populations (a, b, b, c) on
// |00>,|01>,|10>,|11> with coherence b between |01> and |10>. No 2^n
// storage, so n is unbounded.
DensityMatrix dicke_pair_rdm(int n, int r);
DensityMatrix dicke_single_rdm(int n, int r);

struct DickePopulations {
    double a;
    double b;
    double c;
};
DickePopulations dicke_populations(int n, int r);

enum class Family { Haar, W, Dicke, GeneralizedDicke, Symmetric };

std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);

struct EnsembleSpec {
    Family family = Family::Haar;
    int n = 3;
    int r = 0;  // Dicke and generalized Dicke only
    std::uint64_t samples = 1;
    std::uint64_t master_seed = 0;

    // Throws std::invalid_argument when the fields are inconsistent.
    void validate() const;
};

// Sample `index` of the ensemble, seeded by sample_seed(master_seed, index).
PureState sample_state(const EnsembleSpec& spec, std::uint64_t index);

}  // namespace qorrelate
