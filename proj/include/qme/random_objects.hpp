#pragma once

#include "qme/objects.hpp"
#include "qme/rng.hpp"

namespace qme {

// Ginibre-based ensembles. Every generator is deterministic per seed and its
// output passes the corresponding validator. The Rng& overloads let callers
// chain draws off one stream; the seed overloads start a fresh stream.

ComplexMatrix random_hermitian(int dim, Rng& rng);           // (G + G^dagger)/2, Ginibre G
ComplexMatrix random_unitary(int dim, Rng& rng);             // eigenbasis of a random Hermitian
State random_state(int dim, int rank, Rng& rng);             // G G^dagger / tr, G of size dim x rank
Effect random_effect(int dim, Rng& rng);                     // spectrum rescaled into random [lo, hi] in [0, 1]
Observable random_observable(int dim, int outcomes, Rng& rng);
Instrument random_instrument(int dim, int outcomes, int kraus_per_outcome, Rng& rng);

State random_state(int dim, int rank, RngSeed seed);
Effect random_effect(int dim, RngSeed seed);
Observable random_observable(int dim, int outcomes, RngSeed seed);
Instrument random_instrument(int dim, int outcomes, int kraus_per_outcome, RngSeed seed);

}  // namespace qme
