// exact.hpp -- exact enumeration engines: partition functions, occupancy
// distributions of a single colour, closed-form-style engines for complete
// bipartite hosts, the blow-up construction, exact sampling and pure-pair
// classification.
#pragma once

#include "homoscope/extremal.hpp"
#include "homoscope/model.hpp"
#include "homoscope/rational.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace homoscope {

struct Colouring {
    std::vector<int> assignment;  // indexed by global host vertex id
};

bool is_valid_colouring(const BipartiteHostGraph& g, const ConstraintGraph& h,
                        const Colouring& f);

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Default enumeration budget: refuse components whose raw assignment count
// q^m exceeds this.
inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct PartitionValue {
    Rational value;
    double log2_view = 0.0;  // -inf convention avoided: 0 when value == 0
};

PartitionValue partition_function(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                  const WeightSystem& lambda,
                                  std::uint64_t budget = kDefaultBudget);

struct OccupancyDistribution {
    int colour = 0;
    int host_size = 0;
    std::map<int, Rational> mass;  // N_k -> exact probability
    Rational mean_fraction;
};

// Weighted counts c_k(j): total weight of colourings with |f^-1(k)| = j,
// plus their sum Z. The raw counts feed the tilting checks directly.
struct OccupancyCounts {
    int colour = 0;
    int host_size = 0;
    std::vector<Rational> weight_by_count;  // index j in [0, host_size]
    Rational total;                         // Z
};

OccupancyCounts occupancy_counts(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                 const WeightSystem& lambda, int colour,
                                 std::uint64_t budget = kDefaultBudget);

OccupancyDistribution occupancy_distribution(const BipartiteHostGraph& g,
                                             const ConstraintGraph& h,
                                             const WeightSystem& lambda, int colour,
                                             std::uint64_t budget = kDefaultBudget);

OccupancyDistribution distribution_from_counts(const OccupancyCounts& counts);

// Z(K_{a,b}, H) by aggregating left-class assignments by their common
// neighbourhood T: Z = sum_T W_a(T) w(T)^b. Time 2^q-ish, never q^a.
// a = 0 is allowed (empty left class).
PartitionValue kdd_partition_function(int a, int b, const ConstraintGraph& h,
                                      const WeightSystem& lambda);

// Exact law of N_k on K_{d,d} via the same aggregation with a colour-k
// marker tracked on both sides.
OccupancyDistribution kdd_occupancy_distribution(int d, const ConstraintGraph& h,
                                                 const WeightSystem& lambda, int colour);

OccupancyCounts kdd_occupancy_counts(int d, const ConstraintGraph& h,
                                     const WeightSystem& lambda, int colour);

// The unweighted blow-up H_Lambda^C: colour i becomes C*lambda_i clones,
// edges become complete joins, loops complete looped blocks. Requires every
// C*lambda_i to be a positive integer.
ConstraintGraph blow_up(const ConstraintGraph& h, const WeightSystem& lambda, int c);

// Exact draw from p_Lambda, component by component. Throws when Hom is empty.
Colouring exact_sample(const BipartiteHostGraph& g, const ConstraintGraph& h,
                       const WeightSystem& lambda, RandomSeed seed,
                       std::uint64_t budget = kDefaultBudget);

struct ColouringClass {
    ColourMask E_set = 0;
    ColourMask O_set = 0;
    int threshold = 0;

    bool operator==(const ColouringClass& o) const {
        return E_set == o.E_set && O_set == o.O_set && threshold == o.threshold;
    }
};

// Colours whose preimage within each host class meets the threshold.
ColouringClass classify_colouring(const BipartiteHostGraph& g, const ConstraintGraph& h,
                                  const Colouring& f, int threshold);

}  // namespace homoscope
