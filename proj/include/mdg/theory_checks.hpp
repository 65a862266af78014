#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mdg/generator.hpp"

namespace mdg {

/// How an empirical value is compared against its reference value.
enum class Relation { Equal, LessEq, GreaterEq };

std::string to_string(Relation relation);

/// One comparison inside a check report. The verdict is a pure function of
/// the recorded numbers: the allowed margin is max(slack, 3 * standard_error),
/// i.e. a stated absolute band or the normal-approximation noise floor,
/// whichever is larger.
struct CheckItem {
    std::string name;
    double empirical = 0.0;
    double standard_error = 0.0;  // of the empirical estimate (0 when exact)
    double expected = 0.0;        // closed form, or the estimated bound side
    double slack = 0.0;           // absolute tolerance granted by the claim
    Relation relation = Relation::Equal;
    bool pass = false;

    double margin() const;
};

/// Recomputes the verdict from the stored numbers alone.
bool item_passes(const CheckItem& item);

/// Outcome of one Monte-Carlo claim verification. Embeds every input needed
/// to replay the run (claim id, seed, numeric parameters).
struct CheckReport {
    std::string claim;
    std::uint64_t seed = 0;
    std::map<std::string, double> params;
    std::vector<CheckItem> items;
    std::string note;
    bool pass = false;  // conjunction of item verdicts
};

/// Compares empirical urn-allocation moments (gamma = 1) against the closed
/// forms: mean n/k, variance n(k+n)(k-1)/(k^2(k+1)) and pairwise product
/// moment n(n-1)/(k(k+1)). Mean uses a 1% band, the second moments 5%.
///
/// The closed forms describe a plain reinforcement urn over n draws; the
/// allocation here pre-seeds one vertex per child and distributes the
/// remaining n-k, so its exact moments differ by O(k/n) - well inside the
/// stated bands when n >> k.
CheckReport check_polya_moments(int n_vertices, int k_children, int trials, std::uint64_t seed);

/// Verifies E(diameter) <= 2*P(series root) + P(prime root)*E(K | prime root)
/// over generated samples. Root-type probabilities come from the effective
/// initial distribution; E(K) is estimated from the sampled prime roots.
/// Requires a config with no parallel mass at the root (connected graphs);
/// any disconnected sample is counted, excluded and noted.
CheckReport check_diameter_bound(const GeneratorConfig& config, int samples, std::uint64_t seed);

/// Verifies the first-level degree bounds for a fixed tracked vertex (index
/// 0, which the contiguous allocation always places in the root's first,
/// exchangeable child), both sides Monte-Carlo estimated with one-sided
/// 3-standard-error slack:
///   - mean:  E(dg(v)) >= sum_k (n/k) E(|N1(v)| | k) P(k)
///   - tail:  P(dg(v) > m) >= P(|N1(v)| = m) for every m observed at the
///     first level (|N1(v)| = m already forces K >= m+1).
/// N1(v) is the set of root-quotient blocks adjacent to v's block. Averaging
/// over all vertices instead would size-bias the own block and shrink the
/// true mean below the bound. Requires a config with no parallel mass at the
/// root.
CheckReport check_degree_bounds(const GeneratorConfig& config, int samples, std::uint64_t seed);

/// Covariance-to-variance ratio of child sizes under the plain urn closed
/// forms: r(n, k) = (n-1)k / ((k-1)(k+n)). Requires k >= 2.
double r_ratio(int n_vertices, int k_children);

std::string report_to_json(const CheckReport& report);
std::string report_to_text(const CheckReport& report);

} // namespace mdg
