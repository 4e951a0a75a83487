#pragma once

#include "owlet/owlimit.hpp"

namespace owlet::entropy {

struct ScaleEstimate {
    int radius;
    OWEstimate estimate;
};

struct EntropyReport {
    std::string label;
    std::vector<ScaleEstimate> per_scale;
    double density_factor = 1.0;
    double sup_value = 0;  // density_factor * max over scales of tails
    double band = 0;       // band of the winning scale
};

/// Topological entropy of the subshift along F_i = A_i (integer regions of
/// the sequence): per scale r, the normalized limit of log cov(s, F_i, r),
/// normalized by |F_i + B_r| so that full shifts read exactly log k at every
/// index. Scales default to {0, 1, 2}.
EntropyReport topological_entropy(const Subshift& s, const VanHoveSequence& seq,
                                  const std::vector<int>& scales, int i_max,
                                  std::uint64_t budget = 1ull << 26);

/// Relative entropy of a factor map: normalized limit of log fiber_cov.
EntropyReport relative_entropy(const SlidingBlockCode& code, const VanHoveSequence& seq,
                               const std::vector<int>& scales, int i_max,
                               std::uint64_t budget = 1ull << 24);

/// Index-set restriction. For the sublattice n0 Z^d the action is recoded on
/// n0-blocks: supports are (F_i + Lambda-ball r) + block, counted per lattice
/// site, and the final value carries the density factor 1/n0^d. The model-set
/// variant samples the nearest integers of the Fibonacci chain.
struct RestrictionSpec {
    std::vector<long long> moduli;  // sublattice moduli (empty => model set)
    std::string model_preset;       // e.g. "fibonacci" (used when moduli empty)
};

EntropyReport lattice_restricted_entropy(const Subshift& s, const RestrictionSpec& restriction,
                                         const std::vector<int>& scales, int i_max,
                                         bool apply_density = true,
                                         std::uint64_t budget = 1ull << 26);

struct PowerRuleReport {
    int n;
    double base_entropy;        // E(s)
    double restricted_entropy;  // E over nZ, unscaled
    double delta;               // |n*base - restricted|
    bool pass;
};

PowerRuleReport power_rule_check(const Subshift& s, int n, int i_max, double tolerance,
                                 const std::vector<int>& scales = {0, 1, 2});

struct ChainReport {
    EntropyReport first;     // E(phi -> psi) via p
    EntropyReport second;    // E(psi -> rho) via q
    EntropyReport composed;  // E(phi -> rho) via q . p
    double slack_lower;      // E(composed) - max(first, second) + bands
    double slack_upper;      // first + second - E(composed) + bands
    bool lower_ok;
    bool upper_ok;
    bool pass;
};

/// max{E(p), E(q)} <= E(q.p) <= E(p) + E(q), within combined bands.
ChainReport bowen_chain_check(const SlidingBlockCode& p, const SlidingBlockCode& q,
                              const VanHoveSequence& seq, const std::vector<int>& scales,
                              int i_max, double corrupt_offset = 0.0);

enum class ProductFKind { Cardinality, Log2Count };

struct ProductExtensionReport {
    Rational infimum;   // in f-units (1 for cardinality, log 2 for the 2-shift)
    Rational expected;  // f(A) * |B| in the same units
    std::string unit;
    std::size_t rectangles_tried = 0;
    bool exhaustive = true;
    bool pass = false;
};

/// Exhaustive minimum of sum f(C_n)|D_n| over rectangle covers of A x B with
/// C inside A padded by `margin` and D inside B.
ProductExtensionReport product_extension_check(ProductFKind f, const FiniteSet& a,
                                               const FiniteSet& b, int margin = 1,
                                               std::size_t budget = 1u << 22);

struct BernoulliReport {
    std::vector<Rational> probabilities;
    double entropy;        // -sum p log p
    double full_shift;     // log k
    bool uniform;
    bool variational_ok;   // entropy <= log k, equality iff uniform
};

BernoulliReport bernoulli_entropy(const std::vector<Rational>& probabilities);

}  // namespace owlet::entropy
