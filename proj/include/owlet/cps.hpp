#pragma once

#include <string>
#include <vector>

#include "owlet/quadratic.hpp"
#include "owlet/region.hpp"
#include "owlet/vanhove.hpp"

namespace owlet::cps {

using groups::CompactRegion;
using groups::GroupDescriptor;

enum class SchemeKind { TrivialZ, Fibonacci, Padic };

/// Cut-and-project description for the shipped one-dimensional schemes:
///   trivial-z           Z = {(n, e)} in R x {e}, window {e}
///   fibonacci           span{(1,1), (tau, 1-tau)} in R x R, window (-1, tau-1]
///   padic:<p>:<R>:<k>   {(x,x): x in Z[1/p]} in Q_p x R, window [-R, R],
///                       truncated at valuation depth k
struct ModelSetDesc {
    SchemeKind kind = SchemeKind::TrivialZ;
    long long p = 2;
    Rational window_radius = 1;  // padic window [-R, R]
    int depth = 3;               // padic valuation truncation
    std::string name = "trivial-z";

    static ModelSetDesc parse(const std::string& preset);

    GroupDescriptor physical_group() const;
    /// Lattice covolume in G x H.
    Quad5 covolume() const;
    /// Window Haar measure.
    Quad5 window_measure() const;
    /// Expected density of the model set: window measure / covolume.
    Quad5 density_oracle() const;
};

/// Exact physical points of the model set inside [lo, hi] (trivial-z and
/// fibonacci; also padic, whose physical points are the rationals of the
/// truncation). Sorted ascending.
std::vector<Quad5> enumerate_model_set(const ModelSetDesc& ms, const Rational& lo,
                                       const Rational& hi);

/// Padic physical query by ball: points of the model set in p^{-n} Z_p.
std::vector<Rational> enumerate_padic_points(const ModelSetDesc& ms, int ball_radius_exp);

/// Empirical denseness of the projected lattice in the window: the largest
/// gap left by the star images of the enumerated patch (coefficient sweep of
/// the given size). Small gap certifies the CPS axiom at truncation scale.
double internal_fill_gap(const ModelSetDesc& ms, long long sweep);

struct DensityRow {
    int index;
    BigInt count;
    Rational measure;
    Rational ratio;
};

struct DensityTrace {
    std::vector<DensityRow> rows;
    double tail = 0;  // mean of the last window
    double band = 0;  // half-width (max-min)/2 of the last window
};

/// |omega intersect A_i| / mu(A_i) along the scheme's canonical Van Hove
/// sequence (boxes [-i, i] for real physical groups, balls p^{-i} Z_p capped
/// at the truncation depth for the p-adic scheme).
DensityTrace uniform_density(const ModelSetDesc& ms, int i_max, int tail_window = 5);

/// Density of the sublattice n1 Z x ... x nd Z in Z^d over cube sequences.
DensityTrace sublattice_density(const std::vector<long long>& moduli, int i_max,
                                int tail_window = 5);

struct MeyerReport {
    bool conclusive = false;
    std::string status;  // "ok" or the reason the check is inconclusive
    bool relatively_dense = false;
    Rational dense_witness_radius;  // K = [-r, r] covering the query
    bool meyer_difference = false;
    std::vector<Quad5> difference_witness;  // finite F with (omega - omega) in F + omega
};

/// Checks relative density and the Meyer difference property of the patch on
/// the query interval. The patch must extend far enough beyond the query that
/// both verdicts are boundary-safe; otherwise status reports "inconclusive".
MeyerReport meyer_check(const std::vector<Quad5>& patch, const Rational& patch_lo,
                        const Rational& patch_hi, const Rational& query_lo,
                        const Rational& query_hi, const Rational& k_bound,
                        const Rational& f_bound);

struct FundamentalDomain {
    std::string lattice;
    GroupDescriptor ambient;
    CompactRegion closure;  // closure of the tile C (used in transfer formulas)
    Rational covolume;      // mu(C); dens = 1 / covolume
};

FundamentalDomain fundamental_domain_zd(int d, const Rational& scale);    // scale*Z^d in R^d
FundamentalDomain fundamental_domain_nzd(std::vector<long long> moduli);  // in Z^d
FundamentalDomain fundamental_domain_heis();                              // H3(Z) in itself

/// Preset syntax: zd:<d>[:<scale>] | nzd:<n1,...,nd> | heis
FundamentalDomain parse_fundamental_domain(const std::string& preset);

}  // namespace owlet::cps
