#pragma once

#include <optional>

#include "owlet/cps.hpp"
#include "owlet/subadditive.hpp"
#include "owlet/vanhove.hpp"

namespace owlet::entropy {

using groups::FiniteSet;
using groups::VanHoveSequence;

struct OWRow {
    int index;
    double f_value;    // f(A_i)
    double measure;    // normalizer, mu(A_i) by default
    double ratio;      // f_value / measure
};

/// Normalized-limit estimate. The tail is the difference quotient
/// (f(A_k) - f(A_j)) / (mu(A_k) - mu(A_j)) across the last window (a discrete
/// Stolz-Cesaro derivative, which strips the O(1/mu) offset of the plain
/// ratio); when the normalizer does not grow it falls back to the window mean
/// of ratios. The band is the largest deviation of the window ratios from the
/// tail, so the tail always sits inside the band of the final entries.
struct OWEstimate {
    std::vector<OWRow> trace;
    double tail = 0;
    double band = 0;
    int tail_window = 5;
};

/// Assembles an estimate from raw (f, normalizer) values, index order.
OWEstimate make_estimate(std::vector<OWRow> rows, int tail_window = 5);

/// f(A_i)/mu(A_i) along the sequence. The optional normalizer replaces the
/// Haar measure in the denominator.
OWEstimate ow_limit(const SubadditiveFunction& f, const VanHoveSequence& seq, int i_max,
                    const std::function<double(const groups::CompactRegion&)>& normalizer = {});

struct CrossCheckReport {
    OWEstimate first;
    OWEstimate second;
    double delta = 0;
    double tolerance = 0;
    bool pass = false;
};

/// Net-independence check: the two sequences must give the same limit.
CrossCheckReport ow_crosscheck(const SubadditiveFunction& f, const VanHoveSequence& seq_a,
                               const VanHoveSequence& seq_b, int i_max, double tolerance);

/// f on the closed tile times a lattice patch: f(closure(C) . F).
double lattice_transfer_value(const SubadditiveFunction& f, const cps::FundamentalDomain& fd,
                              const FiniteSet& patch);

struct TransferReport {
    OWEstimate lattice_side;  // f(cl(C) F_j) / |F_j|
    OWEstimate group_side;    // f(A_i) / mu(A_i)
    double covolume = 1;
    double delta = 0;  // |lattice tail - covolume * group tail|
    bool pass = false;
};

/// Verifies lim f(cl(C) F_j)/|F_j| = mu(C) * lim f(A_i)/mu(A_i) for the
/// canonical patches F_j of the preset lattice against the given sequence.
TransferReport lattice_transfer_check(const SubadditiveFunction& f,
                                      const cps::FundamentalDomain& fd,
                                      const VanHoveSequence& seq, int i_max, double tolerance);

}  // namespace owlet::entropy
