#pragma once

#include <functional>
#include <string>

#include "owlet/code.hpp"
#include "owlet/region.hpp"
#include "owlet/subshift.hpp"

namespace owlet::entropy {

using dynamics::Scale;
using dynamics::SlidingBlockCode;
using dynamics::Subshift;
using groups::CompactRegion;
using groups::GroupDescriptor;

/// Set function f: compact regions -> R with declared structure. The shipped
/// built-ins are log pattern count, log fiber count, dilation volume mu(K.A)
/// and the linear c*mu(A); declared flags are spot-checked on small random
/// inputs when a built-in is constructed.
struct SubadditiveFunction {
    std::string tag = "user";
    GroupDescriptor group;
    bool subadditive = true;
    bool right_invariant = true;
    bool monotone = true;
    std::function<double(const CompactRegion&)> eval;

    static SubadditiveFunction log_pattern_count(Subshift s);
    static SubadditiveFunction log_fiber_cov(SlidingBlockCode code, Scale scale);
    static SubadditiveFunction dilation_volume(CompactRegion k0);
    static SubadditiveFunction linear(const GroupDescriptor& g, const Rational& c);
};

/// Natural log of a positive big integer without overflow.
double log_big(const BigInt& n);

/// Randomized spot check of the declared flags on small finite sets / boxes.
/// Throws std::logic_error on a violation.
void spot_verify(const SubadditiveFunction& f, unsigned seed = 1);

}  // namespace owlet::entropy
