#pragma once

// Shared helpers for 1-d forbidden-word checking along a left-to-right sweep.
// Histories are strings of symbol chars; kOutside marks sites that are not
// part of the padded support (occurrences touching them are not fully visible).

#include <string>
#include <vector>

#include "owlet/subshift.hpp"

namespace owlet::dynamics::detail {

constexpr char kOutside = char(0x7e);

/// 1-d forbidden word normalized to offsets from its rightmost cell.
struct AnchoredWord {
    std::vector<std::pair<int, int>> rel;  // (distance back, required symbol)
    int span = 0;
};

inline std::vector<AnchoredWord> anchor_words(const Subshift& s) {
    std::vector<AnchoredWord> out;
    for (const auto& p : s.forbidden) {
        long long hi = p.cells.front().first[0];
        for (const auto& [site, sym] : p.cells) hi = std::max(hi, site[0]);
        AnchoredWord w;
        for (const auto& [site, sym] : p.cells) {
            int back = static_cast<int>(hi - site[0]);
            w.rel.push_back({back, sym});
            w.span = std::max(w.span, back);
        }
        out.push_back(std::move(w));
    }
    return out;
}

/// True when no forbidden word ends at the last symbol of hist. Cells before
/// the history start or marked outside make an occurrence invisible.
inline bool last_symbol_ok(const std::string& hist, const std::vector<AnchoredWord>& words) {
    int len = static_cast<int>(hist.size());
    for (const auto& w : words) {
        bool visible = true, match = true;
        for (const auto& [back, sym] : w.rel) {
            if (back >= len || hist[len - 1 - back] == kOutside) {
                visible = false;
                break;
            }
            if (hist[len - 1 - back] != char(sym)) {
                match = false;
                break;
            }
        }
        if (visible && match) return false;
    }
    return true;
}

}  // namespace owlet::dynamics::detail
