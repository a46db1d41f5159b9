#include "cycode/embedding.hpp"

#include <algorithm>

namespace cycode {

namespace {

ComplexInterval scale_rat(const ComplexInterval& z, const Rat& q) {
    RatInterval f = RatInterval::point(q);
    return {z.re * f, z.im * f};
}

// Horner evaluation; coefficients ascending.
ComplexInterval horner(const std::vector<ComplexInterval>& coeffs, const ComplexInterval& at) {
    ComplexInterval acc = coeffs.back();
    for (size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * at + coeffs[i];
    return acc;
}

Rat two_pow_neg(unsigned bits) { return Rat(1, Int(1) << bits); }

}  // namespace

Embedding::Embedding(TowerPtr tower, unsigned ceiling_bits)
    : tower_(std::move(tower)), ceiling_bits_(ceiling_bits) {
    for (size_t l = 0; l < tower_->level_count(); ++l) {
        const LevelSpec& lv = tower_->level(l);
        RootState st;
        st.box = {RatInterval{lv.root_re - lv.root_radius, lv.root_re + lv.root_radius},
                  RatInterval{lv.root_im - lv.root_radius, lv.root_im + lv.root_radius}};
        roots_.push_back(std::move(st));
    }
}

ComplexInterval Embedding::embed_raw(size_t levels, const Rat* coords, size_t len) const {
    // power tables of the current root boxes
    std::vector<std::vector<ComplexInterval>> pw(levels);
    for (size_t l = 0; l < levels; ++l) {
        pw[l].push_back(ComplexInterval::point(Rat(1), Rat(0)));
        for (size_t e = 1; e < tower_->level_degree(l); ++e)
            pw[l].push_back(pw[l][e - 1] * roots_[l].box);
    }
    ComplexInterval acc = ComplexInterval::point(Rat(0), Rat(0));
    for (size_t idx = 0; idx < len; ++idx) {
        if (coords[idx] == 0) continue;
        ComplexInterval term = ComplexInterval::point(Rat(1), Rat(0));
        for (size_t l = 0; l < levels; ++l) {
            size_t e = tower_->exponent_at(idx, l);
            if (e) term = term * pw[l][e];
        }
        acc = acc + scale_rat(term, coords[idx]);
    }
    return acc;
}

ComplexInterval Embedding::embed_current(const FieldElement& x) const {
    if (x.tower() != tower_) throw MathError("element lives in a different tower");
    return embed_raw(tower_->level_count(), x.coords().data(), x.coords().size());
}

void Embedding::refine_level(size_t l, unsigned bits) {
    RootState& st = roots_[l];
    if (st.bits >= bits && st.verified) return;
    if (bits > ceiling_bits_)
        throw MathError("precision ceiling reached while refining root enclosure of '" +
                        tower_->level(l).name + "'");

    const auto& mp = tower_->level(l).minpoly;
    const size_t d = mp.size();
    const Rat target = two_pow_neg(bits);
    unsigned low_bits = bits + 32;

    for (int outer = 0; outer < 8; ++outer) {
        for (size_t j = 0; j < l; ++j) refine_level(j, low_bits);

        // coefficient enclosures of the minimal polynomial and its derivative
        std::vector<ComplexInterval> fc;
        for (size_t t = 0; t < d; ++t) fc.push_back(embed_raw(l, mp[t].data(), mp[t].size()));
        fc.push_back(ComplexInterval::point(Rat(1), Rat(0)));
        std::vector<ComplexInterval> dc;
        for (size_t t = 1; t <= d; ++t) dc.push_back(scale_rat(fc[t], Rat(static_cast<long>(t))));

        ComplexInterval box = st.box;
        bool stalled = false;
        Rat prev_rad = box.max_rad();
        for (int it = 0; it < 256; ++it) {
            if (box.max_rad() <= target && st.verified) {
                st.box = box;
                st.bits = bits;
                return;
            }
            ComplexInterval m = ComplexInterval::point(box.re.mid(), box.im.mid());
            ComplexInterval fm = horner(fc, m);
            ComplexInterval fpX = horner(dc, box);
            if (fpX.abs2().contains_zero()) {
                stalled = true;
                break;
            }
            ComplexInterval N = m - fm / fpX;
            if (N.strictly_inside(box)) st.verified = true;
            ComplexInterval next;
            try {
                next = {RatInterval::intersect(N.re, box.re), RatInterval::intersect(N.im, box.im)};
            } catch (const MathError&) {
                throw ConfigError("pinned root box of '" + tower_->level(l).name +
                                  "' contains no root of its minimal polynomial");
            }
            box = next.coarsened(bits + 48);
            Rat rad = box.max_rad();
            if (rad > target && rad * 4 > prev_rad * 3) {
                // convergence limited by coefficient width; raise lower precision
                stalled = true;
                break;
            }
            prev_rad = rad;
        }
        if (!stalled && box.max_rad() <= target && st.verified) {
            st.box = box;
            st.bits = bits;
            return;
        }
        st.box = box;  // keep progress
        if (low_bits > ceiling_bits_)
            throw MathError("precision ceiling reached while refining root enclosure of '" +
                            tower_->level(l).name + "'");
        low_bits *= 2;
    }
    throw MathError("unable to refine root enclosure of '" + tower_->level(l).name +
                    "'; check the pinned root in the tower configuration");
}

ComplexInterval Embedding::root_box(size_t level, unsigned bits) {
    if (level >= tower_->level_count()) throw MathError("level index out of range");
    refine_level(level, bits);
    return roots_[level].box;
}

ComplexInterval Embedding::embed(const FieldElement& x, unsigned digits) {
    if (x.tower() != tower_) throw MathError("element lives in a different tower");
    Rat target = 1;
    for (unsigned i = 0; i < digits; ++i) target /= 10;
    unsigned need = (digits * 10) / 3 + 16;
    for (;;) {
        for (size_t l = 0; l < tower_->level_count(); ++l) refine_level(l, need);
        ComplexInterval z = embed_current(x);
        if (z.max_rad() <= target) return z;
        if (need > ceiling_bits_)
            throw MathError("precision ceiling reached; enclosure radius still above target");
        need *= 2;
    }
}

}  // namespace cycode
