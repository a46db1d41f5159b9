#pragma once

#include "cycode/interval.hpp"
#include "cycode/numberfield.hpp"

namespace cycode {

// Complex embedding of a tower determined by the pinned root of each level.
// Root boxes are refined on demand by verified complex interval Newton steps;
// every enclosure produced here is rigorous (exact rational endpoints).
//
// Not thread safe: refinement mutates cached state. Use one engine per thread
// or embed after parallel phases have joined.
class Embedding {
public:
    explicit Embedding(TowerPtr tower, unsigned ceiling_bits = 1u << 14);

    // Enclosure of the image of x with radius <= 10^-digits (both parts).
    // Throws MathError if the precision ceiling is insufficient.
    ComplexInterval embed(const FieldElement& x, unsigned digits);

    // Enclosure at whatever precision the cached roots currently have.
    ComplexInterval embed_current(const FieldElement& x) const;

    // Enclosure of the root of level l, refined so both parts have radius
    // <= 2^-bits.
    ComplexInterval root_box(size_t level, unsigned bits);

    unsigned ceiling_bits() const { return ceiling_bits_; }

private:
    struct RootState {
        ComplexInterval box;
        unsigned bits = 0;
        bool verified = false;
    };

    void refine_level(size_t l, unsigned bits);
    ComplexInterval embed_raw(size_t levels, const Rat* coords, size_t len) const;

    TowerPtr tower_;
    std::vector<RootState> roots_;
    unsigned ceiling_bits_;
};

}  // namespace cycode
