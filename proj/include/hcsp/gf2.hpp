#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcsp/base.hpp"

namespace hcsp {

/// Dense bit vector used for GF(2) rows and assignments.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int width) : width_(width), words_((width + 63) / 64, 0) {}

    int width() const { return width_; }
    bool test(int i) const { return (words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1; }
    void set(int i, bool v = true) {
        auto& w = words_[static_cast<std::size_t>(i >> 6)];
        if (v) w |= 1ull << (i & 63);
        else w &= ~(1ull << (i & 63));
    }
    void flip(int i) { words_[static_cast<std::size_t>(i >> 6)] ^= 1ull << (i & 63); }
    void xor_with(const BitVec& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    }
    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    int first_set() const;  // -1 when zero
    bool dot(const BitVec& o) const {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
        return __builtin_parityll(acc);
    }

    friend bool operator==(const BitVec&, const BitVec&) = default;

private:
    int width_ = 0;
    std::vector<std::uint64_t> words_;
};

/// System of linear equations over GF(2): row . x = rhs per row.
struct Gf2System {
    int width = 0;
    std::vector<BitVec> rows;
    std::vector<std::uint8_t> rhs;

    void add_row(BitVec row, bool b) {
        rows.push_back(std::move(row));
        rhs.push_back(b ? 1 : 0);
    }
};

struct Gf2Result {
    bool consistent = false;
    BitVec solution;                   // one solution when consistent (free vars zero)
    std::vector<int> certificate;      // row indices summing to 0 = 1 otherwise
};

/// Gaussian elimination. When `track_certificate` is set, an inconsistent
/// outcome carries the original-row combination witnessing 0 = 1.
Gf2Result gf2_solve(const Gf2System& sys, bool track_certificate = true);

bool verify_solution(const Gf2System& sys, const BitVec& solution);
bool verify_certificate(const Gf2System& sys, const std::vector<int>& certificate);

struct AffineHull {
    Gf2System system;  // solution set = affine hull of the inputs
    bool exact = false;  // hull size equals the number of distinct inputs
};

/// Affine hull of nonempty `vectors` (each of width `width`): translate by
/// the first vector, complement the span of differences.
AffineHull affine_hull(const std::vector<BitVec>& vectors, int width);

}  // namespace hcsp
