#include "hcsp/gf2.hpp"

#include <algorithm>
#include <set>

namespace hcsp {

int BitVec::first_set() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i]) {
            int bit = __builtin_ctzll(words_[i]) + static_cast<int>(i << 6);
            return bit < width_ ? bit : -1;
        }
    return -1;
}

Gf2Result gf2_solve(const Gf2System& sys, bool track_certificate) {
    const int w = sys.width;
    const std::size_t m = sys.rows.size();
    std::vector<BitVec> rows = sys.rows;
    std::vector<std::uint8_t> rhs = sys.rhs;
    std::vector<BitVec> hist;
    if (track_certificate) {
        hist.assign(m, BitVec(static_cast<int>(m)));
        for (std::size_t i = 0; i < m; ++i) hist[i].set(static_cast<int>(i));
    }

    std::vector<int> pivot_row_of_col(static_cast<std::size_t>(w), -1);
    std::vector<int> pivot_col_of_row(m, -1);
    std::size_t rank = 0;
    for (std::size_t r = 0; r < m; ++r) {
        // reduce row r by existing pivots
        for (int c = rows[r].first_set(); c >= 0; c = rows[r].first_set()) {
            int pr = pivot_row_of_col[static_cast<std::size_t>(c)];
            if (pr < 0) {
                pivot_row_of_col[static_cast<std::size_t>(c)] = static_cast<int>(r);
                pivot_col_of_row[r] = c;
                ++rank;
                break;
            }
            rows[r].xor_with(rows[static_cast<std::size_t>(pr)]);
            rhs[r] = rhs[r] ^ rhs[static_cast<std::size_t>(pr)];
            if (track_certificate) hist[r].xor_with(hist[static_cast<std::size_t>(pr)]);
        }
        if (!rows[r].any() && rhs[r]) {
            Gf2Result res;
            res.consistent = false;
            if (track_certificate)
                for (std::size_t i = 0; i < m; ++i)
                    if (hist[r].test(static_cast<int>(i)))
                        res.certificate.push_back(static_cast<int>(i));
            return res;
        }
    }

    // back-substitute, free variables zero; process pivots by descending column
    BitVec x(w);
    std::vector<std::pair<int, int>> pivots;  // (col, row)
    for (int c = 0; c < w; ++c)
        if (pivot_row_of_col[static_cast<std::size_t>(c)] >= 0)
            pivots.emplace_back(c, pivot_row_of_col[static_cast<std::size_t>(c)]);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        auto [c, r] = *it;
        bool v = rhs[static_cast<std::size_t>(r)] != 0;
        // subtract known variables right of c
        BitVec masked = rows[static_cast<std::size_t>(r)];
        masked.set(c, false);
        v ^= masked.dot(x);
        x.set(c, v);
    }
    Gf2Result res;
    res.consistent = true;
    res.solution = std::move(x);
    return res;
}

bool verify_solution(const Gf2System& sys, const BitVec& solution) {
    for (std::size_t r = 0; r < sys.rows.size(); ++r)
        if (sys.rows[r].dot(solution) != (sys.rhs[r] != 0)) return false;
    return true;
}

bool verify_certificate(const Gf2System& sys, const std::vector<int>& certificate) {
    if (certificate.empty()) return false;
    BitVec acc(sys.width);
    bool b = false;
    for (int idx : certificate) {
        acc.xor_with(sys.rows[static_cast<std::size_t>(idx)]);
        b ^= sys.rhs[static_cast<std::size_t>(idx)] != 0;
    }
    return !acc.any() && b;
}

AffineHull affine_hull(const std::vector<BitVec>& vectors, int width) {
    if (vectors.empty()) throw InputError("affine_hull: empty input");

    // distinct inputs
    std::vector<BitVec> unique;
    {
        std::set<std::vector<bool>> seen;
        for (const auto& v : vectors) {
            std::vector<bool> key(static_cast<std::size_t>(width));
            for (int i = 0; i < width; ++i) key[static_cast<std::size_t>(i)] = v.test(i);
            if (seen.insert(key).second) unique.push_back(v);
        }
    }
    const BitVec& v0 = unique.front();

    // basis of the difference span
    std::vector<BitVec> basis;  // reduced, distinct leading bits
    std::vector<int> lead;
    for (std::size_t i = 1; i < unique.size(); ++i) {
        BitVec d = unique[i];
        d.xor_with(v0);
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (d.test(lead[b])) d.xor_with(basis[b]);
        if (d.any()) {
            int l = d.first_set();
            basis.push_back(d);
            lead.push_back(l);
        }
    }
    const int dim = static_cast<int>(basis.size());

    AffineHull out;
    out.system.width = width;
    out.exact = dim < 62 && unique.size() == (1ull << dim);

    // orthogonal complement: for each non-lead column, one generator
    // y with y[col]=1 and y[lead_b] chosen so y . basis_b = 0
    std::vector<char> is_lead(static_cast<std::size_t>(width), 0);
    for (int l : lead) is_lead[static_cast<std::size_t>(l)] = 1;
    // bring basis to reduced row echelon form for clean complement rows
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t b2 = 0; b2 < basis.size(); ++b2)
            if (b2 != b && basis[b2].test(lead[b])) basis[b2].xor_with(basis[b]);
    for (int col = 0; col < width; ++col) {
        if (is_lead[static_cast<std::size_t>(col)]) continue;
        BitVec y(width);
        y.set(col);
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (basis[b].test(col)) y.set(lead[b]);
        out.system.add_row(y, y.dot(v0));
    }
    return out;
}

}  // namespace hcsp
