#include "hcsp/type_matrix.hpp"

#include <algorithm>

namespace hcsp {

char pair_value_char(PairValue v) {
    switch (v) {
        case PairValue::E: return 'E';
        case PairValue::N: return 'N';
        case PairValue::Equal: return '=';
    }
    return '?';
}

std::optional<PairValue> pair_value_from_char(char c) {
    switch (c) {
        case 'E': return PairValue::E;
        case 'N': return PairValue::N;
        case '=': return PairValue::Equal;
        default: return std::nullopt;
    }
}

TypeMatrix::TypeMatrix(int arity, PairValue fill) : arity_(arity) {
    if (arity < 1) throw InputError("type matrix arity must be >= 1");
    cells_.assign(static_cast<std::size_t>(arity) * (arity - 1) / 2, fill);
}

int TypeMatrix::pair_index(int i, int j, int arity) {
    if (i > j) std::swap(i, j);
    // row-major upper triangle: rows 0..arity-2, row i starts after
    // (arity-1) + (arity-2) + ... + (arity-i) cells
    return i * (2 * arity - i - 1) / 2 + (j - i - 1);
}

PairValue TypeMatrix::at(int i, int j) const {
    if (i == j) return PairValue::Equal;
    return cells_[static_cast<std::size_t>(pair_index(i, j, arity_))];
}

void TypeMatrix::set(int i, int j, PairValue v) {
    if (i == j) {
        if (v != PairValue::Equal) throw InternalError("diagonal entries are Equal");
        return;
    }
    cells_[static_cast<std::size_t>(pair_index(i, j, arity_))] = v;
}

std::string TypeMatrix::cells_string() const {
    std::string out;
    out.reserve(cells_.size());
    for (PairValue v : cells_) out.push_back(pair_value_char(v));
    return out;
}

std::optional<TypeMatrix> TypeMatrix::from_cells_string(int arity, const std::string& cells) {
    if (arity < 1) return std::nullopt;
    TypeMatrix m(arity);
    if (cells.size() != static_cast<std::size_t>(m.pair_count())) return std::nullopt;
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
        auto v = pair_value_from_char(cells[idx]);
        if (!v) return std::nullopt;
        m.cells_[idx] = *v;
    }
    return m;
}

std::uint64_t TypeMatrix::code() const {
    std::uint64_t c = 0;
    for (PairValue v : cells_) c = c * 3 + static_cast<std::uint64_t>(v);
    return c;
}

TypeMatrix TypeMatrix::permuted(const std::vector<int>& perm) const {
    TypeMatrix out(arity_);
    for (int i = 0; i < arity_; ++i)
        for (int j = i + 1; j < arity_; ++j) out.set(perm[i], perm[j], at(i, j));
    return out;
}

TypeMatrix TypeMatrix::induced(const std::vector<int>& indices) const {
    TypeMatrix out(static_cast<int>(indices.size()));
    for (std::size_t a = 0; a < indices.size(); ++a)
        for (std::size_t b = a + 1; b < indices.size(); ++b) {
            PairValue v = indices[a] == indices[b] ? PairValue::Equal : at(indices[a], indices[b]);
            out.set(static_cast<int>(a), static_cast<int>(b), v);
        }
    return out;
}

namespace {

// Union-find over tuple indices, small and local.
struct Uf {
    std::vector<int> parent;
    explicit Uf(int k) : parent(k) {
        for (int i = 0; i < k; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void join(int a, int b) { parent[find(a)] = find(b); }
};

bool has_clique(const std::vector<std::vector<int>>& adj, int target) {
    const int k = static_cast<int>(adj.size());
    if (target <= 1) return k >= target;
    std::vector<int> stack;
    // Extend cliques by vertices of larger index only.
    std::vector<std::vector<int>> cand_stack;
    for (int v = 0; v < k; ++v) {
        stack.assign(1, v);
        std::vector<int> cand;
        for (int u : adj[v])
            if (u > v) cand.push_back(u);
        cand_stack.assign(1, cand);
        // depth-first extension
        struct Frame {
            std::vector<int> cand;
            std::size_t next = 0;
        };
        std::vector<Frame> frames{{cand, 0}};
        while (!frames.empty()) {
            if (static_cast<int>(stack.size()) == target) return true;
            Frame& f = frames.back();
            if (f.next >= f.cand.size() ||
                static_cast<int>(stack.size() + (f.cand.size() - f.next)) < target) {
                frames.pop_back();
                stack.pop_back();
                continue;
            }
            int u = f.cand[f.next++];
            std::vector<int> nc;
            for (std::size_t idx = f.next; idx < f.cand.size(); ++idx) {
                int w = f.cand[idx];
                if (std::find(adj[u].begin(), adj[u].end(), w) != adj[u].end()) nc.push_back(w);
            }
            stack.push_back(u);
            frames.push_back({std::move(nc), 0});
        }
        stack.clear();
    }
    return false;
}

}  // namespace

Validity validate_type(const TypeMatrix& m, const BaseStructure& base) {
    const int k = m.arity();

    // Equal is a congruence: indices in one Equal class carry identical rows.
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (m.at(i, j) != PairValue::Equal) continue;
            for (int l = 0; l < k; ++l) {
                if (l == i || l == j) continue;
                if (m.at(i, l) != m.at(j, l))
                    return Validity::invalid("congruence: indices " + std::to_string(i + 1) + "," +
                                             std::to_string(j + 1) + " are Equal but differ at " +
                                             std::to_string(l + 1));
            }
        }

    if (base.is_henson()) {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (m.at(i, j) == PairValue::E) {
                    adj[i].push_back(j);
                    adj[j].push_back(i);
                }
        if (has_clique(adj, base.n))
            return Validity::invalid("clique: contains K_" + std::to_string(base.n));
        return Validity::valid();
    }

    if (base.is_equality()) {
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (m.at(i, j) == PairValue::E)
                    return Validity::invalid("edge: E entries are not allowed over the equality base");
        return Validity::valid();
    }

    // equiv(n,s): blocks are Eq-components (Eq = E or Equal).
    Uf blocks(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (m.at(i, j) != PairValue::N) blocks.join(i, j);

    if (!is_omega(base.s)) {
        // Count Equal classes inside each block.
        Uf eqcls(k);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (m.at(i, j) == PairValue::Equal) eqcls.join(i, j);
        std::vector<int> count(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < k; ++i)
            if (eqcls.find(i) == i) count[static_cast<std::size_t>(blocks.find(i))]++;
        for (int b = 0; b < k; ++b)
            if (count[static_cast<std::size_t>(b)] > base.s)
                return Validity::invalid("class-size: Eq-block with " +
                                         std::to_string(count[static_cast<std::size_t>(b)]) +
                                         " distinct members exceeds class size " +
                                         std::to_string(base.s));
    }

    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (m.at(i, j) == PairValue::N && blocks.find(i) == blocks.find(j))
                return Validity::invalid("transitivity: indices " + std::to_string(i + 1) + "," +
                                         std::to_string(j + 1) +
                                         " are Eq-connected but carry N");

    if (!is_omega(base.n)) {
        int nblocks = 0;
        for (int i = 0; i < k; ++i)
            if (blocks.find(i) == i) nblocks++;
        if (nblocks > base.n)
            return Validity::invalid("class-count: " + std::to_string(nblocks) +
                                     " Eq-blocks exceed class count " + std::to_string(base.n));
    }
    return Validity::valid();
}

TypeMatrix skeleton(const TypeMatrix& m) {
    TypeMatrix out(m.arity());
    for (int idx = 0; idx < m.pair_count(); ++idx)
        out.set_cell(idx, m.cell(idx) == PairValue::Equal ? PairValue::Equal : PairValue::N);
    return out;
}

}  // namespace hcsp
