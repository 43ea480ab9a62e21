#include "gridtrees/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace gridtrees {

void IntegerMatrix::swap_rows(int i, int j) {
    for (int k = 0; k < n_; ++k) {
        std::swap(at(i, k), at(j, k));
    }
}

IntegerMatrix laplacian_minor(const GridGraph& graph, int root) {
    const int n = graph.size();
    if (n < 2) throw std::invalid_argument("laplacian_minor: need at least two vertices");
    if (root < 0 || root >= n) throw std::invalid_argument("laplacian_minor: root out of range");

    // map vertex -> row of the minor, skipping the root
    std::vector<int> row(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (v != root) row[v] = next++;
    }

    IntegerMatrix m(n - 1);
    for (int v = 0; v < n; ++v) {
        if (v == root) continue;
        m.at(row[v], row[v]) = graph.degree[v];
        for (int i = 0; i < graph.degree[v]; ++i) {
            int u = graph.adj[v][i];
            if (u != root) m.at(row[v], row[u]) = -1;
        }
    }
    return m;
}

mpz_class bareiss_determinant(IntegerMatrix m) {
    const int n = m.size();
    if (n == 0) return 1;

    mpz_class prev(1);
    mpz_class t1, t2;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int pivot_row = -1;
            for (int i = k + 1; i < n; ++i) {
                if (m.at(i, k) != 0) {
                    pivot_row = i;
                    break;
                }
            }
            if (pivot_row < 0) return 0;
            m.swap_rows(k, pivot_row);
            sign = -sign;
        }
        const mpz_class& pivot = m.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                // m[i][j] = (m[i][j]*pivot - m[i][k]*m[k][j]) / prev, division exact
                t1 = m.at(i, j) * pivot;
                t2 = m.at(i, k) * m.at(k, j);
                t1 -= t2;
                mpz_divexact(m.at(i, j).get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
            }
            m.at(i, k) = 0;
        }
        prev = pivot;
    }
    mpz_class det = m.at(n - 1, n - 1);
    if (sign < 0) det = -det;
    return det;
}

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t p) {
    uint64_t result = 1;
    base %= p;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, p);
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    return result;
}

// det(m) mod p by standard elimination with modular inverses
uint64_t det_mod(const IntegerMatrix& m, uint64_t p) {
    const int n = m.size();
    std::vector<uint64_t> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a[static_cast<size_t>(i) * n + j] =
                mpz_fdiv_ui(m.at(i, j).get_mpz_t(), p);  // already in [0, p)
        }
    }
    auto at = [&a, n](int i, int j) -> uint64_t& { return a[static_cast<size_t>(i) * n + j]; };

    uint64_t det = 1;
    for (int k = 0; k < n; ++k) {
        int pivot_row = -1;
        for (int i = k; i < n; ++i) {
            if (at(i, k) != 0) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row < 0) return 0;
        if (pivot_row != k) {
            for (int j = k; j < n; ++j) std::swap(at(k, j), at(pivot_row, j));
            det = p - det;
            if (det == p) det = 0;
        }
        uint64_t pivot = at(k, k);
        det = mulmod(det, pivot, p);
        uint64_t inv = powmod(pivot, p - 2, p);
        for (int i = k + 1; i < n; ++i) {
            if (at(i, k) == 0) continue;
            uint64_t factor = mulmod(at(i, k), inv, p);
            for (int j = k; j < n; ++j) {
                uint64_t sub = mulmod(factor, at(k, j), p);
                uint64_t& cell = at(i, j);
                cell = cell >= sub ? cell - sub : cell + p - sub;
            }
        }
    }
    return det;
}

// Deterministic ascending list of primes starting just above 2^62.
std::vector<uint64_t> crt_primes(size_t count) {
    static std::mutex mutex;
    static std::vector<uint64_t> primes;
    static mpz_class cursor = mpz_class(1) << 62;
    std::lock_guard<std::mutex> lock(mutex);
    while (primes.size() < count) {
        mpz_class next;
        mpz_nextprime(next.get_mpz_t(), cursor.get_mpz_t());
        cursor = next;
        primes.push_back(next.get_ui());
    }
    return {primes.begin(), primes.begin() + static_cast<long>(count)};
}

}  // namespace

mpz_class crt_determinant(const IntegerMatrix& m) {
    const int n = m.size();
    if (n == 0) return 1;

    // Hadamard bound: |det|^2 <= prod of row norm squares
    mpz_class norm_product(1);
    for (int i = 0; i < n; ++i) {
        mpz_class row_norm2(0);
        for (int j = 0; j < n; ++j) row_norm2 += m.at(i, j) * m.at(i, j);
        if (row_norm2 == 0) return 0;
        norm_product *= row_norm2;
    }
    mpz_class bound = sqrt(norm_product) + 1;
    mpz_class needed = 2 * bound + 1;

    size_t prime_count = 0;
    {
        mpz_class prod(1);
        while (prod < needed) {
            ++prime_count;
            prod *= mpz_class(crt_primes(prime_count).back());
        }
    }
    const std::vector<uint64_t> primes = crt_primes(prime_count);

    // Garner-style incremental combination
    mpz_class value(0), modulus(1);
    for (size_t idx = 0; idx < prime_count; ++idx) {
        uint64_t p = primes[idx];
        uint64_t residue = det_mod(m, p);
        uint64_t value_mod_p = mpz_fdiv_ui(value.get_mpz_t(), p);
        uint64_t modulus_mod_p = mpz_fdiv_ui(modulus.get_mpz_t(), p);
        uint64_t delta = residue >= value_mod_p ? residue - value_mod_p : residue + p - value_mod_p;
        uint64_t step = mulmod(delta, powmod(modulus_mod_p, p - 2, p), p);
        value += modulus * mpz_class(step);
        modulus *= mpz_class(p);
    }
    // symmetric lift
    if (value * 2 > modulus) value -= modulus;
    return value;
}

TreeCount tree_count_exact(const GridGraph& graph, DetBackend backend) {
    if (graph.size() == 0) return 0;
    if (graph.size() == 1) return 1;
    if (!is_connected(graph)) return 0;
    IntegerMatrix minor = laplacian_minor(graph, 0);
    if (backend == DetBackend::modular_crt) return crt_determinant(minor);
    return bareiss_determinant(std::move(minor));
}

TreeCount tree_count_exact(const CellSet& cells, DetBackend backend) {
    return tree_count_exact(induced_graph(cells), backend);
}

TreeCount tree_count_exact(const RectShape& shape, DetBackend backend) {
    return tree_count_exact(induced_graph(rect_cells(shape)), backend);
}

namespace {

struct Dsu {
    std::vector<int> parent;

    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

TreeCount tree_count_bruteforce(const GridGraph& graph) {
    const int n = graph.size();
    if (n == 1) return 1;

    std::vector<std::pair<int, int>> edge_list;
    for (int u = 0; u < n; ++u) {
        for (int i = 0; i < graph.degree[u]; ++i) {
            int v = graph.adj[u][i];
            if (u < v) edge_list.emplace_back(u, v);
        }
    }
    const int e = static_cast<int>(edge_list.size());
    if (e > kBruteForceEdgeLimit) {
        throw std::invalid_argument("tree_count_bruteforce: edge count exceeds limit");
    }
    const int k = n - 1;
    if (e < k) return 0;

    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    TreeCount count = 0;
    while (true) {
        Dsu dsu(n);
        bool acyclic = true;
        for (int idx : pick) {
            if (!dsu.unite(edge_list[idx].first, edge_list[idx].second)) {
                acyclic = false;
                break;
            }
        }
        if (acyclic) ++count;  // k merges over n vertices leave one component

        // next k-combination of {0..e-1}
        int i = k - 1;
        while (i >= 0 && pick[i] == e - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return count;
}

}  // namespace gridtrees
