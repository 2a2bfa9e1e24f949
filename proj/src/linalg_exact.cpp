#include "polycomm/linalg_exact.hpp"

namespace polycomm {

namespace {

// Forward elimination; returns pivot (row, col) pairs. Pivot rows are scaled
// to a leading 1 and used to clear entries below only.
std::vector<std::pair<int, int>> eliminate(MatQ& m) {
    std::vector<std::pair<int, int>> pivots;
    if (m.empty()) return pivots;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[r], m[sel]);
        Rat inv = m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] /= inv;
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (int j = c; j < cols; ++j)
                if (m[r][j] != 0) m[i][j] -= f * m[r][j];
        }
        pivots.emplace_back(r, c);
        ++r;
    }
    return pivots;
}

}  // namespace

int rank_q(MatQ m) { return static_cast<int>(eliminate(m).size()); }

std::vector<int> rref_q(MatQ& m) {
    auto pivots = eliminate(m);
    // Back substitution.
    for (int k = static_cast<int>(pivots.size()) - 1; k >= 0; --k) {
        auto [r, c] = pivots[k];
        for (int i = 0; i < r; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c];
            int cols = static_cast<int>(m[i].size());
            for (int j = c; j < cols; ++j)
                if (m[r][j] != 0) m[i][j] -= f * m[r][j];
        }
    }
    m.resize(pivots.size());
    std::vector<int> cols;
    cols.reserve(pivots.size());
    for (auto& [r, c] : pivots) cols.push_back(c);
    return cols;
}

MatQ kernel_basis(const MatQ& m, int cols) {
    MatQ red = m;
    for (auto& row : red) row.resize(cols, Rat(0));
    std::vector<int> piv = rref_q(red);
    std::vector<bool> is_pivot(cols, false);
    for (int c : piv) is_pivot[c] = true;
    MatQ basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        VecQ v(cols, Rat(0));
        v[c] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -red[k][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<VecQ> solve_particular(const MatQ& m, const VecQ& rhs) {
    if (m.empty()) return VecQ{};
    int cols = static_cast<int>(m[0].size());
    MatQ aug = m;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
    std::vector<int> piv = rref_q(aug);
    VecQ x(cols, Rat(0));
    for (std::size_t k = 0; k < piv.size(); ++k) {
        if (piv[k] == cols) return std::nullopt;  // row 0 = 1
        x[piv[k]] = aug[k][cols];
    }
    return x;
}

}  // namespace polycomm
