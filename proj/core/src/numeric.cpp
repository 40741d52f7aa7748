#include "indopt/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace indopt::num {

int matrix_rank(Mat a, double tol) {
    if (a.empty() || a[0].empty()) return 0;
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(a[0].size());
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int piv = rank;
        for (int i = rank + 1; i < m; ++i)
            if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
        if (std::abs(a[piv][col]) <= tol) continue;
        std::swap(a[piv], a[rank]);
        for (int i = rank + 1; i < m; ++i) {
            const double factor = a[i][col] / a[rank][col];
            for (int j = col; j < n; ++j) a[i][j] -= factor * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace indopt::num
