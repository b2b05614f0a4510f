#include "sca/datasets.hpp"

namespace sca::datasets {

const DataMatrix& baseball_data() {
    static const DataMatrix A = [] {
        // rows: games, runs, hits, doubles, triples, home runs, RBI,
        // stolen bases, walks
        const double rows[9][6] = {
            {3562, 3034, 2499, 2730, 2503, 2992},
            {2165, 2246, 1276, 1859, 2174, 2062},
            {4256, 4189, 2356, 2876, 2873, 3283},
            {746, 724, 421, 488, 506, 523},
            {135, 295, 47, 72, 136, 140},
            {160, 117, 376, 511, 714, 660},
            {1314, 1938, 1330, 1860, 2213, 1903},
            {198, 897, 128, 89, 123, 338},
            {1566, 1249, 849, 1708, 2062, 1464},
        };
        DataMatrix M(9, 6);
        for (std::size_t i = 0; i < 9; ++i)
            for (std::size_t j = 0; j < 6; ++j) M.set(i, j, rows[i][j]);
        return M;
    }();
    return A;
}

const std::vector<std::string>& baseball_names() {
    static const std::vector<std::string> names{"Rose", "Cobb", "Fisk", "Ott", "Ruth", "Mays"};
    return names;
}

const ConsensusMatrix& baseball_consensus() {
    static const ConsensusMatrix S = [] {
        const double rows[6][6] = {
            {100, 67, 73, 2, 0, 2},
            {67, 100, 50, 1, 2, 7},
            {73, 50, 100, 15, 9, 24},
            {2, 1, 15, 100, 92, 82},
            {0, 2, 9, 92, 100, 77},
            {2, 7, 24, 82, 77, 100},
        };
        ConsensusMatrix C;
        C.S = SymMatrix(6);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) C.S.set(i, j, rows[i][j]);
        C.r = 100;
        C.kind = ConsensusKind::ensemble_sum;
        return C;
    }();
    return S;
}

}  // namespace sca::datasets
