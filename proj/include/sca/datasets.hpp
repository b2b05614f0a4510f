#pragma once

#include <string>
#include <vector>

#include "sca/consensus.hpp"
#include "sca/ensemble.hpp"

namespace sca::datasets {

/// Career totals in nine statistics for six players; columns are players.
const DataMatrix& baseball_data();
const std::vector<std::string>& baseball_names();

/// Reference consensus over the six players from a 100-member ensemble.
const ConsensusMatrix& baseball_consensus();

}  // namespace sca::datasets
