#pragma once

#include "spm/types.hpp"
#include "spm/core.hpp"
#include "spm/preprocess.hpp"
#include "spm/tabular_miner.hpp"
#include "spm/trie_common.hpp"
#include "spm/sdtrie.hpp"
#include "spm/bdtrie.hpp"
#include "spm/trie_miner.hpp"
#include "spm/stats.hpp"
#include "spm/spmf_io.hpp"
#include "spm/synthetic.hpp"
#include "spm/runner.hpp"
