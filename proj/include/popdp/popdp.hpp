// Copyright 2026 The popdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header: the whole library in one include.

#pragma once

#include "popdp/accounting.hpp"
#include "popdp/agent/checkpoint.hpp"
#include "popdp/agent/config.hpp"
#include "popdp/agent/dqn.hpp"
#include "popdp/agent/mlp.hpp"
#include "popdp/agent/q_function.hpp"
#include "popdp/agent/replay_buffer.hpp"
#include "popdp/cli/config.hpp"
#include "popdp/cli/csv.hpp"
#include "popdp/cli/experiment.hpp"
#include "popdp/cli/generators.hpp"
#include "popdp/cli/graph_io.hpp"
#include "popdp/cli/sweep.hpp"
#include "popdp/cli/verify.hpp"
#include "popdp/dprl/run.hpp"
#include "popdp/dprl/transition.hpp"
#include "popdp/error.hpp"
#include "popdp/histogram.hpp"
#include "popdp/mech/grid.hpp"
#include "popdp/mech/laplace.hpp"
#include "popdp/mech/projected_laplace.hpp"
#include "popdp/mech/simplex.hpp"
#include "popdp/oracle/attack.hpp"
#include "popdp/oracle/enumerate.hpp"
#include "popdp/oracle/finite_mdp.hpp"
#include "popdp/oracle/fixtures.hpp"
#include "popdp/oracle/induced.hpp"
#include "popdp/oracle/lemma.hpp"
#include "popdp/oracle/markov.hpp"
#include "popdp/oracle/mechanism_matrix.hpp"
#include "popdp/oracle/pufferfish.hpp"
#include "popdp/oracle/report.hpp"
#include "popdp/oracle/tail.hpp"
#include "popdp/oracle/trajectory.hpp"
#include "popdp/oracle/trend.hpp"
#include "popdp/popproc/env.hpp"
#include "popdp/popproc/graph.hpp"
#include "popdp/popproc/sampling.hpp"
#include "popdp/popproc/seirs.hpp"
#include "popdp/random.hpp"
