// Copyright 2026 The specshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header.

#ifndef SPECSHARE_SPECSHARE_HPP_
#define SPECSHARE_SPECSHARE_HPP_

#include "specshare/domain.hpp"
#include "specshare/energy_lp.hpp"
#include "specshare/full_coop.hpp"
#include "specshare/intra_solver.hpp"
#include "specshare/partial_coop.hpp"
#include "specshare/sim/cli.hpp"
#include "specshare/sim/config.hpp"
#include "specshare/sim/csv.hpp"
#include "specshare/sim/simulate.hpp"
#include "specshare/sim/trace.hpp"
#include "specshare/special_fn.hpp"

#endif  // SPECSHARE_SPECSHARE_HPP_
