// Copyright 2026 The randlind Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// randlind.hpp: umbrella header.

#pragma once

#include "core.hpp"
#include "ensembles.hpp"
#include "hermitian_rep.hpp"
#include "lapack.hpp"
#include "liouvillian.hpp"
#include "oracles.hpp"
#include "rng.hpp"
#include "spectra.hpp"
#include "stats.hpp"
#include "steadystate.hpp"
#include "harness/analysis.hpp"
#include "harness/config.hpp"
#include "harness/exponents.hpp"
#include "harness/report.hpp"
#include "harness/sweep.hpp"
