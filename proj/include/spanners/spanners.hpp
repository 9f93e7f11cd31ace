// Copyright 2026 The congest-spanners Authors
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

#ifndef SPANNERS_SPANNERS_HPP_
#define SPANNERS_SPANNERS_HPP_

#include "spanners/build.hpp"
#include "spanners/congest.hpp"
#include "spanners/experiment.hpp"
#include "spanners/generators.hpp"
#include "spanners/graph.hpp"
#include "spanners/io.hpp"
#include "spanners/lowerbound.hpp"
#include "spanners/network.hpp"
#include "spanners/params.hpp"
#include "spanners/phases.hpp"
#include "spanners/programs.hpp"
#include "spanners/verify.hpp"

#endif  // SPANNERS_SPANNERS_HPP_
