// Copyright 2026 The rfflab Authors
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

#pragma once

#include "rfflab/analysis.hpp"
#include "rfflab/bounds.hpp"
#include "rfflab/csv.hpp"
#include "rfflab/downstream.hpp"
#include "rfflab/empirical.hpp"
#include "rfflab/errors.hpp"
#include "rfflab/experiments.hpp"
#include "rfflab/features.hpp"
#include "rfflab/kernels.hpp"
#include "rfflab/parallel.hpp"
#include "rfflab/quadrature.hpp"
#include "rfflab/rng.hpp"

namespace rfflab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rfflab
