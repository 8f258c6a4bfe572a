// Copyright 2026 The normone Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "normone/arcs.hpp"
#include "normone/effect.hpp"
#include "normone/error.hpp"
#include "normone/io.hpp"
#include "normone/linalg.hpp"
#include "normone/measure_models.hpp"
#include "normone/phase.hpp"
#include "normone/phase_space.hpp"
#include "normone/povm.hpp"
#include "normone/prolate.hpp"
#include "normone/quadrature.hpp"
#include "normone/random.hpp"
#include "normone/regions.hpp"
#include "normone/special.hpp"
#include "normone/tcs.hpp"
