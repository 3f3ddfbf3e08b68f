// Copyright 2026 The fortcover Authors
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

#ifndef FORTCOVER_FORTCOVER_HPP
#define FORTCOVER_FORTCOVER_HPP

#include "fortcover/bench.hpp"
#include "fortcover/generators.hpp"
#include "fortcover/graph.hpp"
#include "fortcover/junction.hpp"
#include "fortcover/master.hpp"
#include "fortcover/milp/backend.hpp"
#include "fortcover/milp/branch_and_bound.hpp"
#include "fortcover/milp/linear_model.hpp"
#include "fortcover/oracle.hpp"
#include "fortcover/propagation.hpp"
#include "fortcover/rational.hpp"
#include "fortcover/separation.hpp"

#endif  // FORTCOVER_FORTCOVER_HPP
