/*
 * Copyright 2026 The codedcache Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "codedcache/demand.hpp"
#include "codedcache/experiment.hpp"
#include "codedcache/placement.hpp"

namespace codedcache {

// Three users, files A, B, C (1, 2, 3), M = 1, B = 3 packets per file.
SystemParams example1_params();
CachingDistribution example1_distribution();  // p = (2/3, 1/3, 0)
CacheConfiguration example1_cache();
DemandVector example1_demand();               // user u requests file u

// Colors the fixture, encodes, decodes at every user and reports one record.
TrialRecord run_example1(DeliveryKind delivery = DeliveryKind::kGcc, bool timing = false);

}  // namespace codedcache
