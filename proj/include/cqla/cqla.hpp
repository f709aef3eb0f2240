// Copyright 2026 The CQLA Simulator Authors
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


/// @file cqla.hpp
/// @brief Umbrella header.

#pragma once

#include "cqla/circuit.hpp"
#include "cqla/comms.hpp"
#include "cqla/config.hpp"
#include "cqla/default_profile.hpp"
#include "cqla/ecc.hpp"
#include "cqla/errors.hpp"
#include "cqla/layout.hpp"
#include "cqla/memhier.hpp"
#include "cqla/report.hpp"
#include "cqla/scheduler.hpp"
