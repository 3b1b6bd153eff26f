// SPDX-License-Identifier: Apache-2.0
//
// thzris: simulation and optimization toolkit for RIS-assisted THz MIMO links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#pragma once

#include "thzris/ao_optimizer.hpp"
#include "thzris/beamforming.hpp"
#include "thzris/channel.hpp"
#include "thzris/complexity.hpp"
#include "thzris/config.hpp"
#include "thzris/error.hpp"
#include "thzris/gd_optimizer.hpp"
#include "thzris/harness.hpp"
#include "thzris/numerics.hpp"
#include "thzris/ris.hpp"
#include "thzris/rng.hpp"
