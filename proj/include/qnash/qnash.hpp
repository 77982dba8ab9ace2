// Copyright 2026 The qnash Authors
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

#pragma once

// Query-efficient exact equilibria of zero-sum matrix games.

#include "qnash/errors.hpp"
#include "qnash/scalar.hpp"
#include "qnash/matrix.hpp"
#include "qnash/oracle.hpp"
#include "qnash/strategy.hpp"
#include "qnash/linalg.hpp"
#include "qnash/simplex.hpp"
#include "qnash/subset_codec.hpp"
#include "qnash/minimax.hpp"
#include "qnash/psne_random.hpp"
#include "qnash/swordfish.hpp"
#include "qnash/lifted.hpp"
#include "qnash/instances.hpp"
#include "qnash/bench.hpp"
