// Copyright 2026 The raylift Authors
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

#include "raylift/experiment.hpp"
#include "raylift/hilbert.hpp"
#include "raylift/io.hpp"
#include "raylift/matrix.hpp"
#include "raylift/oracle.hpp"
#include "raylift/prng.hpp"
#include "raylift/ray.hpp"
#include "raylift/reconstruct.hpp"
#include "raylift/verify.hpp"
