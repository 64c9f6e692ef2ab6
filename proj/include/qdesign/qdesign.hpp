// Copyright 2026 The qdesign Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qdesign/big_vector.hpp"
#include "qdesign/circuit.hpp"
#include "qdesign/errors.hpp"
#include "qdesign/experiments.hpp"
#include "qdesign/hamiltonian.hpp"
#include "qdesign/haar.hpp"
#include "qdesign/io.hpp"
#include "qdesign/lanczos.hpp"
#include "qdesign/matrix.hpp"
#include "qdesign/moment_basis.hpp"
#include "qdesign/moment_operator.hpp"
#include "qdesign/numerics.hpp"
#include "qdesign/permutation.hpp"
#include "qdesign/rng.hpp"
#include "qdesign/version.hpp"
