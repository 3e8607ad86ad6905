// Copyright 2026 The tfgbs Authors
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
#ifndef TFGBS_TFGBS_HPP_
#define TFGBS_TFGBS_HPP_

#include "tfgbs/compiler.hpp"
#include "tfgbs/errors.hpp"
#include "tfgbs/experiment.hpp"
#include "tfgbs/gaussian_state.hpp"
#include "tfgbs/graphs.hpp"
#include "tfgbs/io.hpp"
#include "tfgbs/matrix_kernels.hpp"
#include "tfgbs/simulator.hpp"
#include "tfgbs/validation.hpp"
#include "tfgbs/version.hpp"

#endif  // TFGBS_TFGBS_HPP_
