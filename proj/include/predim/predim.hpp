// Copyright 2026 The Authors.
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

#include "predim/dsl.hpp"
#include "predim/extension.hpp"
#include "predim/field_element.hpp"
#include "predim/field_tower.hpp"
#include "predim/generic_builder.hpp"
#include "predim/predimension.hpp"
#include "predim/report.hpp"
#include "predim/scenarios.hpp"
#include "predim/structure.hpp"
#include "predim/trdeg.hpp"
#include "predim/types.hpp"
