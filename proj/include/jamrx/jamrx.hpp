// SPDX-License-Identifier: Apache-2.0
//
// jamrx - jamming resistant receive combining for the massive MIMO uplink
// Copyright (C) 2026 jamrx contributors
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

#ifndef JAMRX_JAMRX_HPP
#define JAMRX_JAMRX_HPP

#include "closed_form.hpp"
#include "estimation.hpp"
#include "filters.hpp"
#include "model.hpp"
#include "rate.hpp"
#include "rng.hpp"
#include "types.hpp"

#endif // JAMRX_JAMRX_HPP
