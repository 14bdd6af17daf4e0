/*
 * Copyright 2026 The bathflux Authors
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

#ifndef BATHFLUX_BATHFLUX_HPP
#define BATHFLUX_BATHFLUX_HPP

#include "bathflux/bath.hpp"
#include "bathflux/chain.hpp"
#include "bathflux/config.hpp"
#include "bathflux/current.hpp"
#include "bathflux/error.hpp"
#include "bathflux/format.hpp"
#include "bathflux/io.hpp"
#include "bathflux/quantity.hpp"
#include "bathflux/validate.hpp"

#endif  // BATHFLUX_BATHFLUX_HPP
