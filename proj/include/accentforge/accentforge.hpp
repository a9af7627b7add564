// Copyright 2026 The AccentForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header.

#ifndef ACCENTFORGE_ACCENTFORGE_HPP_
#define ACCENTFORGE_ACCENTFORGE_HPP_

#include "accentforge/error.hpp"
#include "accentforge/groups.hpp"
#include "accentforge/inventory.hpp"
#include "accentforge/lexicon.hpp"
#include "accentforge/mining.hpp"
#include "accentforge/phoneset.hpp"
#include "accentforge/rewrite.hpp"
#include "accentforge/rules.hpp"

#endif  // ACCENTFORGE_ACCENTFORGE_HPP_
