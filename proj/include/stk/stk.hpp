/*  Copyright 2026 The stk authors.

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License. */

// Umbrella header for the whole toolkit.

#pragma once

#include "stk/annotate.hpp"
#include "stk/catalog.hpp"
#include "stk/chunker.hpp"
#include "stk/diagnostics.hpp"
#include "stk/errors.hpp"
#include "stk/matcher.hpp"
#include "stk/relevance.hpp"
#include "stk/tagger.hpp"
#include "stk/text.hpp"
