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

#pragma once

#include <span>
#include <string>

namespace stk {

enum class Severity { warning, error };

// A validator finding. Errors make an input unusable; warnings flag suspect
// but representable data and are passed through.
struct Diagnostic {
  Severity severity = Severity::error;
  std::string clue_name;  // empty when not tied to one clue
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

inline std::string to_string(const Diagnostic& d) {
  std::string out = d.severity == Severity::error ? "error: " : "warning: ";
  if (!d.clue_name.empty()) out += "clue '" + d.clue_name + "': ";
  out += d.message;
  return out;
}

inline bool has_errors(std::span<const Diagnostic> diags) {
  for (const Diagnostic& d : diags)
    if (d.severity == Severity::error) return true;
  return false;
}

}  // namespace stk
