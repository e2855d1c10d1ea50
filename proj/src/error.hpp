// Copyright 2026 The kstree Authors
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

#ifndef KSTREE_ERROR_HPP
#define KSTREE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kstree {

enum class ErrorCode {
  InvalidArgument,   // bad parameter value
  UnsupportedK,      // k outside the supported family
  PipelineOrder,     // operation applied to the wrong stage
  Structure,         // tree/link invariant broken
  CorruptEdge,       // edge endpoints are not ancestor-related
  ConstructionBug,   // internal invariant that must hold by construction
  Parse,             // malformed input text
  Io,                // file could not be read or written
  Budget             // resource cap refused or exhausted
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kstree

#endif  // KSTREE_ERROR_HPP
