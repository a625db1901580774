// Copyright 2026 the cropkit authors
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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cropkit/error.hpp"

namespace cropkit {

struct GenDecl {
  std::string name;
  int wires = 1;
  int realParams = 0;
};

// A base theory: generators, the distinguished involution, the names of its
// relations (resolved in the rewrite registry at load time), and the map from
// generator names to builtin semantic keys per backend.
struct Signature {
  std::string name;
  std::vector<GenDecl> generators;
  std::string involution;  // must name a declared 1-wire, 0-parameter generator
  std::vector<std::string> relations;
  // generator -> backend name ("perm","gf2","cyclo","complex") -> builtin key
  std::map<std::string, std::map<std::string, std::string>> backendKeys;
  // rule file holding this theory's relations; defaults to <name>.rules.json
  std::string rulesFile;

  const GenDecl* find(const std::string& genName) const;
  const GenDecl& require(const std::string& genName) const;
  std::optional<std::string> builtinKey(const std::string& genName,
                                        const std::string& backendName) const;

  // Validates the Signature invariants (involution declared, names distinct).
  void validate() const;

  // The crop generated by the NOT gate alone.
  static const Signature& x();

  static Signature fromJsonText(const std::string& text);
  static Signature fromJsonFile(const std::string& path);
};

}  // namespace cropkit
