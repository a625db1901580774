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

#include "cropkit/signature.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cropkit {

const GenDecl* Signature::find(const std::string& genName) const {
  for (const auto& g : generators)
    if (g.name == genName) return &g;
  return nullptr;
}

const GenDecl& Signature::require(const std::string& genName) const {
  const GenDecl* d = find(genName);
  if (!d) fail(Err::UnknownGenerator, "unknown generator '" + genName + "' in signature " + name);
  return *d;
}

std::optional<std::string> Signature::builtinKey(const std::string& genName,
                                                 const std::string& backendName) const {
  auto it = backendKeys.find(genName);
  if (it == backendKeys.end()) return std::nullopt;
  auto jt = it->second.find(backendName);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

void Signature::validate() const {
  std::set<std::string> names;
  for (const auto& g : generators) {
    if (!names.insert(g.name).second)
      fail(Err::InvalidArgument, "signature " + name + ": duplicate generator " + g.name);
    if (g.wires < 0 || g.realParams < 0)
      fail(Err::InvalidArgument, "signature " + name + ": bad generator declaration " + g.name);
  }
  const GenDecl* inv = find(involution);
  if (!inv || inv->wires != 1 || inv->realParams != 0)
    fail(Err::InvalidArgument,
         "signature " + name + ": involution must name a declared 1-wire, 0-parameter generator");
}

const Signature& Signature::x() {
  static const Signature sig = [] {
    Signature s;
    s.name = "x";
    s.generators = {{"x", 1, 0}};
    s.involution = "x";
    s.relations = {"xx"};
    s.backendKeys = {{"x",
                      {{"perm", "x"}, {"gf2", "x"}, {"cyclo", "x"}, {"complex", "x"}}}};
    s.validate();
    return s;
  }();
  return sig;
}

Signature Signature::fromJsonText(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(Err::SyntaxError, std::string("signature: bad JSON: ") + e.what());
  }
  Signature s;
  try {
    s.name = j.at("name").get<std::string>();
    for (const auto& g : j.at("generators")) {
      GenDecl d;
      d.name = g.at("name").get<std::string>();
      d.wires = g.at("wires").get<int>();
      d.realParams = g.value("realParams", 0);
      s.generators.push_back(d);
    }
    s.involution = j.at("involution").get<std::string>();
    s.rulesFile = j.value("rulesFile", "");
    for (const auto& r : j.value("relations", nlohmann::json::array()))
      s.relations.push_back(r.get<std::string>());
    if (j.contains("backendKeys")) {
      for (auto it = j["backendKeys"].begin(); it != j["backendKeys"].end(); ++it) {
        std::map<std::string, std::string> keys;
        for (auto bt = it.value().begin(); bt != it.value().end(); ++bt)
          keys[bt.key()] = bt.value().get<std::string>();
        s.backendKeys[it.key()] = keys;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Err::SyntaxError, std::string("signature: missing or ill-typed field: ") + e.what());
  }
  s.validate();
  return s;
}

Signature Signature::fromJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::IoError, "cannot open signature file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return fromJsonText(buf.str());
}

}  // namespace cropkit
