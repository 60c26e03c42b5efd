// Copyright 2026 The Modex Authors
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

#ifndef MODEX_TEXTIO_H
#define MODEX_TEXTIO_H

#include <iosfwd>
#include <string>
#include <vector>

#include "modex/Core.h"

namespace modex {

/// Splits a line into whitespace-separated fields, dropping '#' comments.
std::vector<std::string> splitFields(const std::string& line);

/// Reads a file fully; throws ModexError when it cannot be opened.
std::string readFile(const std::string& path);

/// Parses `R(a,b)`, `-R(a,b)`, `P` or `-P` against a domain. The symbol's
/// arity is taken from the argument count.
GroundLiteral parseGroundLiteral(const std::string& token, const Domain& domain);

/// Instance files:
///   domain e1 e2 ... en
///   sym R 2            (declares a symbol; empty unless tuples follow)
///   rel R a b          (one tuple; `rel P` makes the proposition P true)
Structure loadInstance(const std::string& path);
Structure parseInstance(std::istream& in, const std::string& what);

/// `rel R a b` lines for every tuple of every symbol, in deterministic order.
void writeFacts(std::ostream& os, const Structure& s);

}  // namespace modex

#endif  // MODEX_TEXTIO_H
