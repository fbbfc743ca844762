// Copyright 2026 The haarcg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <string>
#include <vector>

#include "haarcg/cg_table.hpp"

namespace haarcg {

/// Query to R(g): forward R, conjugate R-bar, transpose R^T, inverse R^dagger.
enum class QueryType { kForward, kConjugate, kTranspose, kInverse };

char query_char(QueryType q);
/// Throws kUnsupportedQueryType.
QueryType parse_query(char c);
/// "FFI" -> {F, F, I}.
std::vector<QueryType> parse_script(const std::string &text);
std::string script_string(const std::vector<QueryType> &script);

/// R for F and T, R-bar for C and I.
inline Factor query_factor(QueryType q) {
    return q == QueryType::kForward || q == QueryType::kTranspose ? Factor::kDefining : Factor::kDual;
}

/// T and I read the factor matrix with row and column exchanged.
inline bool query_transposed(QueryType q) { return q == QueryType::kTranspose || q == QueryType::kInverse; }

}  // namespace haarcg
