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


#include "haarcg/query.hpp"

#include "haarcg/errors.hpp"

namespace haarcg {

char query_char(QueryType q) {
    switch (q) {
        case QueryType::kForward:
            return 'F';
        case QueryType::kConjugate:
            return 'C';
        case QueryType::kTranspose:
            return 'T';
        case QueryType::kInverse:
            return 'I';
    }
    return '?';
}

QueryType parse_query(char c) {
    switch (c) {
        case 'F':
            return QueryType::kForward;
        case 'C':
            return QueryType::kConjugate;
        case 'T':
            return QueryType::kTranspose;
        case 'I':
            return QueryType::kInverse;
        default:
            throw Error(ErrorKind::kUnsupportedQueryType, std::string("unknown query type '") + c + "'");
    }
}

std::vector<QueryType> parse_script(const std::string &text) {
    std::vector<QueryType> out;
    for (char c : text) out.push_back(parse_query(c));
    return out;
}

std::string script_string(const std::vector<QueryType> &script) {
    std::string out;
    for (QueryType q : script) out.push_back(query_char(q));
    return out;
}

}  // namespace haarcg
