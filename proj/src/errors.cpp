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

#include "haarcg/errors.hpp"

namespace haarcg {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kShapeError: return "ShapeError";
        case ErrorKind::kCapExceeded: return "CapExceeded";
        case ErrorKind::kInvalidBox: return "InvalidBox";
        case ErrorKind::kInvalidPattern: return "InvalidPattern";
        case ErrorKind::kAlphabetOutOfRange: return "AlphabetOutOfRange";
        case ErrorKind::kInconsistentInputs: return "InconsistentInputs";
        case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::kIrreversibleState: return "IrreversibleState";
        case ErrorKind::kMultiplicityAnomaly: return "MultiplicityAnomaly";
        case ErrorKind::kUnsupportedFactor: return "UnsupportedFactor";
        case ErrorKind::kBlockMissing: return "BlockMissing";
        case ErrorKind::kUnknownGroup: return "UnknownGroup";
        case ErrorKind::kInvalidGroup: return "InvalidGroup";
        case ErrorKind::kUnsupportedQueryType: return "UnsupportedQueryType";
        case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
        case ErrorKind::kSingularGram: return "SingularGram";
        case ErrorKind::kUnsupportedN: return "UnsupportedN";
        case ErrorKind::kOutOfRange: return "OutOfRange";
        case ErrorKind::kOverflow: return "Overflow";
        case ErrorKind::kFormatError: return "FormatError";
    }
    return "Unknown";
}

}  // namespace haarcg
