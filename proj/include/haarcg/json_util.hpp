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

#include <complex>

#include <Eigen/Dense>
#include "json.hpp"

namespace haarcg {

/// Rows of numbers or [re, im] pairs.  Throws kFormatError.
Eigen::MatrixXcd matrix_from_json(const nlohmann::json &j);
nlohmann::json matrix_to_json(const Eigen::MatrixXcd &m);
nlohmann::json complex_to_json(std::complex<double> c);

}  // namespace haarcg
