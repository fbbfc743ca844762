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


#include "haarcg/json_util.hpp"

#include "haarcg/errors.hpp"

namespace haarcg {

Eigen::MatrixXcd matrix_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.empty()) throw Error(ErrorKind::kFormatError, "matrix must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw Error(ErrorKind::kFormatError, "ragged matrix");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto &e = row[static_cast<std::size_t>(c)];
            if (e.is_number()) {
                m(r, c) = e.get<double>();
            } else if (e.is_array() && e.size() == 2) {
                m(r, c) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
            } else {
                throw Error(ErrorKind::kFormatError, "matrix entries must be numbers or [re, im]");
            }
        }
    }
    return m;
}

nlohmann::json complex_to_json(std::complex<double> c) { return nlohmann::json::array({c.real(), c.imag()}); }

nlohmann::json matrix_to_json(const Eigen::MatrixXcd &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace haarcg
