// Copyright 2026 The projlogic Authors
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

/**
 * @file
 * JSON ingestion of operators and event families.
 *
 * Matrix document:
 *
 *   {"dim": 2, "re": [[1, 0], [0, 0]], "im": [[0, 0], [0, 0]]}
 *
 * Family document; each entry names a matrix file (relative to the family
 * file) or embeds the matrix inline:
 *
 *   {"entries": [{"name": "e1", "role": "projector", "file": "e1.json"},
 *                {"name": "half", "role": "effect", "matrix": {...}}]}
 */

#pragma once

#include "projlogic/star_quantum_logic.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace projlogic {

using Json = nlohmann::json;

class IngestionError : public Error {
  public:
    using Error::Error;
};

inline Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IngestionError("cannot open '" + path.string() + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw IngestionError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

/// Parses a matrix document and hermitizes it through make_hermitian.
inline HermitianOperator matrix_from_json(const Json& doc, const Tolerances& tol = tolerances()) {
    try {
        const Index n = doc.at("dim").get<Index>();
        if (n < 1) {
            throw IngestionError("matrix dim must be positive");
        }
        const auto& re = doc.at("re");
        const Json im = doc.contains("im") ? doc.at("im") : Json();
        Matrix m(n, n);
        if (re.size() != static_cast<std::size_t>(n) || (!im.is_null() && im.size() != static_cast<std::size_t>(n))) {
            throw IngestionError("matrix row count does not match dim");
        }
        for (Index i = 0; i < n; ++i) {
            const auto& row = re.at(static_cast<std::size_t>(i));
            if (row.size() != static_cast<std::size_t>(n)) {
                throw IngestionError("matrix column count does not match dim");
            }
            for (Index j = 0; j < n; ++j) {
                const auto ui = static_cast<std::size_t>(i);
                const auto uj = static_cast<std::size_t>(j);
                const double imag = im.is_null() ? 0.0 : im.at(ui).at(uj).get<double>();
                m(i, j) = Complex(row.at(uj).get<double>(), imag);
            }
        }
        return make_hermitian(m, tol).op;
    } catch (const Json::exception& e) {
        throw IngestionError(std::string("bad matrix document: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw IngestionError(std::string("bad matrix document: ") + e.what());
    }
}

inline Json matrix_to_json(const Matrix& m) {
    Json re = Json::array();
    Json im = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json rr = Json::array();
        Json ii = Json::array();
        for (Index j = 0; j < m.cols(); ++j) {
            rr.push_back(m(i, j).real());
            ii.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline HermitianOperator load_matrix(const std::filesystem::path& path, const Tolerances& tol = tolerances()) {
    try {
        return matrix_from_json(read_json_file(path), tol);
    } catch (const IngestionError& e) {
        throw IngestionError(path.string() + ": " + e.what());
    }
}

/// Family entries become fuzzy events; projector roles are validated as projectors.
inline std::vector<FuzzyEventQL> family_from_json(const Json& doc, const std::filesystem::path& base_dir,
                                                  const Tolerances& tol = tolerances()) {
    std::vector<FuzzyEventQL> events;
    try {
        const auto& entries = doc.at("entries");
        if (!entries.is_array() || entries.empty()) {
            throw IngestionError("family needs a non-empty 'entries' array");
        }
        for (std::size_t k = 0; k < entries.size(); ++k) {
            const auto& e = entries[k];
            const std::string name = e.value("name", "f" + std::to_string(k));
            const std::string role = e.value("role", "projector");
            HermitianOperator op = e.contains("file") ? load_matrix(base_dir / e.at("file").get<std::string>(), tol)
                                                      : matrix_from_json(e.at("matrix"), tol);
            if (!events.empty() && events.front().dim() != op.dim()) {
                throw IngestionError("family entries have different dimensions");
            }
            if (role == "projector") {
                events.push_back(FuzzyEventQL::from_projector(Projector::from_matrix(op.matrix(), tol), name));
            } else if (role == "effect") {
                events.push_back(FuzzyEventQL::from_operator(op, name, tol));
            } else {
                throw IngestionError("unknown role '" + role + "' (expected projector or effect)");
            }
        }
    } catch (const Json::exception& e) {
        throw IngestionError(std::string("bad family document: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw IngestionError(std::string("bad family document: ") + e.what());
    }
    return events;
}

inline std::vector<FuzzyEventQL> load_family(const std::filesystem::path& path, const Tolerances& tol = tolerances()) {
    try {
        return family_from_json(read_json_file(path), path.parent_path(), tol);
    } catch (const IngestionError& e) {
        throw IngestionError(path.string() + ": " + e.what());
    }
}

}  // namespace projlogic
