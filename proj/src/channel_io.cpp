// Copyright 2026 The ftcap Authors
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

#include "ftcap/channel_io.hpp"

#include <fstream>
#include <string>

#include "ftcap/channels.hpp"
#include "ftcap/errors.hpp"

namespace ftcap {

using nlohmann::json;

QuantumChannel channel_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("channel: top level must be an object");
    for (const char* key : {"dim_in", "dim_out", "kraus"}) {
        if (!j.contains(key)) throw ValidationError(std::string("channel: missing field '") + key + "'");
    }
    if (!j["dim_in"].is_number_integer() || !j["dim_out"].is_number_integer()) {
        throw ValidationError("channel: dim_in and dim_out must be integers");
    }
    const int din = j["dim_in"].get<int>();
    const int dout = j["dim_out"].get<int>();
    if (din < 1 || dout < 1 || din > kMaxDim || dout > kMaxDim) {
        throw ValidationError("channel: dimensions out of range");
    }
    const json& kraus = j["kraus"];
    if (!kraus.is_array() || kraus.empty()) throw ValidationError("channel: 'kraus' must be a nonempty array");
    std::vector<Matrix> ops;
    for (std::size_t k = 0; k < kraus.size(); ++k) {
        const json& rows = kraus[k];
        if (!rows.is_array() || static_cast<int>(rows.size()) != dout) {
            throw ValidationError("channel: Kraus operator " + std::to_string(k) + " must have dim_out rows");
        }
        Matrix op(dout, din);
        for (int r = 0; r < dout; ++r) {
            const json& row = rows[r];
            if (!row.is_array() || static_cast<int>(row.size()) != din) {
                throw ValidationError("channel: Kraus operator " + std::to_string(k) + " row " +
                                      std::to_string(r) + " must have dim_in entries");
            }
            for (int c = 0; c < din; ++c) {
                const json& z = row[c];
                if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                    throw ValidationError("channel: entries must be [re, im] number pairs");
                }
                op(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
            }
        }
        ops.push_back(std::move(op));
    }
    Matrix sum = Matrix::Zero(din, din);
    for (const auto& op : ops) sum += op.adjoint() * op;
    const double err = (sum - Matrix::Identity(din, din)).cwiseAbs().maxCoeff();
    if (err > kLoaderTolerance) {
        throw ValidationError("channel: not trace preserving, max |sum K^dag K - I| = " + std::to_string(err));
    }
    return QuantumChannel(din, dout, std::move(ops), kLoaderTolerance);
}

QuantumChannel load_channel(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open channel file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("channel file " + path.string() + ": " + e.what());
    }
    return channel_from_json(j);
}

json channel_to_json(const QuantumChannel& channel) {
    json kraus = json::array();
    for (const auto& op : channel.kraus()) {
        json rows = json::array();
        for (Eigen::Index r = 0; r < op.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < op.cols(); ++c) row.push_back({op(r, c).real(), op(r, c).imag()});
            rows.push_back(std::move(row));
        }
        kraus.push_back(std::move(rows));
    }
    return {{"dim_in", channel.dim_in()}, {"dim_out", channel.dim_out()}, {"kraus", std::move(kraus)}};
}

QuantumChannel resolve_channel(std::string_view path_or_builtin) {
    const std::filesystem::path path(path_or_builtin);
    std::error_code ec;
    if (std::filesystem::is_regular_file(path, ec)) return load_channel(path);
    try {
        return builtin_channel(path_or_builtin);
    } catch (const ArgumentError& e) {
        throw ValidationError(std::string("no channel file or builtin named '") + std::string(path_or_builtin) +
                              "': " + e.what());
    }
}

}  // namespace ftcap
