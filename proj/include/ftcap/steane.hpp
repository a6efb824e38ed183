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

// Steane-style error correction on the [[7,1,3]] code and the level-1
// encoding/decoding interfaces, simulated with Pauli frames.
//
// Register layout: data block 0-6, ancilla block 7-13, verifier block 14-20.
// Each ancilla (|0> for the Z-error syndrome, |+> for the X-error syndrome) is
// checked against a second copy and re-prepared until the check passes.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftcap/stabilizer.hpp"

namespace ftcap {

inline constexpr int kSteaneRegister = 21;

enum class InterfaceDirection { encode, decode };

std::string to_string(InterfaceDirection d);
InterfaceDirection parse_direction(const std::string& name);

/// Fault-free |0> encoder on qubits first..first+6 (preparations included).
CliffordCircuit steane_zero_encoder(int register_size, int first);

struct EcOutcome {
    std::uint32_t syndrome = 0;  ///< measured syndrome used for the correction
    int attempts = 0;            ///< ancilla preparations (both kinds)
    bool gave_up = false;        ///< an ancilla was used unverified after kMaxAttempts
};

class SteaneEc {
public:
    static constexpr int kMaxAttempts = 64;

    SteaneEc();

    /// Single-attempt circuit diagram in execution order.
    CliffordCircuit circuit() const;
    std::int64_t location_count() const;

    /// One round on the data block; faults come from `source` in diagram order.
    EcOutcome run(Frame& frame, FaultSource& source) const;

private:
    CliffordCircuit zero_prep_;   // |0> ancilla + verifier, transversal CNOT, verifier readout
    CliffordCircuit z_extract_;   // ancilla -> data CNOTs, X-basis ancilla readout
    CliffordCircuit plus_prep_;
    CliffordCircuit x_extract_;   // data -> ancilla CNOTs, Z-basis ancilla readout
    mutable std::vector<SiteFault> scratch_;
};

/// Throws ArgumentError unless `code` is the Steane code.
CliffordCircuit ec_gadget(const StabilizerCode& code);

/// Encode: input on qubit 2, fan-out and encoder, then one EC round.
/// Decode: one EC round, inverse encoder, discard of every qubit but 2.
CliffordCircuit interface_circuit(InterfaceDirection direction);

class SteaneInterface {
public:
    explicit SteaneInterface(InterfaceDirection direction);

    CliffordCircuit circuit() const;
    std::int64_t location_count() const;

    /// Encode: frame of the input qubit in, frame of the data block out.
    /// Decode: frame of the data block in, frame of qubit 2 out (others discarded).
    EcOutcome run(Frame& frame, FaultSource& source) const;

    /// True if the interface fails for the faults drawn from `source`,
    /// starting from an ideal input.
    bool fails(FaultSource& source) const;

private:
    InterfaceDirection direction_;
    CliffordCircuit unitary_;  // encoder (with input fan-out) or its inverse (with discards)
    SteaneEc ec_;
    mutable std::vector<SiteFault> scratch_;
};

struct InterfaceCounts {
    std::int64_t encode = 0;
    std::int64_t decode = 0;
    std::int64_t max() const { return encode > decode ? encode : decode; }
    double c(double p0) const { return p0 * static_cast<double>(max()); }
};

InterfaceCounts interface_location_counts();

struct McEstimate {
    double rate = 0.0;
    double stderr_ = 0.0;
    std::int64_t failures = 0;
    std::int64_t trials = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
};

/// Logical failure rate of one EC round on an ideal encoded |0>.
McEstimate mc_logical_error_rate(int level, double p, std::int64_t trials, std::uint64_t seed, int threads = 1);

/// Failure rate of an interface. Requires p <= p0 / 2.
McEstimate mc_interface_failure(InterfaceDirection direction, double p, std::int64_t trials, std::uint64_t seed,
                                double p0 = 1.0, int threads = 1);

struct SingleFaultReport {
    std::int64_t sites = 0;
    std::int64_t cases = 0;       ///< sites x 3 Pauli labels
    std::int64_t exceptions = 0;  ///< residual of reduced weight > 1
    int max_weight = 0;
    std::vector<std::string> examples;  ///< first few exceptions, "site:label -> residual"
};

/// Every single X/Y/Z fault at every site of one EC round on a clean block.
SingleFaultReport single_fault_enumeration();

/// Least-squares slope of log(rate) against log(p); rates must be positive.
double loglog_slope(const std::vector<double>& p, const std::vector<double>& rate);

}  // namespace ftcap
