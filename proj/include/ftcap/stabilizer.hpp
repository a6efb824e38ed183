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

// Stabilizer codes, Clifford circuits and Pauli-frame propagation under the
// i.i.d. Pauli location model.
//
// Location convention: every preparation, identity, Pauli and H gate has one
// fault site after it; a measurement or discard has one site before it; a
// CNOT has two sites after it (control, then target), each an independent
// single-qubit Pauli channel. A fault site is what FaultPattern indexes.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ftcap/pauli.hpp"

namespace ftcap {

struct StabilizerCode {
    int k = 0;                            ///< physical qubits
    std::vector<PauliString> generators;  ///< k - 1 independent commuting generators
    PauliString logical_x;
    PauliString logical_z;

    /// Throws ValidationError unless the invariants hold.
    void validate() const;
};

/// [[7,1,3]] code; X- and Z-type generators from the Hamming rows
/// 0001111, 0110011, 1010101 (generators 0-2 X-type, 3-5 Z-type).
const StabilizerCode& steane_code();

/// Bit i set iff E anticommutes with generator i.
std::uint32_t syndrome(const StabilizerCode& code, const PauliString& e);
std::vector<int> syndrome_bits(const StabilizerCode& code, const PauliString& e);

struct DecodeResult {
    char logical = 'I';
    std::uint32_t syndrome = 0;
};

DecodeResult ideal_decode(const StabilizerCode& code, const PauliString& e);

/// Minimum-weight representative of each syndrome class; ties go to the
/// lexicographically smallest per-qubit label string with I < X < Y < Z.
class SyndromeTable {
public:
    explicit SyndromeTable(const StabilizerCode& code);
    const PauliString& correction(std::uint32_t s) const { return table_.at(s); }
    std::size_t size() const { return table_.size(); }

private:
    std::vector<PauliString> table_;
};

const SyndromeTable& steane_table();

/// Smallest weight of E times any stabilizer element (phase ignored).
int stabilizer_reduced_weight(const StabilizerCode& code, const PauliString& e);

enum class Op { id, x, y, z, h, cnot, prep, measure, discard };

struct Gate {
    Op op = Op::id;
    int q0 = 0;
    int q1 = -1;
};

int fault_sites(Op op);
bool faults_before(Op op);
std::string to_string(Op op);

class CliffordCircuit {
public:
    CliffordCircuit() = default;
    explicit CliffordCircuit(int qubits) : qubits_(qubits) {}

    CliffordCircuit& add(Op op, int q0, int q1 = -1);
    CliffordCircuit& append(const CliffordCircuit& other);

    int qubits() const { return qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::int64_t location_count() const { return sites_; }
    /// Bitmask of every qubit touched (registers up to 64 qubits).
    std::uint64_t support() const { return support_; }

private:
    int qubits_ = 0;
    std::vector<Gate> gates_;
    std::int64_t sites_ = 0;
    std::uint64_t support_ = 0;
};

struct FaultPattern {
    std::map<std::int64_t, char> faults;  ///< site -> 'X', 'Y' or 'Z'
    std::int64_t total_locations = 0;
};

struct SiteFault {
    std::int64_t site = 0;
    char label = 'X';
};

/// Supplies faults for consecutive executions of circuit segments.
class FaultSource {
public:
    virtual ~FaultSource() = default;
    /// Appends faults for the next `sites` fault sites, offsets relative to
    /// the start of this block, in increasing order.
    virtual void draw(std::int64_t sites, std::vector<SiteFault>& out) = 0;
};

/// i.i.d. faults with probability p per site, sampled by geometric skipping
/// over an unbounded stream of sites.
class FaultStream final : public FaultSource {
public:
    FaultStream(double p, std::uint64_t seed);
    void draw(std::int64_t sites, std::vector<SiteFault>& out) override;

private:
    std::int64_t gap();
    char label();

    double p_;
    double log_q_;
    std::mt19937_64 rng_;
    std::int64_t countdown_;
};

/// No faults at all.
class NoFaults final : public FaultSource {
public:
    void draw(std::int64_t, std::vector<SiteFault>&) override {}
};

/// Exactly one fault at the given position of the site stream.
class SingleFault final : public FaultSource {
public:
    SingleFault(std::int64_t site, char label) : site_(site), label_(label) {}
    void draw(std::int64_t sites, std::vector<SiteFault>& out) override;

private:
    std::int64_t site_;
    char label_;
    std::int64_t consumed_ = 0;
};

/// Faults taken from a pattern, indexed by position in the site stream.
class PatternFaults final : public FaultSource {
public:
    explicit PatternFaults(const FaultPattern& pattern) : pattern_(pattern) {}
    void draw(std::int64_t sites, std::vector<SiteFault>& out) override;

private:
    const FaultPattern& pattern_;
    std::int64_t consumed_ = 0;
};

FaultPattern sample_fault_pattern(const CliffordCircuit& circuit, double p, std::uint64_t seed);

/// Pauli frame on up to 64 qubits: the error relative to the fault-free run.
struct Frame {
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    void apply(int q, char label);
    char label(int q) const;
    PauliString restrict(int first, int count) const;
};

/// Propagates the frame through the circuit with the given faults (site
/// offsets relative to the circuit start, sorted). Returns the measurement
/// flips as a bitmask indexed by qubit.
std::uint64_t propagate(const CliffordCircuit& circuit, Frame& frame, const std::vector<SiteFault>& faults);

/// Draws faults for the circuit from `source` and propagates. Skips the gate
/// loop when nothing can change.
std::uint64_t run_segment(const CliffordCircuit& circuit, Frame& frame, FaultSource& source,
                          std::vector<SiteFault>& scratch);

}  // namespace ftcap
