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

#include "ftcap/steane.hpp"

#include <bit>
#include <cmath>
#include <numeric>

#include "ftcap/errors.hpp"
#include "ftcap/parallel.hpp"

namespace ftcap {
namespace {

constexpr int kData = 0;
constexpr int kAncilla = 7;
constexpr int kVerifier = 14;
constexpr std::uint64_t kBlock = 0x7f;

// Hamming rows as qubit masks, and the encoder fan-out that realises them:
// pivot qubit -> remaining qubits of its row.
constexpr std::uint64_t kRows[] = {0b1111000, 0b1100110, 0b1010101};
constexpr int kPivots[] = {3, 1, 0};

std::uint32_t hamming_syndrome(std::uint64_t v) {
    std::uint32_t s = 0;
    for (int r = 0; r < 3; ++r) s |= static_cast<std::uint32_t>(std::popcount(v & kRows[r]) & 1) << r;
    return s;
}

// Noiseless Z-basis readouts of |0> (and X-basis readouts of |+>) are the
// even-weight Hamming codewords; anything else flags an error.
bool in_even_subcode(std::uint64_t v) { return hamming_syndrome(v) == 0 && std::popcount(v) % 2 == 0; }

void add_fanout(CliffordCircuit& c, int first) {
    for (int r = 0; r < 3; ++r) {
        const int pivot = kPivots[r];
        for (int q = 0; q < 7; ++q)
            if (q != pivot && ((kRows[r] >> q) & 1)) c.add(Op::cnot, first + pivot, first + q);
    }
}

void add_inverse_fanout(CliffordCircuit& c, int first) {
    for (int r = 2; r >= 0; --r) {
        const int pivot = kPivots[r];
        for (int q = 6; q >= 0; --q)
            if (q != pivot && ((kRows[r] >> q) & 1)) c.add(Op::cnot, first + pivot, first + q);
    }
}

void add_transversal(CliffordCircuit& c, Op op, int first) {
    for (int i = 0; i < 7; ++i) c.add(op, first + i);
}

void add_transversal_cnot(CliffordCircuit& c, int control, int target) {
    for (int i = 0; i < 7; ++i) c.add(Op::cnot, control + i, target + i);
}

std::uint64_t block_bits(std::uint64_t flips, int first) { return (flips >> first) & kBlock; }

}  // namespace

std::string to_string(InterfaceDirection d) { return d == InterfaceDirection::encode ? "encode" : "decode"; }

InterfaceDirection parse_direction(const std::string& name) {
    if (name == "encode") return InterfaceDirection::encode;
    if (name == "decode") return InterfaceDirection::decode;
    throw ArgumentError("unknown interface direction: " + name);
}

CliffordCircuit steane_zero_encoder(int register_size, int first) {
    CliffordCircuit c(register_size);
    add_transversal(c, Op::prep, first);
    for (int pivot : kPivots) c.add(Op::h, first + pivot);
    add_fanout(c, first);
    return c;
}

SteaneEc::SteaneEc()
    : zero_prep_(kSteaneRegister), z_extract_(kSteaneRegister), plus_prep_(kSteaneRegister),
      x_extract_(kSteaneRegister) {
    // |0>: an X error on the ancilla would be copied onto the data, so the
    // ancilla's X errors are copied onto a verifier and read out.
    zero_prep_.append(steane_zero_encoder(kSteaneRegister, kAncilla));
    zero_prep_.append(steane_zero_encoder(kSteaneRegister, kVerifier));
    add_transversal_cnot(zero_prep_, kAncilla, kVerifier);
    add_transversal(zero_prep_, Op::measure, kVerifier);

    // Data Z errors flow back into the ancilla; read it in the X basis.
    add_transversal_cnot(z_extract_, kAncilla, kData);
    add_transversal(z_extract_, Op::h, kAncilla);
    add_transversal(z_extract_, Op::measure, kAncilla);

    // |+>: same check with roles of X and Z exchanged.
    plus_prep_.append(steane_zero_encoder(kSteaneRegister, kAncilla));
    add_transversal(plus_prep_, Op::h, kAncilla);
    plus_prep_.append(steane_zero_encoder(kSteaneRegister, kVerifier));
    add_transversal(plus_prep_, Op::h, kVerifier);
    add_transversal_cnot(plus_prep_, kVerifier, kAncilla);
    add_transversal(plus_prep_, Op::h, kVerifier);
    add_transversal(plus_prep_, Op::measure, kVerifier);

    add_transversal_cnot(x_extract_, kData, kAncilla);
    add_transversal(x_extract_, Op::measure, kAncilla);
}

CliffordCircuit SteaneEc::circuit() const {
    CliffordCircuit c(kSteaneRegister);
    c.append(zero_prep_).append(z_extract_).append(plus_prep_).append(x_extract_);
    return c;
}

std::int64_t SteaneEc::location_count() const {
    return zero_prep_.location_count() + z_extract_.location_count() + plus_prep_.location_count() +
           x_extract_.location_count();
}

EcOutcome SteaneEc::run(Frame& frame, FaultSource& source) const {
    EcOutcome out;
    auto prepare = [&](const CliffordCircuit& segment) {
        for (int a = 1;; ++a) {
            ++out.attempts;
            const std::uint64_t flips = run_segment(segment, frame, source, scratch_);
            if (in_even_subcode(block_bits(flips, kVerifier))) return;
            if (a == kMaxAttempts) {
                out.gave_up = true;
                return;
            }
        }
    };
    prepare(zero_prep_);
    const std::uint32_t sz = hamming_syndrome(block_bits(run_segment(z_extract_, frame, source, scratch_), kAncilla));
    prepare(plus_prep_);
    const std::uint32_t sx = hamming_syndrome(block_bits(run_segment(x_extract_, frame, source, scratch_), kAncilla));
    out.syndrome = sz | (sx << 3);
    if (out.syndrome != 0) {
        const PauliString& fix = steane_table().correction(out.syndrome);
        frame.x ^= fix.x() << kData;
        frame.z ^= fix.z() << kData;
    }
    return out;
}

CliffordCircuit ec_gadget(const StabilizerCode& code) {
    const auto& steane = steane_code();
    if (code.k != steane.k || code.generators != steane.generators)
        throw ArgumentError("ec_gadget: only the Steane code is supported");
    return SteaneEc().circuit();
}

SteaneInterface::SteaneInterface(InterfaceDirection direction) : direction_(direction), unitary_(kSteaneRegister) {
    constexpr int input = 2;
    if (direction == InterfaceDirection::encode) {
        // |b> on qubit 2 is spread to X_{2,4,5}, a weight-3 form of logical X,
        // which commutes through the |0> encoder.
        for (int q = 0; q < 7; ++q)
            if (q != input) unitary_.add(Op::prep, kData + q);
        unitary_.add(Op::cnot, kData + input, kData + 4).add(Op::cnot, kData + input, kData + 5);
        for (int pivot : kPivots) unitary_.add(Op::h, kData + pivot);
        add_fanout(unitary_, kData);
    } else {
        add_inverse_fanout(unitary_, kData);
        for (int r = 2; r >= 0; --r) unitary_.add(Op::h, kData + kPivots[r]);
        unitary_.add(Op::cnot, kData + input, kData + 5).add(Op::cnot, kData + input, kData + 4);
        for (int q = 0; q < 7; ++q)
            if (q != input) unitary_.add(Op::discard, kData + q);
    }
}

CliffordCircuit SteaneInterface::circuit() const {
    CliffordCircuit c(kSteaneRegister);
    if (direction_ == InterfaceDirection::encode) c.append(unitary_).append(ec_.circuit());
    else c.append(ec_.circuit()).append(unitary_);
    return c;
}

std::int64_t SteaneInterface::location_count() const { return unitary_.location_count() + ec_.location_count(); }

EcOutcome SteaneInterface::run(Frame& frame, FaultSource& source) const {
    if (direction_ == InterfaceDirection::encode) {
        run_segment(unitary_, frame, source, scratch_);
        return ec_.run(frame, source);
    }
    const EcOutcome out = ec_.run(frame, source);
    run_segment(unitary_, frame, source, scratch_);
    return out;
}

bool SteaneInterface::fails(FaultSource& source) const {
    Frame frame;
    if (direction_ == InterfaceDirection::encode) {
        run(frame, source);
        return ideal_decode(steane_code(), frame.restrict(kData, 7)).logical != 'I';
    }
    // The reference output is the logical content of the block right after
    // the EC round, as seen by the ideal decoder.
    ec_.run(frame, source);
    const char logical = ideal_decode(steane_code(), frame.restrict(kData, 7)).logical;
    run_segment(unitary_, frame, source, scratch_);
    return frame.label(kData + 2) != logical;
}

CliffordCircuit interface_circuit(InterfaceDirection direction) { return SteaneInterface(direction).circuit(); }

InterfaceCounts interface_location_counts() {
    return {SteaneInterface(InterfaceDirection::encode).location_count(),
            SteaneInterface(InterfaceDirection::decode).location_count()};
}

namespace {

McEstimate finish(std::int64_t failures, std::int64_t trials, double p, std::uint64_t seed) {
    McEstimate e;
    e.failures = failures;
    e.trials = trials;
    e.p = p;
    e.seed = seed;
    e.rate = static_cast<double>(failures) / static_cast<double>(trials);
    e.stderr_ = std::sqrt(e.rate * (1.0 - e.rate) / static_cast<double>(trials));
    return e;
}

void check_trials(std::int64_t trials) {
    if (trials < 1000) throw PreconditionError("Monte Carlo: at least 1000 trials required");
}

}  // namespace

McEstimate mc_logical_error_rate(int level, double p, std::int64_t trials, std::uint64_t seed, int threads) {
    if (level != 1) throw ArgumentError("mc_logical_error_rate: only level 1 is simulated");
    if (!(p >= 0.0 && p <= 0.1)) throw PreconditionError("mc_logical_error_rate: p outside [0, 0.1]");
    check_trials(trials);
    const auto counts = run_chunks<std::int64_t>(trials, seed, threads, [p](std::uint64_t s, std::int64_t,
                                                                            std::int64_t n) {
        FaultStream stream(p, s);
        SteaneEc ec;
        std::int64_t failures = 0;
        for (std::int64_t t = 0; t < n; ++t) {
            Frame frame;
            ec.run(frame, stream);
            if (ideal_decode(steane_code(), frame.restrict(kData, 7)).logical != 'I') ++failures;
        }
        return failures;
    });
    return finish(std::accumulate(counts.begin(), counts.end(), std::int64_t{0}), trials, p, seed);
}

McEstimate mc_interface_failure(InterfaceDirection direction, double p, std::int64_t trials, std::uint64_t seed,
                                double p0, int threads) {
    if (!(p >= 0.0 && p <= p0 / 2.0)) throw PreconditionError("mc_interface_failure: p outside [0, p0/2]");
    check_trials(trials);
    const auto counts = run_chunks<std::int64_t>(trials, seed, threads, [p, direction](std::uint64_t s, std::int64_t,
                                                                                       std::int64_t n) {
        FaultStream stream(p, s);
        SteaneInterface iface(direction);
        std::int64_t failures = 0;
        for (std::int64_t t = 0; t < n; ++t)
            if (iface.fails(stream)) ++failures;
        return failures;
    });
    return finish(std::accumulate(counts.begin(), counts.end(), std::int64_t{0}), trials, p, seed);
}

SingleFaultReport single_fault_enumeration() {
    SteaneEc ec;
    SingleFaultReport report;
    report.sites = ec.location_count();
    for (std::int64_t site = 0; site < report.sites; ++site) {
        for (char label : {'X', 'Y', 'Z'}) {
            ++report.cases;
            Frame frame;
            SingleFault source(site, label);
            ec.run(frame, source);
            const PauliString residual = frame.restrict(kData, 7);
            const int w = stabilizer_reduced_weight(steane_code(), residual);
            report.max_weight = std::max(report.max_weight, w);
            if (w > 1) {
                ++report.exceptions;
                if (report.examples.size() < 8)
                    report.examples.push_back(std::to_string(site) + ":" + label + " -> " + residual.to_string());
            }
        }
    }
    return report;
}

double loglog_slope(const std::vector<double>& p, const std::vector<double>& rate) {
    if (p.size() != rate.size() || p.size() < 2) throw ArgumentError("loglog_slope: need >= 2 matching points");
    double mx = 0, my = 0;
    const double n = static_cast<double>(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > 0 && rate[i] > 0)) throw DomainError("loglog_slope: nonpositive value");
        mx += std::log(p[i]) / n;
        my += std::log(rate[i]) / n;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double dx = std::log(p[i]) - mx;
        sxy += dx * (std::log(rate[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}  // namespace ftcap
